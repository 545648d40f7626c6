#include "polymin/bounds.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace polymin {

Int BoundParams::H_tilde() const {
    Int floor = Int(2 * n + 2 * m);
    return H > floor ? H : floor;
}

void BoundParams::validate() const {
    if (n < 2) throw std::invalid_argument("bounds: n >= 2 required");
    if (m < 1) throw std::invalid_argument("bounds: m >= 1 required");
    if (l > m) throw std::invalid_argument("bounds: l <= m required");
    if (s > n) throw std::invalid_argument("bounds: s <= n required");
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("bounds: d must be even and >= 2");
    if (d0 > d) throw std::invalid_argument("bounds: d0 <= d required");
    if (H < 1 || H0 < 1) throw std::invalid_argument("bounds: heights must be >= 1");
    if (H0 > H) throw std::invalid_argument("bounds: H0 <= H required");
}

BoundParams BoundParams::from_system(const SemialgSystem& sys, std::size_t s, bool use_basis) {
    BoundParams p;
    p.n = sys.n();
    p.m = sys.m();
    p.l = sys.l();
    p.s = s;
    p.d = sys.d();
    p.d0 = sys.d0();
    p.H = sys.H();
    p.H0 = sys.H0();
    if (use_basis && sys.bound_basis()) {
        const BoundBasis& b = *sys.bound_basis();
        p.n = b.n;
        p.m = b.m;
        p.d = b.d;
        p.H = b.H;
        if (p.H0 > p.H) p.H = p.H0;
    }
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------

PowerExpr& PowerExpr::mul(const Int& base, const Rat& exp) {
    if (base <= 0) throw std::invalid_argument("PowerExpr: bases must be positive");
    if (base == 1 || exp == 0) return *this;
    for (auto& [b, e] : factors_) {
        if (b == base) {
            e += exp;
            return *this;
        }
    }
    factors_.emplace_back(base, exp);
    return *this;
}

PowerExpr PowerExpr::operator*(const PowerExpr& o) const {
    PowerExpr r = *this;
    for (const auto& [b, e] : o.factors_) r.mul(b, e);
    return r;
}

PowerExpr PowerExpr::pow(const Rat& e) const {
    PowerExpr r;
    for (const auto& [b, ex] : factors_) r.mul(b, ex * e);
    return r;
}

bool PowerExpr::integer_exponents() const {
    for (const auto& [b, e] : factors_)
        if (denominator(e) != 1) return false;
    return true;
}

PowerExpr PowerExpr::canonical() const {
    // coprime-basis refinement of the bases
    std::vector<Int> work;
    for (const auto& [b, e] : factors_)
        if (b > 1 && e != 0) work.push_back(b);
    std::vector<Int> atoms;
    while (!work.empty()) {
        Int b = work.back();
        work.pop_back();
        if (b == 1) continue;
        bool coprime = true;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            Int g = gcd(atoms[k], b);
            if (g == 1) continue;
            Int a = atoms[k];
            atoms.erase(atoms.begin() + static_cast<long>(k));
            work.push_back(g);
            if (a / g != 1) work.push_back(a / g);
            if (b / g != 1) work.push_back(b / g);
            coprime = false;
            break;
        }
        if (coprime) atoms.push_back(b);
    }
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());

    std::map<Int, Rat> exps;
    for (const auto& [b, e] : factors_) {
        if (b == 1 || e == 0) continue;
        Int rest = b;
        for (const Int& a : atoms) {
            unsigned long k = 0;
            while (rest % a == 0) {
                rest /= a;
                ++k;
            }
            if (k) exps[a] += e * Int(k);
        }
        if (rest != 1) throw std::logic_error("PowerExpr::canonical: refinement failed");
    }
    PowerExpr r;
    for (const auto& [a, e] : exps)
        if (e != 0) r.factors_.emplace_back(a, e);
    return r;
}

bool PowerExpr::equals(const PowerExpr& o) const {
    // canonicalize the ratio so both bases enter one coprime refinement
    PowerExpr ratio = *this * o.pow(-1);
    return ratio.canonical().factors_.empty();
}

std::optional<Rat> PowerExpr::materialize(unsigned long max_bits) const {
    if (!integer_exponents()) return std::nullopt;
    // size estimate before multiplying anything
    Rat bits = 0;
    for (const auto& [b, e] : factors_) bits += abs_rat(Rat(numerator(e))) * Int(bit_size(b));
    if (bits > Int(max_bits)) return std::nullopt;
    Rat v = 1;
    for (const auto& [b, e] : factors_) {
        Int ee = numerator(e);
        if (ee >= 0) v *= Rat(int_pow(b, ee.convert_to<unsigned long>()));
        else v /= Rat(int_pow(b, Int(-ee).convert_to<unsigned long>()));
    }
    return v;
}

Enc PowerExpr::log2(unsigned prec_bits) const {
    Enc acc = Enc::exact(0);
    for (const auto& [b, e] : factors_)
        acc = acc + log2_int_enclosure(b, prec_bits + 8).scale(e);
    return acc;
}

std::string PowerExpr::to_string() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, e] : factors_) {
        if (!first) os << " * ";
        first = false;
        os << b.str() << "^";
        if (denominator(e) == 1 && numerator(e) >= 0) os << numerator(e).str();
        else os << "(" << polymin::to_string(e) << ")";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

Int degree_bound(std::size_t n, unsigned d) {
    if (n < 2 || d < 2) throw std::invalid_argument("degree_bound: need n >= 2, d >= 2");
    return int_pow(2, n - 1) * int_pow(d, n);
}

namespace {

Int exponent_E(std::size_t n, unsigned d) {
    return Int(n) * int_pow(2, n) * int_pow(d, n);
}

} // namespace

PowerExpr magnitude_bound(const BoundParams& p) {
    p.validate();
    Int e = exponent_E(p.n, p.d);
    PowerExpr b;
    // (2^{4-n/2} Htilde d^n)^{-E}
    b.mul(2, Rat(Int(p.n) - 8, 2) * e);  // -(4 - n/2) E
    b.mul(p.H_tilde(), Rat(-e));
    b.mul(p.d, Rat(-Int(p.n) * e));
    return b;
}

PowerExpr separation_bound(std::size_t n, unsigned d, const Int& H, std::size_t m1,
                           std::size_t m2) {
    if (n < 2 || d < 2 || d % 2 != 0)
        throw std::invalid_argument("separation_bound: need n >= 2 and even d >= 2");
    Int ht = Int(4 * n + 2 * m1 + 2 * m2);
    if (H > ht) ht = H;
    Int e = Int(n) * int_pow(2, 2 * n) * int_pow(d, 2 * n);
    PowerExpr b;
    b.mul(2, Rat(Int(n) - 4) * e);  // -(4 - n) E
    b.mul(ht, Rat(-e));
    b.mul(d, Rat(-2 * Int(n) * e));
    return b;
}

BezoutNumbers bezout_numbers(std::size_t n, std::size_t s, unsigned d, unsigned d0) {
    if (s > n) throw std::invalid_argument("bezout_numbers: s <= n required");
    BezoutNumbers r;
    r.M1 = binomial(Int(n), Int(s)) * int_pow(d, s) * int_pow(d - 1, n - s);
    // s = 0: no F-block, M2 is vacuous by convention
    r.M2 = s == 0 ? Int(0)
                  : binomial(Int(n), Int(s)) * Int(d0) * int_pow(d, s - 1) *
                        int_pow(d - 1, n - s);
    // s = n: C(n-1, n) = 0, no G-dependence
    r.M3 = s == n ? Int(0)
                  : binomial(Int(n - 1), Int(s)) * Int(d0) * int_pow(d, s) *
                        int_pow(d - 1, n - s - 1);
    return r;
}

SupportSizes support_sizes(std::size_t n, std::size_t s, unsigned d, unsigned d0) {
    SupportSizes r;
    r.N1 = binomial(Int(d0 + n), Int(n));
    r.N2 = binomial(Int(d + n), Int(n));
    r.N3 = binomial(Int(d - 1 + n), Int(n)) * Int(s + 1);
    return r;
}

namespace {

// M_{S,sigma} as factored pieces; the three binomial factors are returned as
// (top, bottom) pairs to keep them symbolic.
struct MFactors {
    PowerExpr powers;
    Int b1_top, b1_bot;
    Int b2_top, b2_bot;  // exponent s
    Int b3_top, b3_bot;  // exponent n
    std::size_t s, n;
};

MFactors coefficient_bound_factors(const BoundParams& p) {
    p.validate();
    auto [M1, M2, M3] = bezout_numbers(p.n, p.s, p.d, p.d0);
    auto [N1, N2, N3] = support_sizes(p.n, p.s, p.d, p.d0);
    Int sM2_nM3 = Int(p.s) * M2 + Int(p.n) * M3;
    MFactors f;
    f.powers.mul(2 * p.H0, Rat(M1));
    f.powers.mul(2 * p.H_tilde(), Rat(sM2_nM3));
    f.powers.mul(p.d, Rat(Int(p.n) * M3));
    f.powers.mul(N1, Rat(M1));
    f.powers.mul(N2, Rat(Int(p.s) * M2));
    f.powers.mul(N3, Rat(Int(p.n) * M3));
    f.b1_top = M1 + N1 - 1;
    f.b1_bot = N1 - 1;
    f.b2_top = M2 + N2 - 1;
    f.b2_bot = N2 - 1;
    f.b3_top = M3 + N3 - 1;
    f.b3_bot = N3 - 1;
    f.s = p.s;
    f.n = p.n;
    return f;
}

} // namespace

Int coefficient_bound_M(const BoundParams& p, unsigned long max_bits) {
    MFactors f = coefficient_bound_factors(p);
    Enc lg = coefficient_bound_log2(p, 32);
    if (lg.hi > Int(max_bits))
        throw std::range_error("coefficient_bound_M: value too large to expand (log2 ~ " +
                               polymin::to_string(lg.hi) + " bits)");
    auto val = f.powers.materialize(max_bits + 64);
    if (!val) throw std::range_error("coefficient_bound_M: power part too large to expand");
    Int r = numerator(*val);
    if (denominator(*val) != 1) throw std::logic_error("coefficient_bound_M: not integral");
    r *= binomial(f.b1_top, f.b1_bot);
    r *= int_pow(binomial(f.b2_top, f.b2_bot), f.s);
    r *= int_pow(binomial(f.b3_top, f.b3_bot), f.n);
    return r;
}

Enc coefficient_bound_log2(const BoundParams& p, unsigned prec_bits) {
    MFactors f = coefficient_bound_factors(p);
    Enc acc = f.powers.log2(prec_bits);
    acc = acc + log2_binomial_enclosure(f.b1_top, f.b1_bot, prec_bits);
    if (f.s > 0 && f.b2_bot >= 0 && f.b2_top >= f.b2_bot)
        acc = acc + log2_binomial_enclosure(f.b2_top, f.b2_bot, prec_bits).scale(Rat(f.s));
    acc = acc + log2_binomial_enclosure(f.b3_top, f.b3_bot, prec_bits).scale(Rat(f.n));
    return acc;
}

bool ceiling_consistency(const BoundParams& p) {
    // log2 M_{S,sigma} <= E (4 - n/2 + log2 Htilde + n log2 d)
    Int e = exponent_E(p.n, p.d);
    for (unsigned prec = 64; prec <= 4096; prec *= 2) {
        Enc lhs = coefficient_bound_log2(p, prec);
        Enc rhs = (Enc::exact(Rat(8 - Int(p.n), 2)) +
                   log2_int_enclosure(p.H_tilde(), prec) +
                   log2_int_enclosure(p.d, prec).scale(Rat(p.n)))
                      .scale(Rat(e));
        if (lhs.hi <= rhs.lo) return true;
        if (lhs.lo > rhs.hi) return false;
    }
    throw std::runtime_error("ceiling_consistency: comparison undecided at max precision");
}

namespace {

// a <= 2^k, certified; a > 0
bool le_power_of_two(const Int& a, const Int& k) {
    if (k >= 0 && Int(bit_size(a)) <= k) return true;  // a < 2^bits <= 2^k
    if (k < 0) return false;
    // a <= 2^k iff a - 1 < 2^k iff bit_size(a-1) <= k
    if (a == 1) return true;
    return Int(bit_size(a - 1)) <= k;
}

bool binom_le_2pow(const Int& m, const Int& nn) {
    // C(m + nn - 1, nn - 1) <= 2^{m + nn}
    if (nn <= 0) return true;
    Int top = m + nn - 1, bot = nn - 1;
    Int small_side = bot <= top - bot ? bot : Int(top - bot);
    if (small_side <= 256 && bit_size(top) <= 48) {
        return le_power_of_two(binomial(top, bot), m + nn);
    }
    for (unsigned prec = 64; prec <= 2048; prec *= 2) {
        Enc lg = log2_binomial_enclosure(top, bot, prec);
        if (lg.hi <= Rat(m + nn)) return true;
        if (lg.lo > Rat(m + nn)) return false;
    }
    throw std::runtime_error("binom_le_2pow: undecided at max precision");
}

} // namespace

std::vector<NamedCheck> proof_inequalities(const BoundParams& p) {
    p.validate();
    auto [M1, M2, M3] = bezout_numbers(p.n, p.s, p.d, p.d0);
    auto [N1, N2, N3] = support_sizes(p.n, p.s, p.d, p.d0);
    Rat dn32 = Rat(3, 2) * int_pow(p.d, p.n);
    Rat dn94 = Rat(9, 4) * int_pow(p.d, p.n);

    std::vector<NamedCheck> out;
    out.push_back({"N1_le_3/2_d^n", Rat(N1) <= dn32});
    out.push_back({"N2_le_3/2_d^n", Rat(N2) <= dn32});
    out.push_back({"N3_le_9/4_d^n", Rat(N3) <= dn94});
    out.push_back({"binom1_le_2^(M1+N1)", binom_le_2pow(M1, N1)});
    out.push_back({"binom2_le_2^(M2+N2)", binom_le_2pow(M2, N2)});
    out.push_back({"binom3_le_2^(M3+N3)", binom_le_2pow(M3, N3)});

    // (-2n^2 + (log2(3)+2) n + 4 log2(3) + 4) 2^{n-2} + 3/2 (n+1) + 9/4 n
    //   <= (4 - n/2) n 2^n
    bool final_holds = false;
    for (unsigned prec = 64; prec <= 2048; prec *= 2) {
        Enc lg3 = log2_enclosure(Rat(3), prec);
        Rat nn = Rat(Int(p.n));
        Enc lhs = (Enc::exact(-2 * nn * nn + 2 * nn + 4) + lg3.scale(nn + 4))
                      .scale(Rat(int_pow(2, p.n - 2))) +
                  Enc::exact(Rat(3, 2) * (nn + 1) + Rat(9, 4) * nn);
        Rat rhs = (Rat(4) - nn / 2) * nn * int_pow(2, p.n);
        if (lhs.hi <= rhs) {
            final_holds = true;
            break;
        }
        if (lhs.lo > rhs) {
            final_holds = false;
            break;
        }
    }
    out.push_back({"final_theorem_inequality", final_holds});
    return out;
}

int compare_abs_to_bound(const Rat& value, const PowerExpr& bound) {
    if (value == 0)
        throw std::invalid_argument("compare_abs_to_bound: value must be nonzero");
    Rat v2 = value * value;
    PowerExpr b2 = bound.squared();
    if (!b2.integer_exponents())
        throw std::logic_error("compare_abs_to_bound: squared bound not integral");
    // exact route when the squared bound is small enough to expand
    if (auto exact = b2.materialize(1u << 20)) {
        if (v2 == *exact) return 0;
        return v2 < *exact ? -1 : 1;
    }
    // structural equality, then certified log separation
    PowerExpr v_expr;
    v_expr.mul(abs_int(numerator(value)), 2);
    v_expr.mul(denominator(value), -2);
    if (v_expr.equals(b2)) return 0;
    for (unsigned prec = 64; prec <= 8192; prec *= 2) {
        Enc lv = v_expr.log2(prec);
        Enc lb = b2.log2(prec);
        if (lv.hi < lb.lo) return -1;
        if (lv.lo > lb.hi) return 1;
    }
    throw std::runtime_error("compare_abs_to_bound: undecided at max precision");
}

BoundReport make_bound_report(const SemialgSystem& sys) {
    BoundReport rep;
    rep.params = BoundParams::from_system(sys, 0);
    rep.deg_bound = degree_bound(rep.params.n, rep.params.d);
    rep.magnitude = magnitude_bound(rep.params);
    rep.magnitude_log2 = rep.magnitude.log2(64);
    std::size_t smax = std::min(rep.params.n, rep.params.m);
    for (std::size_t s = 0; s <= smax; ++s) {
        BoundParams ps = rep.params;
        ps.s = s;
        BoundComponents c;
        c.s = s;
        auto bz = bezout_numbers(ps.n, s, ps.d, ps.d0);
        auto sp = support_sizes(ps.n, s, ps.d, ps.d0);
        c.M1 = bz.M1;
        c.M2 = bz.M2;
        c.M3 = bz.M3;
        c.N1 = sp.N1;
        c.N2 = sp.N2;
        c.N3 = sp.N3;
        c.M_log2 = coefficient_bound_log2(ps, 64);
        try {
            c.M_exact = coefficient_bound_M(ps);
        } catch (const std::range_error&) {
            c.M_exact = std::nullopt;
        }
        rep.per_s.push_back(std::move(c));
    }
    return rep;
}

} // namespace polymin
