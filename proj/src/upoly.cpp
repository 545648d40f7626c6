#include "polymin/upoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace polymin {

Int UPoly::height() const {
    Int h = 0;
    for (const Int& k : c_) {
        Int a = abs_int(k);
        if (a > h) h = a;
    }
    return h;
}

Int UPoly::content() const {
    Int g = 0;
    for (const Int& k : c_) g = gcd(g, k);
    return g;
}

UPoly UPoly::primitive_part() const {
    if (is_zero()) return *this;
    Int g = content();
    if (c_.back() < 0) g = -g;
    std::vector<Int> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] / g;
    return UPoly(std::move(out));
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<Int> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Int(i);
    return UPoly(std::move(out));
}

Rat UPoly::evaluate(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

Int UPoly::evaluate_int(const Int& x) const {
    Int acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int UPoly::sign_at(const Rat& x) const { return sign_of(evaluate(x)); }

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<Int> out(c_.size() + o.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    return UPoly(std::move(out));
}

UPoly UPoly::operator*(const Int& k) const {
    if (k == 0) return UPoly();
    std::vector<Int> out = c_;
    for (Int& v : out) v *= k;
    return UPoly(std::move(out));
}

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<Int> out(std::max(c_.size(), o.c_.size()), Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return UPoly(std::move(out));
}

UPoly UPoly::operator-() const {
    std::vector<Int> out = c_;
    for (Int& v : out) v = -v;
    return UPoly(std::move(out));
}

std::string UPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0) continue;
        if (first) {
            if (c_[k] < 0) os << "-";
            first = false;
        } else {
            os << (c_[k] < 0 ? " - " : " + ");
        }
        os << abs_int(c_[k]).str();
        if (k >= 1) {
            os << "*" << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

// --------------------------------------------------------------------------
// rational-coefficient helpers (internal)

namespace {

using RatVec = std::vector<Rat>;

void rtrim(RatVec& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatVec to_rat(const UPoly& p) {
    RatVec out(p.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.coeffs()[i];
    return out;
}

UPoly to_int_primitive(const RatVec& p) {
    // clear denominators, then take the primitive part
    Int den = 1;
    for (const Rat& c : p) den = lcm(den, denominator(c));
    std::vector<Int> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out[i] = numerator(p[i]) * (den / denominator(p[i]));
    return UPoly(std::move(out)).primitive_part();
}

// remainder of a by b (b nonzero), both over Q
RatVec rat_rem(RatVec a, const RatVec& b) {
    rtrim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        rtrim(a);
    }
    return a;
}

RatVec rat_gcd(RatVec a, RatVec b) {
    rtrim(a);
    rtrim(b);
    while (!b.empty()) {
        RatVec r = rat_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (Rat& c : a) c /= lead;
    }
    return a;
}

RatVec rat_derivative(const RatVec& p) {
    if (p.size() <= 1) return {};
    RatVec out(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * Int(i);
    return out;
}

} // namespace

std::vector<Rat> exact_div(const std::vector<Rat>& num, const std::vector<Rat>& den) {
    RatVec a = num, b = den;
    rtrim(a);
    rtrim(b);
    if (b.empty()) throw std::invalid_argument("exact_div: division by zero");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw std::invalid_argument("exact_div: not divisible");
    RatVec q(a.size() - b.size() + 1, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        rtrim(a);
    }
    if (!a.empty()) throw std::invalid_argument("exact_div: nonzero remainder");
    return q;
}

UPoly squarefree_part(const UPoly& p) {
    if (p.is_zero()) throw zero_polynomial_error("squarefree_part of zero polynomial");
    if (p.degree() == 0) return UPoly::constant(1);
    RatVec a = to_rat(p);
    RatVec g = rat_gcd(a, rat_derivative(a));
    return to_int_primitive(exact_div(a, g));
}

std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
    if (p.is_zero()) throw zero_polynomial_error("squarefree_decomposition of zero polynomial");
    std::vector<UPoly> out;
    if (p.degree() == 0) return out;
    // Yun's algorithm over Q
    RatVec a = to_rat(p);
    RatVec ap = rat_derivative(a);
    RatVec g = rat_gcd(a, ap);
    RatVec w = exact_div(a, g);
    RatVec y = exact_div(ap, g);
    while (true) {
        RatVec wp = rat_derivative(w);
        RatVec z(y.size() > wp.size() ? y.size() : wp.size(), Rat(0));
        for (std::size_t i = 0; i < y.size(); ++i) z[i] += y[i];
        for (std::size_t i = 0; i < wp.size(); ++i) z[i] -= wp[i];
        rtrim(z);
        if (z.empty()) {
            out.push_back(to_int_primitive(w));
            break;
        }
        RatVec q = rat_gcd(w, z);
        out.push_back(to_int_primitive(q));
        w = exact_div(w, q);
        y = exact_div(z, q);
    }
    return out;
}

Rat cauchy_root_bound(const UPoly& p) {
    if (p.is_zero() || p.degree() < 1) return 1;
    Rat lead = abs_int(p.leading());
    Rat mx = 0;
    for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) {
        Rat a = abs_int(p.coeffs()[i]) / lead;
        if (a > mx) mx = a;
    }
    return mx + 1;
}

namespace {

struct SturmChain {
    std::vector<RatVec> seq;

    explicit SturmChain(const UPoly& q) {
        RatVec a = to_rat(q);
        rtrim(a);
        if (a.empty()) return;
        seq.push_back(a);
        RatVec b = rat_derivative(a);
        rtrim(b);
        while (!b.empty()) {
            seq.push_back(b);
            RatVec r = rat_rem(seq[seq.size() - 2], seq.back());
            for (Rat& c : r) c = -c;
            b = std::move(r);
        }
    }

    int variations(const Rat& x) const {
        int v = 0, prev = 0;
        for (const RatVec& p : seq) {
            Rat acc = 0;
            for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
            int s = sign_of(acc);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }
};

} // namespace

int count_roots_in(const UPoly& squarefree, const Rat& a, const Rat& b) {
    SturmChain chain(squarefree);
    return chain.variations(a) - chain.variations(b);
}

std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
    if (p.is_zero()) throw zero_polynomial_error("isolate_real_roots of zero polynomial");
    std::vector<RootInterval> out;
    UPoly q = squarefree_part(p);
    if (q.degree() < 1) return out;

    SturmChain chain(q);
    Rat bound = cauchy_root_bound(q) + 1;
    struct Item {
        Rat a, b;
        int count;
    };
    std::vector<Item> stack;
    int total = chain.variations(-bound) - chain.variations(bound);
    if (total > 0) stack.push_back({-bound, bound, total});

    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (it.count == 1) {
            // single root in (a, b]
            if (q.sign_at(it.b) == 0) {
                out.push_back({it.b, it.b});
                continue;
            }
            // shrink until the left endpoint is not a root and signs differ
            Rat a = it.a, b = it.b;
            while (q.sign_at(a) == 0 || q.sign_at(a) == q.sign_at(b)) {
                Rat m = (a + b) / 2;
                int sm = q.sign_at(m);
                if (sm == 0) {
                    a = b = m;
                    break;
                }
                if (chain.variations(m) - chain.variations(b) == 1) a = m;
                else b = m;
            }
            out.push_back({a, b});
            continue;
        }
        Rat m = (it.a + it.b) / 2;
        int right = chain.variations(m) - chain.variations(it.b);
        int left = it.count - right;
        if (left > 0) stack.push_back({it.a, m, left});
        if (right > 0) stack.push_back({m, it.b, right});
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

RootInterval refine_root(const UPoly& squarefree, RootInterval iv, const Rat& width) {
    if (iv.is_point()) return iv;
    int slo = squarefree.sign_at(iv.lo);
    int shi = squarefree.sign_at(iv.hi);
    if (slo == 0) return {iv.lo, iv.lo};
    if (shi == 0) return {iv.hi, iv.hi};
    while (iv.width() > width) {
        Rat m = (iv.lo + iv.hi) / 2;
        int sm = squarefree.sign_at(m);
        if (sm == 0) return {m, m};
        if (sm == slo) iv.lo = m;
        else iv.hi = m;
    }
    return iv;
}

std::vector<Rat> interpolate(const std::vector<Rat>& nodes, const std::vector<Rat>& values) {
    if (nodes.size() != values.size())
        throw std::invalid_argument("interpolate: size mismatch");
    const std::size_t n = nodes.size();
    if (n == 0) return {};
    // divided differences
    std::vector<Rat> dd = values;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            Rat den = nodes[i] - nodes[i - level];
            if (den == 0) throw std::invalid_argument("interpolate: repeated node");
            dd[i] = (dd[i] - dd[i - 1]) / den;
            if (i == level) break;
        }
    // expand Newton form
    std::vector<Rat> poly{dd[n - 1]};
    for (std::size_t i = n - 1; i-- > 0;) {
        // poly = poly*(x - nodes[i]) + dd[i]
        std::vector<Rat> next(poly.size() + 1, Rat(0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= poly[k] * nodes[i];
        }
        next[0] += dd[i];
        poly = std::move(next);
    }
    rtrim(poly);
    return poly;
}

} // namespace polymin
