#include "polymin/perturb.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace polymin {

SemialgSystem::SemialgSystem(std::size_t n, std::vector<IntPolynomial> equalities,
                             std::vector<IntPolynomial> inequalities, IntPolynomial objective,
                             std::optional<unsigned> d_override)
    : n_(n),
      equalities_(std::move(equalities)),
      inequalities_(std::move(inequalities)),
      objective_(std::move(objective)) {
    if (n_ < 2) throw std::invalid_argument("system: need n >= 2");
    if (equalities_.empty() && inequalities_.empty())
        throw std::invalid_argument("system: need at least one constraint (m >= 1)");
    if (objective_.is_zero() || objective_.total_degree() == 0)
        throw std::invalid_argument("system: objective must be nonconstant");
    unsigned dmax = objective_.total_degree();
    auto check = [&](const IntPolynomial& f) {
        if (f.num_vars() != n_)
            throw std::invalid_argument("system: constraint variable count mismatch");
        if (f.is_zero()) throw std::invalid_argument("system: zero constraint polynomial");
        dmax = std::max(dmax, f.total_degree());
    };
    if (objective_.num_vars() != n_)
        throw std::invalid_argument("system: objective variable count mismatch");
    for (const auto& f : equalities_) check(f);
    for (const auto& f : inequalities_) check(f);

    if (d_override) {
        if (*d_override % 2 != 0) throw std::invalid_argument("system: d must be even");
        if (*d_override < dmax)
            throw std::invalid_argument("system: d override below observed degree");
        d_ = *d_override;
    } else {
        d_ = dmax % 2 == 0 ? dmax : dmax + 1;
    }
    d0_ = objective_.total_degree();
    H0_ = objective_.height();
    H_ = H0_;
    for (const auto& f : equalities_) H_ = std::max(H_, f.height());
    for (const auto& f : inequalities_) H_ = std::max(H_, f.height());
}

const IntPolynomial& SemialgSystem::constraint(std::size_t i) const {
    if (i < 1 || i > m()) throw std::invalid_argument("constraint index out of range");
    if (i <= l()) return equalities_[i - 1];
    return inequalities_[i - 1 - l()];
}

unsigned long bertrand_prime(std::size_t n, std::size_t m) {
    if (n < 2 || m < 1) throw std::invalid_argument("bertrand_prime: need n >= 2, m >= 1");
    unsigned long lo = n + m + 2, hi = 2 * n + 2 * m + 1;
    for (unsigned long p = lo; p <= hi; ++p)
        if (is_prime_u(p)) return p;
    throw std::logic_error("bertrand_prime: no prime in range");  // unreachable
}

PerturbationMatrix build_matrix_A(std::size_t n, std::size_t m) {
    unsigned long p = bertrand_prime(n, m);
    Int fact = factorial(static_cast<unsigned long>(n + m + 1));
    IntMatrix a(m + 1, n + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            Int entry = fact / Int(i + j + 1);  // scaled Hilbert matrix, exact
            Int r = entry % Int(p);
            if (r == 0)
                throw std::logic_error("build_matrix_A: zero residue (unexpected)");
            if (r > Int(2 * (n + m)))
                throw std::logic_error("build_matrix_A: entry above 2(n+m) (unexpected)");
            a.at(i, j) = r;
        }
    }
    return {std::move(a), p};
}

namespace {

void combinations(std::size_t n, std::size_t k,
                  const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

} // namespace

bool all_submatrices_nonsingular(const IntMatrix& m) {
    std::size_t kmax = std::min(m.rows(), m.cols());
    for (std::size_t k = 1; k <= kmax; ++k) {
        bool ok = true;
        combinations(m.rows(), k, [&](const std::vector<std::size_t>& ri) {
            if (!ok) return;
            combinations(m.cols(), k, [&](const std::vector<std::size_t>& ci) {
                if (!ok) return;
                if (bareiss_det(m.submatrix(ri, ci)) == 0) ok = false;
            });
        });
        if (!ok) return false;
    }
    return true;
}

void SubsetSelector::validate(const SemialgSystem& sys) const {
    if (S.size() != sigma.size())
        throw std::invalid_argument("selector: S and sigma sizes differ");
    if (S.size() > sys.n())
        throw std::invalid_argument("selector: #S exceeds n");
    for (std::size_t k = 0; k < S.size(); ++k) {
        if (S[k] < 1 || S[k] > sys.m())
            throw std::invalid_argument("selector: constraint index out of range");
        if (k > 0 && S[k] <= S[k - 1])
            throw std::invalid_argument("selector: S not strictly increasing");
        if (sigma[k] != 1 && sigma[k] != -1)
            throw std::invalid_argument("selector: sigma entries must be +-1");
        if (!sys.is_equality_index(S[k]) && sigma[k] != 1)
            throw std::invalid_argument("selector: inequality indices require sigma = +");
    }
}

std::string SubsetSelector::to_string() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t k = 0; k < S.size(); ++k) {
        if (k) os << ",";
        os << S[k] << (sigma[k] > 0 ? "+" : "-");
    }
    os << "}";
    return os.str();
}

IntPolynomial tilde_constraint(std::size_t i, const PerturbationMatrix& A, std::size_t n,
                               unsigned d) {
    if (d % 2 != 0) throw std::invalid_argument("tilde_constraint: d must be even");
    if (i < 1 || i >= A.entries.rows())
        throw std::invalid_argument("tilde_constraint: row index out of range");
    IntPolynomial p = IntPolynomial::constant(n, A.a(i, 0));
    for (std::size_t j = 1; j <= n; ++j)
        p = p + IntPolynomial::variable(n, j - 1, d) * A.a(i, j);
    return p;
}

IntPolynomial tilde_objective(const PerturbationMatrix& A, std::size_t n, unsigned d) {
    if (d % 2 != 0) throw std::invalid_argument("tilde_objective: d must be even");
    IntPolynomial p = IntPolynomial::constant(n, A.a(0, 0));
    for (std::size_t j = 1; j <= n; ++j)
        p = p + IntPolynomial::variable(n, j - 1, d) * A.a(0, j);
    return p;
}

VarLayout perturbed_layout(std::size_t n) {
    VarLayout lay;
    lay.roles.push_back({VarKind::T, 0});
    for (std::size_t j = 1; j <= n; ++j) lay.roles.push_back({VarKind::X, j});
    return lay;
}

VarLayout homogenized_layout(std::size_t n) {
    VarLayout lay;
    lay.roles.push_back({VarKind::T0, 0});
    lay.roles.push_back({VarKind::T, 0});
    for (std::size_t j = 0; j <= n; ++j) lay.roles.push_back({VarKind::X, j});
    return lay;
}

VarLayout lagrange_layout(std::size_t n, const SubsetSelector& sel) {
    VarLayout lay = homogenized_layout(n);
    lay.roles.push_back({VarKind::LAM, 0});
    for (std::size_t i : sel.S) lay.roles.push_back({VarKind::LAM, i});
    return lay;
}

VarLayout upoly_layout(std::size_t n) {
    VarLayout lay;
    lay.roles.push_back({VarKind::U, 0});
    for (std::size_t j = 0; j <= n; ++j) lay.roles.push_back({VarKind::X, j});
    return lay;
}

PerturbedFamily perturbed_family(const SemialgSystem& sys, const PerturbationMatrix& A) {
    const std::size_t n = sys.n();
    VarLayout lay = perturbed_layout(n);
    // embed an n-variable polynomial into [t, x1..xn]
    auto lift = [&](const IntPolynomial& f) { return f.insert_var(0); };
    IntPolynomial t = IntPolynomial::variable(n + 1, 0);

    PerturbedFamily fam;
    for (std::size_t i = 1; i <= sys.m(); ++i) {
        IntPolynomial fi = lift(sys.constraint(i));
        IntPolynomial ti = lift(tilde_constraint(i, A, n, sys.d()));
        fam.f_plus.push_back({fi + t * ti, lay});
        if (sys.is_equality_index(i)) fam.f_minus.push_back({fi - t * ti, lay});
    }
    IntPolynomial g = lift(sys.objective());
    IntPolynomial tg = lift(tilde_objective(A, n, sys.d()));
    fam.big_g = {g + t * tg, lay};
    return fam;
}

HomogenizedFamily homogenized_family(const SemialgSystem& sys, const PerturbationMatrix& A) {
    const std::size_t n = sys.n();
    const unsigned d = sys.d();
    VarLayout lay = homogenized_layout(n);
    IntPolynomial t0 = IntPolynomial::variable(n + 3, 0);
    IntPolynomial t = IntPolynomial::variable(n + 3, 1);
    // h(f)_d over [x0..xn], then into [t0, t, x0..xn]
    auto lift_homog = [&](const IntPolynomial& f) {
        return f.homogenize(d).insert_var(0).insert_var(0);
    };

    HomogenizedFamily fam;
    for (std::size_t i = 1; i <= sys.m(); ++i) {
        IntPolynomial hf = lift_homog(sys.constraint(i));
        // h(tilde f_i)_d = sum_{j=0}^n a_ij x_j^d
        IntPolynomial ht(n + 3);
        for (std::size_t j = 0; j <= n; ++j) {
            Monomial mo(n + 3);
            mo.exps[2 + j] = d;
            ht.add_term(mo, A.a(i, j));
        }
        fam.f_plus.push_back({t0 * hf + t * ht, lay});
        if (sys.is_equality_index(i)) fam.f_minus.push_back({t0 * hf - t * ht, lay});
    }
    return fam;
}

std::vector<ParamPolynomial> lagrange_family(const SemialgSystem& sys,
                                             const PerturbationMatrix& A,
                                             const SubsetSelector& sel) {
    sel.validate(sys);
    const std::size_t n = sys.n();
    const unsigned d = sys.d();
    const std::size_t s = sel.size();
    VarLayout lay = lagrange_layout(n, sel);
    const std::size_t nv = lay.size();
    const std::size_t x_base = 2;           // slots of x0..xn
    const std::size_t lam_base = n + 3;     // slots of lam0, lam_{S...}

    IntPolynomial t0 = IntPolynomial::variable(nv, 0);
    IntPolynomial t = IntPolynomial::variable(nv, 1);
    // homogenized partial derivative, embedded into the full layout
    auto hpd = [&](const IntPolynomial& f, std::size_t j) {
        IntPolynomial df = f.partial_derivative(j - 1);
        IntPolynomial h = df.is_zero() ? IntPolynomial(n + 1) : df.homogenize(d - 1);
        IntPolynomial out(nv);
        for (const auto& [mo, c] : h.terms()) {
            Monomial nm(nv);
            for (std::size_t k = 0; k <= n; ++k) nm.exps[x_base + k] = mo.exps[k];
            out.add_term(nm, c);
        }
        return out;
    };

    std::vector<ParamPolynomial> out;
    for (std::size_t j = 1; j <= n; ++j) {
        IntPolynomial lam0 = IntPolynomial::variable(nv, lam_base);
        // t0 part: lam0 h(dg/dxj) - sum_i lam_i h(df_i/dxj)
        IntPolynomial part0 = lam0 * hpd(sys.objective(), j);
        for (std::size_t k = 0; k < s; ++k) {
            IntPolynomial lam_i = IntPolynomial::variable(nv, lam_base + 1 + k);
            part0 = part0 - lam_i * hpd(sys.constraint(sel.S[k]), j);
        }
        // t part: d x_j^{d-1} (lam0 a_0j - sum_i lam_i sigma_i a_ij)
        IntPolynomial lin = lam0 * A.a(0, j);
        for (std::size_t k = 0; k < s; ++k) {
            IntPolynomial lam_i = IntPolynomial::variable(nv, lam_base + 1 + k);
            lin = lin - lam_i * (Int(sel.sigma[k]) * A.a(sel.S[k], j));
        }
        IntPolynomial xjpow = IntPolynomial::variable(nv, x_base + j, d - 1);
        out.push_back({t0 * part0 + t * (xjpow * lin) * Int(d), lay});
    }
    return out;
}

ParamPolynomial u_polynomial(const SemialgSystem& sys) {
    const std::size_t n = sys.n();
    VarLayout lay = upoly_layout(n);
    const std::size_t nv = lay.size();
    IntPolynomial uvar = IntPolynomial::variable(nv, 0);
    IntPolynomial x0pow = IntPolynomial::variable(nv, 1, sys.d0());
    IntPolynomial hg = sys.objective().homogenize(sys.d0()).insert_var(0);
    return {uvar * x0pow - hg, lay};
}

SemialgSystem compactify(const SemialgSystem& sys, const Rat& M) {
    if (M < 0) throw std::invalid_argument("compactify: M must be nonnegative");
    if (denominator(M) != 1)
        throw std::invalid_argument("compactify: integer radius required for integer data");
    Int m1 = numerator(M) + 1;
    IntPolynomial ball = IntPolynomial::constant(sys.n(), m1 * m1);
    for (std::size_t j = 0; j < sys.n(); ++j)
        ball = ball - IntPolynomial::variable(sys.n(), j, 2);
    std::vector<IntPolynomial> ineqs = sys.inequalities();
    ineqs.push_back(ball);
    SemialgSystem out(sys.n(), sys.equalities(), std::move(ineqs), sys.objective(), sys.d());
    out.set_bound_basis(sys.bound_basis() ? *sys.bound_basis()
                                          : BoundBasis{sys.n(), sys.m(), sys.d(), sys.H()});
    return out;
}

bool membership_T_t(const SemialgSystem& sys, const PerturbationMatrix& A, const Rat& t,
                    const RationalPoint& pt) {
    if (t < 0) throw std::invalid_argument("membership_T_t: t must be nonnegative");
    if (pt.dim() != sys.n()) throw std::invalid_argument("membership_T_t: dimension mismatch");
    for (std::size_t i = 1; i <= sys.m(); ++i) {
        Rat f = sys.constraint(i).evaluate(pt);
        Rat ft = tilde_constraint(i, A, sys.n(), sys.d()).evaluate(pt);
        if (f + t * ft < 0) return false;
        if (sys.is_equality_index(i) && f - t * ft > 0) return false;
    }
    return true;
}

} // namespace polymin
