#include "polymin/elimination.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <cstdio>
#include <cstdlib>

#include "polymin/linalg.hpp"
#include "polymin/parallel.hpp"

namespace polymin {

VarLayout resultant_layout() {
    VarLayout lay;
    lay.roles.push_back({VarKind::T0, 0});
    lay.roles.push_back({VarKind::T, 0});
    lay.roles.push_back({VarKind::U, 0});
    return lay;
}

namespace {

VarLayout certificate_layout(std::size_t n, const SubsetSelector& sel) {
    VarLayout lay;
    lay.roles.push_back({VarKind::T0, 0});
    lay.roles.push_back({VarKind::T, 0});
    lay.roles.push_back({VarKind::U, 0});
    for (std::size_t j = 0; j <= n; ++j) lay.roles.push_back({VarKind::X, j});
    lay.roles.push_back({VarKind::LAM, 0});
    for (std::size_t i : sel.S) lay.roles.push_back({VarKind::LAM, i});
    return lay;
}

void check_multihomog(const IntPolynomial& p, const VarLayout& lay, unsigned x_deg,
                      unsigned lam_deg, unsigned tt_deg, const char* what) {
    auto xs = lay.slots_of_kind(VarKind::X);
    auto ls = lay.slots_of_kind(VarKind::LAM);
    std::vector<std::size_t> ts;
    if (auto s = lay.find(VarKind::T0, 0)) ts.push_back(*s);
    if (auto s = lay.find(VarKind::T, 0)) ts.push_back(*s);
    if (!p.is_homogeneous_in_vars(xs, x_deg) || !p.is_homogeneous_in_vars(ls, lam_deg) ||
        !p.is_homogeneous_in_vars(ts, tt_deg))
        throw std::logic_error(std::string("resultant system: bidegree tag mismatch for ") +
                               what);
}

} // namespace

ResultantSystem build_resultant_system(const SemialgSystem& sys, const PerturbationMatrix& A,
                                       const SubsetSelector& sel) {
    sel.validate(sys);
    ResultantSystem rs;
    rs.n = sys.n();
    rs.d = sys.d();
    rs.d0 = sys.d0();
    rs.sel = sel;
    rs.layout = certificate_layout(rs.n, sel);

    ParamPolynomial p = u_polynomial(sys);
    rs.p_poly = {embed(p.poly, p.layout, rs.layout), rs.layout};
    check_multihomog(rs.p_poly.poly, rs.layout, rs.d0, 0, 0, "P");

    HomogenizedFamily fam = homogenized_family(sys, A);
    for (std::size_t k = 0; k < sel.size(); ++k) {
        std::size_t i = sel.S[k];
        const ParamPolynomial& src =
            sel.sigma[k] > 0 ? fam.f_plus[i - 1] : fam.f_minus[i - 1];
        rs.f_polys.push_back({embed(src.poly, src.layout, rs.layout), rs.layout});
        check_multihomog(rs.f_polys.back().poly, rs.layout, rs.d, 0, 1, "Fbar");
    }

    for (ParamPolynomial& g : lagrange_family(sys, A, sel)) {
        rs.g_polys.push_back({embed(g.poly, g.layout, rs.layout), rs.layout});
        check_multihomog(rs.g_polys.back().poly, rs.layout, rs.d - 1, 1, 1, "Gbar");
    }
    return rs;
}

// ---------------------------------------------------------------------------
// Reduction of the (x, lambda) system to n+1 forms in x0..xn over Z[t, U].
//
// The lambda block is linear, so it can be eliminated exactly whenever the
// selection size makes the lambda coefficient matrix square or trivial:
//   s = 0:   Gbar_j = lam0 * gamma_j; drop lam0 -> {P, gamma_1..gamma_n}
//   s = n:   a nontrivial lambda always exists -> {P, Fbar_1..Fbar_n}
//   s = n-1: lambda matrix L is n x n; solvability <=> det L = 0
//            -> {P, Fbar (n-1 of them), det L}
// Remaining mixed patterns (1 <= s <= n-2, so n >= 3) are outside the desk
// engine and are refused with a diagnostic.

namespace {

struct ReducedSystem {
    std::vector<IntPolynomial> polys;  // over [t, U, x0..xn]; P is last
    std::vector<unsigned> degrees;     // x-degrees
    std::size_t n;
};

// The resultant value of a reduced system factors exactly along monomial
// content: Res(..., x_j^e h, ...) = Res(..., x_j, ...)^e Res(..., h, ...),
// and the x_j factor is the resultant of the other forms restricted to the
// hyperplane x_j = 0. Stripping content up front removes the structurally
// degenerate Macaulay minors these factors would otherwise cause (and
// shrinks the matrices). A form stripped down to a (t, U)-coefficient c
// closes its branch with the factor c^(product of the other degrees).
struct ResFactor {
    std::vector<IntPolynomial> polys;  // forms over [t, U, x-subset]
    std::vector<unsigned> degrees;
    unsigned long multiplicity;
};

struct FactoredSystem {
    std::vector<ResFactor> factors;
    // (coefficient polynomial over [t, U], exponent)
    std::vector<std::pair<IntPolynomial, unsigned long>> const_factors;
};

void factor_reduced(std::vector<IntPolynomial> polys, unsigned long mult,
                    FactoredSystem& out) {
    const std::size_t nvars = polys.empty() ? 0 : polys[0].num_vars();
    const std::size_t nx = nvars - 2;  // slots 2.. are the x variables
    if (polys.size() != nx)
        throw std::logic_error("factor_reduced: system is not square");

    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].is_zero())
            throw degeneracy_error("restricted system contains the zero form");
        for (std::size_t j = 0; j < nx; ++j) {
            unsigned e = polys[i].min_degree_in(2 + j);
            if (e == 0) continue;
            polys[i] = polys[i].divide_by_var_power(2 + j, e);
            // the x_j factor: the other forms on the hyperplane x_j = 0
            std::vector<IntPolynomial> sub;
            for (std::size_t k = 0; k < polys.size(); ++k) {
                if (k == i) continue;
                sub.push_back(polys[k].substitute(2 + j, 0).drop_var(2 + j));
            }
            if (!sub.empty()) factor_reduced(std::move(sub), mult * e, out);
        }
    }
    // a fully stripped constant form closes the product
    for (std::size_t i = 0; i < polys.size(); ++i) {
        bool is_const = true;
        for (std::size_t j = 0; j < nx; ++j)
            if (polys[i].degree_in(2 + j) != 0) is_const = false;
        if (!is_const) continue;
        unsigned long exp = mult;
        for (std::size_t k = 0; k < polys.size(); ++k) {
            if (k == i) continue;
            std::vector<std::size_t> xs;
            for (std::size_t j = 0; j < nx; ++j) xs.push_back(2 + j);
            exp *= polys[k].degree_in_vars(xs);
        }
        IntPolynomial c = polys[i];
        for (std::size_t j = nx; j-- > 0;) c = c.drop_var(2 + j);
        out.const_factors.emplace_back(std::move(c), exp);
        return;
    }
    ResFactor f;
    f.multiplicity = mult;
    std::vector<std::size_t> xs;
    for (std::size_t j = 0; j < nx; ++j) xs.push_back(2 + j);
    for (auto& p : polys) {
        f.degrees.push_back(p.degree_in_vars(xs));
        f.polys.push_back(std::move(p));
    }
    out.factors.push_back(std::move(f));
}

// certificate layout -> [t, U, x0..xn]: t0 := 1, lambda slots dropped
IntPolynomial to_reduced_vars(const IntPolynomial& p, std::size_t n, std::size_t s) {
    (void)n;
    IntPolynomial q = p.specialize(0, 1);  // t0 := 1, slot dropped
    for (std::size_t k = 0; k <= s; ++k) q = q.drop_var(q.num_vars() - 1);
    return q;
}

ReducedSystem reduce_system(const ResultantSystem& rs) {
    const std::size_t n = rs.n, s = rs.sel.size();
    ReducedSystem red;
    red.n = n;

    const std::size_t lam_base = 3 + (n + 1);
    std::vector<std::size_t> lam_slots;
    for (std::size_t k = 0; k <= s; ++k) lam_slots.push_back(lam_base + k);

    if (s == 0) {
        for (const ParamPolynomial& g : rs.g_polys) {
            IntPolynomial stripped = g.poly.divide_by_var_power(lam_base, 1);
            red.polys.push_back(to_reduced_vars(stripped, n, s));
            red.degrees.push_back(rs.d - 1);
        }
    } else if (s == n) {
        for (const ParamPolynomial& f : rs.f_polys) {
            red.polys.push_back(to_reduced_vars(f.poly, n, s));
            red.degrees.push_back(rs.d);
        }
    } else if (s == n - 1) {
        for (const ParamPolynomial& f : rs.f_polys) {
            red.polys.push_back(to_reduced_vars(f.poly, n, s));
            red.degrees.push_back(rs.d);
        }
        // lambda coefficient matrix L: row j, column k over lam slots
        std::vector<std::vector<IntPolynomial>> L;
        for (const ParamPolynomial& g : rs.g_polys) {
            std::vector<IntPolynomial> row(s + 1,
                                           IntPolynomial(rs.layout.size() - (s + 1)));
            for (const auto& [mono, coeff] : g.poly.collect(lam_slots)) {
                if (mono.total_degree() != 1)
                    throw std::logic_error("reduce_system: Gbar not linear in lambda");
                for (std::size_t k = 0; k <= s; ++k)
                    if (mono.exps[k] == 1) row[k] = coeff;
            }
            L.push_back(std::move(row));
        }
        IntPolynomial delta = poly_det(L);  // over [t0,t,U,x0..xn]
        if (delta.is_zero())
            throw degeneracy_error(
                "lambda coefficient matrix is identically singular; certificate "
                "degenerates for selection " + rs.sel.to_string());
        IntPolynomial dred = delta.specialize(0, 1);  // t0 := 1
        red.polys.push_back(dred);
        red.degrees.push_back(static_cast<unsigned>(n) * (rs.d - 1));
    } else {
        std::ostringstream os;
        os << "unsupported selection size s = " << s << " for n = " << n
           << ": the lambda block only reduces for s in {0, n-1, n}";
        throw budget_error(os.str());
    }

    red.polys.push_back(to_reduced_vars(rs.p_poly.poly, n, s));
    red.degrees.push_back(rs.d0);
    return red;
}

// ---------------------------------------------------------------------------
// Classical Macaulay machinery at the critical degree.

struct MacaulayStructure {
    std::size_t dim = 0;
    std::vector<Monomial> cols;  // degree-D monomials in x0..xn
    std::map<Monomial, std::size_t, GradedLexLess> col_index;
    std::vector<std::size_t> row_poly;  // column class: 0-based poly index
    std::vector<Monomial> row_mult;     // multiplier monomial of the row
    std::vector<std::size_t> nonreduced;
};

void enum_monomials(std::size_t nvars, unsigned deg, Monomial& cur, std::size_t pos,
                    std::vector<Monomial>& out) {
    if (pos + 1 == nvars) {
        cur.exps[pos] = deg;
        out.push_back(cur);
        return;
    }
    for (unsigned e = 0; e <= deg; ++e) {
        cur.exps[pos] = e;
        enum_monomials(nvars, deg - e, cur, pos + 1, out);
    }
    cur.exps[pos] = 0;
}

MacaulayStructure build_macaulay_structure(const std::vector<unsigned>& degrees,
                                           std::size_t n) {
    const std::size_t nvars = n + 1;
    if (degrees.size() != nvars)
        throw std::logic_error("macaulay: need n+1 polynomials");
    unsigned D = 0;
    for (unsigned d : degrees) D += d;
    D -= static_cast<unsigned>(n);

    MacaulayStructure ms;
    Monomial cur(nvars);
    enum_monomials(nvars, D, cur, 0, ms.cols);
    ms.dim = ms.cols.size();
    for (std::size_t i = 0; i < ms.dim; ++i) ms.col_index.emplace(ms.cols[i], i);

    ms.row_poly.resize(ms.dim);
    ms.row_mult.resize(ms.dim);
    for (std::size_t i = 0; i < ms.dim; ++i) {
        const Monomial& alpha = ms.cols[i];
        std::size_t divisors = 0, cls = nvars;
        for (std::size_t k = 0; k < nvars; ++k) {
            if (alpha.exps[k] >= degrees[k]) {
                ++divisors;
                if (cls == nvars) cls = k;
            }
        }
        if (divisors == 0)
            throw std::logic_error("macaulay: column with no class (degree too low)");
        ms.row_poly[i] = cls;
        Monomial mult = alpha;
        mult.exps[cls] -= degrees[cls];
        ms.row_mult[i] = std::move(mult);
        if (divisors >= 2) ms.nonreduced.push_back(i);
    }
    return ms;
}

IntMatrix assemble_macaulay(const MacaulayStructure& ms,
                            const std::vector<IntPolynomial>& specialized) {
    IntMatrix m(ms.dim, ms.dim);
    const std::size_t nvars = specialized.empty() ? 0 : specialized[0].num_vars();
    for (std::size_t r = 0; r < ms.dim; ++r) {
        const IntPolynomial& g = specialized[ms.row_poly[r]];
        const Monomial& mult = ms.row_mult[r];
        for (const auto& [mo, c] : g.terms()) {
            Monomial col(nvars);
            for (std::size_t v = 0; v < nvars; ++v) col.exps[v] = mo.exps[v] + mult.exps[v];
            auto it = ms.col_index.find(col);
            if (it == ms.col_index.end())
                throw std::logic_error("macaulay: product monomial outside column space");
            m.at(r, it->second) = c;
        }
    }
    return m;
}

// det(M + eps I) as an integer polynomial in eps, by interpolation
std::vector<Rat> det_eps(const IntMatrix& m) {
    const std::size_t dim = m.rows();
    std::vector<Rat> nodes(dim + 1), values(dim + 1);
    for (std::size_t k = 0; k <= dim; ++k) {
        IntMatrix shifted = m;
        for (std::size_t i = 0; i < dim; ++i) shifted.at(i, i) += Int(k);
        nodes[k] = Rat(Int(k));
        values[k] = Rat(bareiss_det(shifted));
    }
    return interpolate(nodes, values);
}

// Exact resultant value of the specialized system; Macaulay quotient with a
// diagonal generalized-characteristic-polynomial fallback.
Int resultant_value(const MacaulayStructure& ms,
                    const std::vector<IntPolynomial>& specialized) {
    for (const IntPolynomial& p : specialized)
        if (p.is_zero()) return 0;
    IntMatrix big = assemble_macaulay(ms, specialized);
    Int det_big = bareiss_det(big);
    if (ms.nonreduced.empty()) return det_big;  // extraneous minor is empty: det M' = 1
    IntMatrix small = big.submatrix(ms.nonreduced, ms.nonreduced);
    Int det_small = bareiss_det(small);
    if (det_small != 0) {
        if (det_big % det_small != 0)
            throw degeneracy_error("macaulay quotient is not exact");
        return det_big / det_small;
    }
    // det M' vanished at this specialization: adjoin eps on the diagonal;
    // det(M'+eps I) is monic in eps, so the quotient always exists
    std::vector<Rat> num = det_eps(big);
    IntMatrix small2 = big.submatrix(ms.nonreduced, ms.nonreduced);
    std::vector<Rat> den = det_eps(small2);
    std::vector<Rat> quot = exact_div(num, den);
    Rat v = quot.empty() ? Rat(0) : quot[0];
    if (denominator(v) != 1)
        throw degeneracy_error("generalized characteristic polynomial: non-integer value");
    return numerator(v);
}

Int node_value(std::size_t k) {
    // 0, 1, -1, 2, -2, ...
    if (k == 0) return 0;
    std::size_t h = (k + 1) / 2;
    return k % 2 == 1 ? Int(h) : Int(-Int(h));
}

} // namespace

Int classical_resultant_value(const std::vector<IntPolynomial>& forms) {
    if (forms.empty()) throw std::invalid_argument("resultant: no forms");
    const std::size_t nvars = forms[0].num_vars();
    if (forms.size() != nvars)
        throw std::invalid_argument("resultant: need as many forms as variables");
    std::vector<unsigned> degrees;
    for (const auto& f : forms) {
        if (f.num_vars() != nvars)
            throw std::invalid_argument("resultant: variable count mismatch");
        if (f.is_zero()) return 0;
        unsigned d = f.total_degree();
        if (d == 0 || !f.is_homogeneous_of_degree(d))
            throw std::invalid_argument("resultant: forms must be homogeneous of degree >= 1");
        degrees.push_back(d);
    }
    MacaulayStructure ms = build_macaulay_structure(degrees, nvars - 1);
    return resultant_value(ms, forms);
}

ParamResultant multihomog_resultant(const ResultantSystem& rs, const Budget& budget) {
    const std::size_t n = rs.n, s = rs.sel.size();
    BezoutNumbers bz = bezout_numbers(n, s, rs.d, rs.d0);
    Int deg_tt = Int(s) * bz.M2 + Int(n) * bz.M3;
    Int grid = (deg_tt + 1) * (bz.M1 + 1);
    if (grid > Int(budget.max_grid_points))
        throw budget_error("interpolation grid of " + grid.str() +
                           " points exceeds the budget of " +
                           std::to_string(budget.max_grid_points) + " for selection " +
                           rs.sel.to_string());

    ReducedSystem red = reduce_system(rs);
    FactoredSystem fact;
    factor_reduced(red.polys, 1, fact);

    // matrix dimension guard before enumerating any column space
    std::vector<MacaulayStructure> structures;
    for (const ResFactor& f : fact.factors) {
        unsigned D = 0;
        for (unsigned dd : f.degrees) {
            if (dd == 0)
                throw degeneracy_error("factored system contains a mixed-content form");
            D += dd;
        }
        std::size_t nf = f.polys.size() - 1;  // forms in nf+1 variables
        D -= static_cast<unsigned>(nf);
        Int dim = binomial(Int(D + nf), Int(nf));
        if (dim > Int(budget.max_matrix_dim))
            throw budget_error("macaulay matrix dimension " + dim.str() +
                               " exceeds the budget of " +
                               std::to_string(budget.max_matrix_dim) + " for selection " +
                               rs.sel.to_string());
        structures.push_back(build_macaulay_structure(f.degrees, nf));
    }

    const std::size_t nt = deg_tt.convert_to<std::size_t>() + 1;
    const std::size_t nu = bz.M1.convert_to<std::size_t>() + 1;

    auto value_at = [&](const Int& tv, const Int& uv) -> Int {
        Int acc = 1;
        for (const auto& [cpoly, exp] : fact.const_factors) {
            Int v = cpoly.evaluate_int({tv, uv});
            if (v == 0) return 0;
            acc *= int_pow(v, exp);
        }
        for (std::size_t k = 0; k < fact.factors.size(); ++k) {
            std::vector<IntPolynomial> spec;
            for (const IntPolynomial& p : fact.factors[k].polys)
                spec.push_back(p.specialize(0, tv).specialize(0, uv));
            Int v = resultant_value(structures[k], spec);
            if (v == 0) return 0;
            acc *= int_pow(v, fact.factors[k].multiplicity);
        }
        return acc;
    };

    std::vector<Int> values(nt * nu);
    parallel_for(nt * nu, budget.jobs, [&](std::size_t idx) {
        std::size_t a = idx / nu, b = idx % nu;
        values[idx] = value_at(node_value(a), node_value(b));
    });

    // interpolate each t-line in U, then across t
    std::vector<Rat> u_nodes(nu), t_nodes(nt);
    for (std::size_t b = 0; b < nu; ++b) u_nodes[b] = Rat(node_value(b));
    for (std::size_t a = 0; a < nt; ++a) t_nodes[a] = Rat(node_value(a));

    std::vector<std::vector<Rat>> line_coeffs(nt);
    for (std::size_t a = 0; a < nt; ++a) {
        std::vector<Rat> vals(nu);
        for (std::size_t b = 0; b < nu; ++b) vals[b] = Rat(values[a * nu + b]);
        line_coeffs[a] = interpolate(u_nodes, vals);
        line_coeffs[a].resize(nu, Rat(0));
    }

    IntPolynomial R(3);  // [t0, t, U]
    unsigned deg_tt_u = deg_tt.convert_to<unsigned>();
    for (std::size_t j = 0; j < nu; ++j) {
        std::vector<Rat> vals(nt);
        for (std::size_t a = 0; a < nt; ++a) vals[a] = line_coeffs[a][j];
        std::vector<Rat> in_t = interpolate(t_nodes, vals);
        for (std::size_t k = 0; k < in_t.size(); ++k) {
            if (in_t[k] == 0) continue;
            if (denominator(in_t[k]) != 1)
                throw degeneracy_error("interpolated resultant has non-integer coefficients");
            Monomial mo(3);
            mo.exps[0] = deg_tt_u - static_cast<unsigned>(k);
            mo.exps[1] = static_cast<unsigned>(k);
            mo.exps[2] = static_cast<unsigned>(j);
            R.add_term(mo, numerator(in_t[k]));
        }
    }

    if (R.is_zero())
        throw degeneracy_error("resultant is identically zero for selection " +
                               rs.sel.to_string());

    // control points: reconstructed polynomial must reproduce fresh values
    for (int chk = 0; chk < 2; ++chk) {
        Int tc = node_value(nt + chk), uc = node_value(nu + chk);
        Int direct = value_at(tc, uc);
        Int via_R = R.evaluate_int({Int(1), tc, uc});
        if (direct != via_R)
            throw degeneracy_error("resultant interpolation failed a control point check");
    }

    ParamResultant pr;
    pr.R = R;
    pr.deg_tt = deg_tt;
    pr.M1 = bz.M1;
    pr.sel = rs.sel;
    ParamResultant stripped = strip_t_power(pr);
    return stripped;
}

ParamResultant strip_t_power(const ParamResultant& pr) {
    if (pr.R.is_zero()) throw std::invalid_argument("strip_t_power: zero resultant");
    ParamResultant out = pr;
    out.e = pr.R.min_degree_in(1);
    out.R_tilde = pr.R.divide_by_var_power(1, out.e);
    return out;
}

CertificatePoly q_poly(const ParamResultant& pr, const BoundParams& params) {
    if (pr.R_tilde.is_zero())
        throw std::invalid_argument("q_poly: resultant not stripped");
    IntPolynomial at0 = pr.R_tilde.substitute(1, 0).substitute(0, 1);
    std::vector<Int> coeffs(pr.M1.convert_to<std::size_t>() + 1, Int(0));
    for (const auto& [mo, c] : at0.terms()) coeffs.at(mo.exps[2]) = c;
    UPoly q{std::move(coeffs)};

    if (q.is_zero())
        throw degeneracy_error("certificate polynomial vanished; implementation bug "
                               "(the stripped resultant cannot be a multiple of t)");
    BezoutNumbers bz = bezout_numbers(params.n, params.s, params.d, params.d0);
    Int M = coefficient_bound_M(params);
    if (Int(q.degree()) > bz.M1)
        throw ceiling_violation_error("certificate degree " + std::to_string(q.degree()) +
                                      " exceeds the ceiling " + bz.M1.str());
    if (q.height() > M)
        throw ceiling_violation_error("certificate height exceeds the coefficient ceiling");
    return {std::move(q), pr.sel, bz.M1, M};
}

std::vector<SubsetSelector> enumerate_selectors(const SemialgSystem& sys) {
    const std::size_t m = sys.m();
    const std::size_t smax = std::min(sys.n(), m);
    std::vector<SubsetSelector> out;
    std::vector<std::size_t> subset;
    std::function<void(std::size_t)> rec = [&](std::size_t next) {
        if (subset.size() <= smax) {
            // enumerate sign choices: +- on equality indices, + on inequalities
            std::vector<std::size_t> eq_pos;
            for (std::size_t k = 0; k < subset.size(); ++k)
                if (sys.is_equality_index(subset[k])) eq_pos.push_back(k);
            for (std::size_t mask = 0; mask < (std::size_t(1) << eq_pos.size()); ++mask) {
                SubsetSelector sel;
                sel.S = subset;
                sel.sigma.assign(subset.size(), 1);
                for (std::size_t b = 0; b < eq_pos.size(); ++b)
                    if (mask & (std::size_t(1) << b)) sel.sigma[eq_pos[b]] = -1;
                out.push_back(std::move(sel));
            }
        }
        if (subset.size() == smax) return;
        for (std::size_t i = next; i <= m; ++i) {
            subset.push_back(i);
            rec(i + 1);
            subset.pop_back();
        }
    };
    rec(1);
    // deterministic order: by size, then lexicographic S, then sigma pattern
    std::stable_sort(out.begin(), out.end(),
                     [](const SubsetSelector& a, const SubsetSelector& b) {
                         if (a.S.size() != b.S.size()) return a.S.size() < b.S.size();
                         if (a.S != b.S) return a.S < b.S;
                         return a.sigma > b.sigma;  // + before -
                     });
    return out;
}

CandidateSet candidate_minima(const SemialgSystem& sys, const PerturbationMatrix& A,
                              const Budget& budget) {
    CandidateSet cs;
    // (S, sigma) pairs are independent work items; results land by index
    std::vector<SubsetSelector> selectors = enumerate_selectors(sys);
    std::vector<CertificatePoly> certs(selectors.size());
    Budget inner = budget;
    inner.jobs = 1;  // parallelism lives at the selector level here
    parallel_for(selectors.size(), budget.jobs, [&](std::size_t i) {
        ResultantSystem rs = build_resultant_system(sys, A, selectors[i]);
        ParamResultant pr = multihomog_resultant(rs, inner);
        BoundParams params =
            BoundParams::from_system(sys, selectors[i].size(), /*use_basis=*/false);
        certs[i] = q_poly(pr, params);
    });
    cs.certificates = std::move(certs);
    UPoly prod = UPoly::constant(1);
    for (const CertificatePoly& c : cs.certificates)
        if (c.q.degree() >= 1) prod = prod * c.q;
    if (prod.degree() >= 1) {
        cs.squarefree_product = squarefree_part(prod);
        cs.root_intervals = isolate_real_roots(cs.squarefree_product);
    } else {
        cs.squarefree_product = UPoly::constant(1);
    }
    return cs;
}

Rat simplest_rational_in(const Rat& lo, const Rat& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_rational_in: empty interval");
    if (lo <= 0 && 0 <= hi) return 0;
    if (hi < 0) return -simplest_rational_in(-hi, -lo);
    // 0 < lo <= hi
    Int ceil_lo = numerator(lo) / denominator(lo);
    if (ceil_lo * denominator(lo) != numerator(lo)) ceil_lo += 1;
    if (Rat(ceil_lo) <= hi) return Rat(ceil_lo);
    Int a = numerator(lo) / denominator(lo);  // floor, lo > 0
    Rat sub = simplest_rational_in(Rat(1) / (hi - Rat(a)), Rat(1) / (lo - Rat(a)));
    return Rat(a) + Rat(1) / sub;
}

std::optional<RootMatch> match_enclosure(const CandidateSet& cand, const Rat& lo,
                                         const Rat& hi, const Rat& refine_width) {
    for (std::size_t ci = 0; ci < cand.certificates.size(); ++ci) {
        const UPoly& q = cand.certificates[ci].q;
        if (q.degree() < 1) continue;
        UPoly sf = squarefree_part(q);
        for (const RootInterval& iv : isolate_real_roots(q)) {
            RootInterval r = refine_root(sf, iv, refine_width);
            if (r.lo > hi || r.hi < lo) continue;
            RootMatch match;
            match.cert_index = ci;
            match.interval = r;
            if (r.is_point()) {
                match.rational_root = r.lo;
                match.factor_degree = 1;
                return match;
            }
            Rat cl = std::max(r.lo, lo), ch = std::min(r.hi, hi);
            if (cl <= ch) {
                Rat cand_root = simplest_rational_in(cl, ch);
                if (q.evaluate(cand_root) == 0) {
                    match.rational_root = cand_root;
                    match.factor_degree = 1;
                    return match;
                }
            }
            // degree of the squarefree factor owning this root
            match.factor_degree = Int(sf.degree());
            for (const UPoly& f : squarefree_decomposition(q)) {
                if (f.degree() < 1) continue;
                if (f.sign_at(r.lo) * f.sign_at(r.hi) < 0) {
                    match.factor_degree = Int(f.degree());
                    break;
                }
            }
            return match;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Limit system checks

namespace {

void for_each_subset(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t next) {
        fn(cur);
        for (std::size_t j = next; j <= n; ++j) {
            cur.push_back(j);
            rec(j + 1);
            cur.pop_back();
        }
    };
    rec(1);
}

} // namespace

LimitSystemReport limit_system_solutions(const PerturbationMatrix& A, const SubsetSelector& sel,
                                         std::size_t n, unsigned d) {
    const std::size_t s = sel.size();
    if (s > n) throw std::invalid_argument("limit_system_solutions: #S > n");
    LimitSystemReport rep;
    rep.total_affine_solutions = 0;
    rep.no_solutions_at_infinity = true;
    rep.all_checks_passed = true;

    for_each_subset(n, [&](const std::vector<std::size_t>& J) {
        LimitCaseReport cr;
        cr.J = J;
        cr.affine_count = 0;
        std::size_t nJ = J.size();
        std::vector<bool> inJ(n + 1, false);
        for (std::size_t j : J) inJ[j] = true;

        if (nJ > n - s) {
            cr.kind = 1;
            // x_j^d = 0 forced for every remaining coordinate (incl. x0):
            // the s x (n+1-#J) block over columns not in J has full column rank
            std::vector<std::size_t> cols;
            for (std::size_t j = 0; j <= n; ++j)
                if (!inJ[j]) cols.push_back(j);
            RatMatrix m(s, cols.size());
            for (std::size_t r = 0; r < s; ++r)
                for (std::size_t c = 0; c < cols.size(); ++c)
                    m.at(r, c) = Rat(A.a(sel.S[r], cols[c]));
            cr.check_passed = rat_rank(m) == cols.size();
        } else if (nJ < n - s) {
            cr.kind = -1;
            // lambda system overdetermined: (n-#J) x (s+1), full column rank
            std::vector<std::size_t> rows;
            for (std::size_t j = 1; j <= n; ++j)
                if (!inJ[j]) rows.push_back(j);
            RatMatrix m(rows.size(), s + 1);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                m.at(r, 0) = Rat(A.a(0, rows[r]));
                for (std::size_t k = 0; k < s; ++k)
                    m.at(r, k + 1) = Rat(-Int(sel.sigma[k]) * A.a(sel.S[k], rows[r]));
            }
            cr.check_passed = rat_rank(m) == s + 1;
        } else {
            cr.kind = 0;
            bool ok = true;
            // lambda part: s x (s+1) of rank s (one projective solution)
            {
                std::vector<std::size_t> rows;
                for (std::size_t j = 1; j <= n; ++j)
                    if (!inJ[j]) rows.push_back(j);
                RatMatrix m(rows.size(), s + 1);
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    m.at(r, 0) = Rat(A.a(0, rows[r]));
                    for (std::size_t k = 0; k < s; ++k)
                        m.at(r, k + 1) = Rat(-Int(sel.sigma[k]) * A.a(sel.S[k], rows[r]));
                }
                ok = ok && rat_rank(m) == s;
            }
            // x part: solve sum_{j in K} a_ij y_j = -a_i0 (x0 = 1), y_j = x_j^d
            if (s > 0) {
                std::vector<std::size_t> K;
                for (std::size_t j = 1; j <= n; ++j)
                    if (!inJ[j]) K.push_back(j);
                RatMatrix m(s, s);
                std::vector<Rat> rhs(s);
                for (std::size_t r = 0; r < s; ++r) {
                    for (std::size_t c = 0; c < s; ++c) m.at(r, c) = Rat(A.a(sel.S[r], K[c]));
                    rhs[r] = Rat(-A.a(sel.S[r], 0));
                }
                // the same matrix being nonsingular rules out solutions with x0 = 0
                auto sol = solve_linear(m, rhs);
                if (!sol) {
                    ok = false;
                    rep.no_solutions_at_infinity = false;
                } else {
                    for (const Rat& y : *sol)
                        if (y == 0) ok = false;  // would belong to a larger J
                }
            }
            if (ok) cr.affine_count = int_pow(d, s);
            cr.check_passed = ok;
            rep.total_affine_solutions += cr.affine_count;
        }
        rep.all_checks_passed = rep.all_checks_passed && cr.check_passed;
        rep.cases.push_back(std::move(cr));
    });
    return rep;
}

} // namespace polymin
