#include "polymin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>

#include "polymin/linalg.hpp"
#include "polymin/parallel.hpp"

namespace polymin {

bool Box::contains(const RationalPoint& p) const {
    if (p.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (p.coords[i] < ranges[i].first || p.coords[i] > ranges[i].second) return false;
    return true;
}

namespace {

// ------------------------------------------------------------------ intervals

struct RatInterval {
    Rat lo, hi;
};

RatInterval iv_pow(const Rat& lo, const Rat& hi, unsigned e) {
    if (e == 0) return {1, 1};
    if (e == 1) return {lo, hi};
    Rat pl = rat_pow(lo, e), ph = rat_pow(hi, e);
    if (e % 2 == 1) return {pl, ph};
    if (lo >= 0) return {pl, ph};
    if (hi <= 0) return {ph, pl};
    return {0, std::max(pl, ph)};
}

RatInterval iv_mul(const RatInterval& a, const RatInterval& b) {
    Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)),
            std::max(std::max(c1, c2), std::max(c3, c4))};
}

RatInterval eval_on_box(const IntPolynomial& f, const Box& cell) {
    RatInterval acc{0, 0};
    for (const auto& [mo, c] : f.terms()) {
        RatInterval t{Rat(c), Rat(c)};
        for (std::size_t i = 0; i < cell.dim(); ++i)
            if (mo.exps[i])
                t = iv_mul(t, iv_pow(cell.ranges[i].first, cell.ranges[i].second, mo.exps[i]));
        acc.lo += t.lo;
        acc.hi += t.hi;
    }
    return acc;
}

bool possibly_feasible(const SemialgSystem& sys, const Box& cell) {
    for (const auto& f : sys.equalities()) {
        RatInterval iv = eval_on_box(f, cell);
        if (iv.lo > 0 || iv.hi < 0) return false;
    }
    for (const auto& f : sys.inequalities())
        if (eval_on_box(f, cell).hi < 0) return false;
    return true;
}

// Partial derivatives of the equality constraints, computed once per run.
struct ContractData {
    std::vector<IntPolynomial> eqs;
    std::vector<std::vector<IntPolynomial>> grads;  // [eq][axis]
};

ContractData make_contract_data(const SemialgSystem& sys) {
    ContractData cd;
    for (const auto& f : sys.equalities()) {
        cd.eqs.push_back(f);
        std::vector<IntPolynomial> g;
        for (std::size_t j = 0; j < sys.n(); ++j) g.push_back(f.partial_derivative(j));
        cd.grads.push_back(std::move(g));
    }
    return cd;
}

struct ObjectiveData {
    IntPolynomial g;
    std::vector<IntPolynomial> grads;
};

ObjectiveData make_objective_data(const SemialgSystem& sys) {
    ObjectiveData od{sys.objective(), {}};
    for (std::size_t j = 0; j < sys.n(); ++j)
        od.grads.push_back(od.g.partial_derivative(j));
    return od;
}

// Mean-value form intersected with the naive term-wise form; the former is
// second-order tight on small cells and immune to term cancellation.
RatInterval eval_objective_sharp(const ObjectiveData& od, const Box& cell) {
    RatInterval naive = eval_on_box(od.g, cell);
    RationalPoint mid;
    mid.coords.resize(cell.dim());
    for (std::size_t j = 0; j < cell.dim(); ++j) {
        Rat m = round_dyadic((cell.ranges[j].first + cell.ranges[j].second) / 2, 64, false);
        if (m < cell.ranges[j].first) m = cell.ranges[j].first;
        mid.coords[j] = m;
    }
    Rat g_mid = od.g.evaluate(mid);
    RatInterval mv{g_mid, g_mid};
    for (std::size_t j = 0; j < cell.dim(); ++j) {
        RatInterval dj = eval_on_box(od.grads[j], cell);
        RatInterval delta{cell.ranges[j].first - mid.coords[j],
                          cell.ranges[j].second - mid.coords[j]};
        RatInterval prod = iv_mul(dj, delta);
        mv.lo += prod.lo;
        mv.hi += prod.hi;
    }
    return {std::max(naive.lo, mv.lo), std::min(naive.hi, mv.hi)};
}

// Axis-wise interval-Newton contraction on the equality constraints. Returns
// nullopt when the cell provably contains no feasible point; otherwise a box
// containing every feasible point of the input cell. New endpoints are
// rounded outward to dyadics so coordinate bit sizes stay bounded across
// refinement rounds.
std::optional<Box> contract_cell(const ContractData& cd, Box box) {
    const std::size_t n = box.dim();
    // rounding precision: comfortably below the square of the cell width
    unsigned prec = 48;
    {
        Rat wmin = 0;
        for (std::size_t j = 0; j < n; ++j) {
            Rat w = box.ranges[j].second - box.ranges[j].first;
            if (w > 0 && (wmin == 0 || w < wmin)) wmin = w;
        }
        if (wmin > 0 && wmin < 1) {
            unsigned long wb = bit_size(denominator(wmin) / numerator(wmin)) + 1;
            prec = static_cast<unsigned>(std::min<unsigned long>(2 * wb + 48, 2048));
        }
    }
    for (int sweep = 0; sweep < 3; ++sweep) {
        bool changed = false;
        for (std::size_t e = 0; e < cd.eqs.size(); ++e) {
            RatInterval full = eval_on_box(cd.eqs[e], box);
            if (full.lo > 0 || full.hi < 0) return std::nullopt;
            for (std::size_t j = 0; j < n; ++j) {
                if (box.ranges[j].first == box.ranges[j].second) continue;
                RatInterval d = eval_on_box(cd.grads[e][j], box);
                if (d.lo <= 0 && d.hi >= 0) continue;  // derivative not sign-definite
                Rat mid = round_dyadic((box.ranges[j].first + box.ranges[j].second) / 2,
                                       prec, false);
                Box at_mid = box;
                at_mid.ranges[j] = {mid, mid};
                RatInterval fc = eval_on_box(cd.eqs[e], at_mid);
                // x_j in mid - fc / d
                Rat q1 = fc.lo / d.lo, q2 = fc.lo / d.hi, q3 = fc.hi / d.lo,
                    q4 = fc.hi / d.hi;
                Rat qlo = std::min(std::min(q1, q2), std::min(q3, q4));
                Rat qhi = std::max(std::max(q1, q2), std::max(q3, q4));
                Rat nlo = round_dyadic(mid - qhi, prec, false);
                Rat nhi = round_dyadic(mid - qlo, prec, true);
                if (nlo > box.ranges[j].first) {
                    box.ranges[j].first = nlo;
                    changed = true;
                }
                if (nhi < box.ranges[j].second) {
                    box.ranges[j].second = nhi;
                    changed = true;
                }
                if (box.ranges[j].first > box.ranges[j].second) return std::nullopt;
            }
        }
        if (!changed) break;
    }
    return box;
}

// ------------------------------------------------------------------- doubles

double eval_d(const IntPolynomial& f, const std::vector<double>& x) {
    double acc = 0;
    for (const auto& [mo, c] : f.terms()) {
        double t = c.convert_to<double>();
        for (std::size_t i = 0; i < x.size(); ++i)
            for (unsigned e = 0; e < mo.exps[i]; ++e) t *= x[i];
        acc += t;
    }
    return acc;
}

// solve k x k double system in place; false when near-singular
bool solve_d(std::vector<std::vector<double>> a, std::vector<double>& b) {
    const std::size_t k = b.size();
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < k; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
        if (std::fabs(a[p][c]) < 1e-14) return false;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c) continue;
            double f = a[r][c] / a[c][c];
            if (f == 0) continue;
            for (std::size_t j = c; j < k; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t c = 0; c < k; ++c) b[c] /= a[c][c];
    return true;
}

Rat dyadic_of(double v, unsigned prec) {
    double scaled = std::ldexp(v, static_cast<int>(prec));
    if (!std::isfinite(scaled)) throw oracle_error("dyadic_of: value not finite");
    Int num(static_cast<long long>(std::llround(scaled)));
    return Rat(num, int_pow(2, prec));
}

// Lagrangian lower bound: for any fixed multipliers c_e, the polynomial
// D*g - sum c_e f_e agrees with D*g on the feasible set, so its interval
// minimum over the cell divided by D bounds min g from below. Multipliers
// are chosen near the least-squares dual at the cell midpoint, which kills
// the first-order variation of g transverse to the constraint manifold.
std::optional<Rat> lagrangian_lower(const ObjectiveData& od, const ContractData& cd,
                                    const Box& cell) {
    const std::size_t n = cell.dim(), ne = cd.eqs.size();
    if (ne == 0) return std::nullopt;
    RationalPoint mid;
    mid.coords.resize(n);
    std::vector<double> mid_d(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat m = round_dyadic((cell.ranges[j].first + cell.ranges[j].second) / 2, 64, false);
        if (m < cell.ranges[j].first) m = cell.ranges[j].first;
        mid.coords[j] = m;
        mid_d[j] = m.convert_to<double>();
    }
    // least-squares multipliers from the normal equations, in doubles
    std::vector<std::vector<double>> gf(ne, std::vector<double>(n));
    std::vector<double> gg(n);
    for (std::size_t j = 0; j < n; ++j) gg[j] = eval_d(od.grads[j], mid_d);
    for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t j = 0; j < n; ++j) gf[e][j] = eval_d(cd.grads[e][j], mid_d);
    std::vector<std::vector<double>> a(ne, std::vector<double>(ne, 0.0));
    std::vector<double> b(ne, 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
        for (std::size_t f = 0; f < ne; ++f)
            for (std::size_t j = 0; j < n; ++j) a[e][f] += gf[e][j] * gf[f][j];
        for (std::size_t j = 0; j < n; ++j) b[e] += gf[e][j] * gg[j];
    }
    if (!solve_d(a, b)) return std::nullopt;
    const long scale_bits = 24;
    const Int D = Int(1) << scale_bits;
    std::vector<Int> c(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        double scaled = std::ldexp(b[e], scale_bits);
        if (!std::isfinite(scaled) || std::fabs(scaled) > 9e18) return std::nullopt;
        c[e] = Int(static_cast<long long>(std::llround(scaled)));
    }
    // exact mean-value form of D*g - sum c_e f_e over the cell
    Rat val = Rat(D) * od.g.evaluate(mid);
    for (std::size_t e = 0; e < ne; ++e) val -= Rat(c[e]) * cd.eqs[e].evaluate(mid);
    RatInterval acc{val, val};
    for (std::size_t j = 0; j < n; ++j) {
        RatInterval dj = eval_on_box(od.grads[j], cell);
        dj.lo *= D;
        dj.hi *= D;
        for (std::size_t e = 0; e < ne; ++e) {
            RatInterval fj = eval_on_box(cd.grads[e][j], cell);
            RatInterval scaled = iv_mul({Rat(c[e]), Rat(c[e])}, fj);
            dj.lo -= scaled.hi;
            dj.hi -= scaled.lo;
        }
        RatInterval delta{cell.ranges[j].first - mid.coords[j],
                          cell.ranges[j].second - mid.coords[j]};
        RatInterval prod = iv_mul(dj, delta);
        acc.lo += prod.lo;
        acc.hi += prod.hi;
    }
    return acc.lo / D;
}


// ------------------------------------------------- feasible-point certificate

struct CertOutcome {
    bool ok = false;
    RationalPoint witness;
    Rat value = 0;     // g(witness), exact
    Rat value_hi = 0;  // certified achievable upper bound for min g
    bool certified = false;
    Rat max_residual = 0;
};

// Newton polish of the active-equality system from a starting point; returns
// the refined point and the active inequality set (indices into inequalities()).
bool polish(const SemialgSystem& sys, std::vector<double>& x,
            std::vector<std::size_t>& active_ineq) {
    const std::size_t n = sys.n();
    active_ineq.clear();
    for (int pass = 0; pass < 4; ++pass) {
        std::vector<const IntPolynomial*> eqs;
        for (const auto& f : sys.equalities()) eqs.push_back(&f);
        for (std::size_t idx : active_ineq) eqs.push_back(&sys.inequalities()[idx]);
        const std::size_t k = eqs.size();
        if (k > n) return false;
        if (k > 0) {
            // pivot columns from the Jacobian at the current point
            std::vector<std::vector<double>> jac(k, std::vector<double>(n));
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    jac[r][c] = eval_d(eqs[r]->partial_derivative(c), x);
            std::vector<std::size_t> cols;
            {
                std::vector<std::vector<double>> work = jac;
                std::vector<bool> used(n, false);
                for (std::size_t r = 0; r < k; ++r) {
                    std::size_t best = n;
                    double bv = 1e-13;
                    for (std::size_t c = 0; c < n; ++c)
                        if (!used[c] && std::fabs(work[r][c]) > bv) {
                            bv = std::fabs(work[r][c]);
                            best = c;
                        }
                    if (best == n) return false;
                    used[best] = true;
                    cols.push_back(best);
                    for (std::size_t rr = r + 1; rr < k; ++rr) {
                        double f = work[rr][best] / work[r][best];
                        for (std::size_t c = 0; c < n; ++c) work[rr][c] -= f * work[r][c];
                    }
                }
                std::sort(cols.begin(), cols.end());
            }
            bool converged = false;
            for (int it = 0; it < 80; ++it) {
                std::vector<double> fval(k);
                double res = 0;
                for (std::size_t r = 0; r < k; ++r) {
                    fval[r] = eval_d(*eqs[r], x);
                    res = std::max(res, std::fabs(fval[r]));
                }
                if (res < 1e-13) {
                    converged = true;
                    break;
                }
                std::vector<std::vector<double>> a(k, std::vector<double>(k));
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c = 0; c < k; ++c)
                        a[r][c] = eval_d(eqs[r]->partial_derivative(cols[c]), x);
                std::vector<double> step = fval;
                if (!solve_d(a, step)) return false;
                for (std::size_t c = 0; c < k; ++c) x[cols[c]] -= step[c];
            }
            if (!converged) return false;
        }
        // inequality activity scan
        bool changed = false;
        for (std::size_t i = 0; i < sys.inequalities().size(); ++i) {
            if (std::find(active_ineq.begin(), active_ineq.end(), i) != active_ineq.end())
                continue;
            if (eval_d(sys.inequalities()[i], x) < 1e-9) {
                active_ineq.push_back(i);
                changed = true;
            }
        }
        if (!changed) return true;
    }
    return false;
}

CertOutcome certify_from(const SemialgSystem& sys, std::vector<double> x) {
    CertOutcome out;
    const std::size_t n = sys.n();
    std::vector<std::size_t> active_ineq;
    if (!polish(sys, x, active_ineq)) return out;

    std::vector<const IntPolynomial*> eqs;
    for (const auto& f : sys.equalities()) eqs.push_back(&f);
    for (std::size_t idx : active_ineq) eqs.push_back(&sys.inequalities()[idx]);
    const std::size_t k = eqs.size();

    // pinned coordinates: everything outside the pivot columns
    std::vector<std::size_t> cols;
    if (k > 0) {
        std::vector<std::vector<double>> jac(k, std::vector<double>(n));
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < n; ++c)
                jac[r][c] = eval_d(eqs[r]->partial_derivative(c), x);
        std::vector<bool> used(n, false);
        for (std::size_t r = 0; r < k; ++r) {
            std::size_t best = n;
            double bv = 1e-13;
            for (std::size_t c = 0; c < n; ++c)
                if (!used[c] && std::fabs(jac[r][c]) > bv) {
                    bv = std::fabs(jac[r][c]);
                    best = c;
                }
            if (best == n) return out;
            used[best] = true;
            cols.push_back(best);
            for (std::size_t rr = r + 1; rr < k; ++rr) {
                double f = jac[rr][best] / jac[r][best];
                for (std::size_t c = 0; c < n; ++c) jac[rr][c] -= f * jac[r][c];
            }
        }
        std::sort(cols.begin(), cols.end());
    }
    std::vector<bool> is_solved(n, false);
    for (std::size_t c : cols) is_solved[c] = true;

    // exact witness: dyadic coordinates
    std::vector<Rat> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = dyadic_of(x[i], 60);

    if (k == 0) {
        // no active equalities: the witness must be exactly feasible
        RationalPoint wp{w};
        for (const auto& f : sys.inequalities())
            if (f.evaluate(wp) < 0) return out;
        out.ok = true;
        out.certified = true;
        out.witness = wp;
        out.value = sys.objective().evaluate(wp);
        out.value_hi = out.value;
        out.max_residual = 0;
        return out;
    }

    // Krawczyk over the solved coordinates; pinned coordinates stay exact
    const unsigned radius_bits_options[] = {48, 42, 36};
    for (unsigned rb : radius_bits_options) {
        Rat r = Rat(1, int_pow(2, rb));
        std::vector<Rat> y0;
        for (std::size_t c : cols) y0.push_back(w[c]);
        // full-dimension box: pinned coords are points
        Box full;
        full.ranges.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (is_solved[i]) full.ranges[i] = {w[i] - r, w[i] + r};
            else full.ranges[i] = {w[i], w[i]};
        }
        // midpoint Jacobian (exact), function values (exact)
        RatMatrix jmid(k, k);
        std::vector<Rat> f0(k);
        RationalPoint wp{w};
        bool bad = false;
        for (std::size_t rr = 0; rr < k; ++rr) {
            f0[rr] = eqs[rr]->evaluate(wp);
            for (std::size_t cc = 0; cc < k; ++cc)
                jmid.at(rr, cc) = eqs[rr]->partial_derivative(cols[cc]).evaluate(wp);
        }
        auto inv = rat_inverse(jmid);
        if (!inv) continue;
        // K = y0 - inv*f0 + (I - inv*J(box)) * [-r, r]
        std::vector<RatInterval> K(k);
        std::vector<Rat> shift(k, Rat(0));
        for (std::size_t rr = 0; rr < k; ++rr)
            for (std::size_t cc = 0; cc < k; ++cc) shift[rr] += inv->at(rr, cc) * f0[cc];
        for (std::size_t rr = 0; rr < k; ++rr) {
            RatInterval acc{y0[rr] - shift[rr], y0[rr] - shift[rr]};
            for (std::size_t cc = 0; cc < k; ++cc) {
                // R = I - inv*J(box), row rr col cc
                RatInterval rij{rr == cc ? Rat(1) : Rat(0), rr == cc ? Rat(1) : Rat(0)};
                for (std::size_t t = 0; t < k; ++t) {
                    RatInterval jint =
                        eval_on_box(eqs[t]->partial_derivative(cols[cc]), full);
                    RatInterval prod = iv_mul({inv->at(rr, t), inv->at(rr, t)}, jint);
                    rij.lo -= prod.hi;
                    rij.hi -= prod.lo;
                }
                RatInterval d = iv_mul(rij, {-r, r});
                acc.lo += d.lo;
                acc.hi += d.hi;
            }
            K[rr] = acc;
            if (!(K[rr].lo > y0[rr] - r && K[rr].hi < y0[rr] + r)) {
                bad = true;
                break;
            }
        }
        if (bad) continue;
        // certified: a unique zero lies in K (pinned coords exact)
        Box zero_box;
        zero_box.ranges.resize(n);
        for (std::size_t i = 0; i < n; ++i) zero_box.ranges[i] = {w[i], w[i]};
        for (std::size_t c = 0; c < k; ++c) zero_box.ranges[cols[c]] = {K[c].lo, K[c].hi};
        // inactive inequalities must hold on the whole zero box
        bool infeasible = false;
        for (std::size_t i = 0; i < sys.inequalities().size(); ++i) {
            if (std::find(active_ineq.begin(), active_ineq.end(), i) != active_ineq.end())
                continue;
            if (eval_on_box(sys.inequalities()[i], zero_box).lo <= 0) {
                infeasible = true;
                break;
            }
        }
        if (infeasible) return out;

        RationalPoint wp2{w};
        out.ok = true;
        out.certified = true;
        out.witness = wp2;
        out.value = sys.objective().evaluate(wp2);
        out.value_hi = eval_on_box(sys.objective(), zero_box).hi;
        Rat resid = 0;
        for (std::size_t rr = 0; rr < k; ++rr) resid = std::max(resid, abs_rat(f0[rr]));
        out.max_residual = resid;
        // witness tolerance: residuals within 2^-40
        if (resid > Rat(1, int_pow(2, 40))) out.ok = false;
        return out;
    }
    return out;
}

// ---------------------------------------------------------------- grid cells

unsigned default_resolution(std::size_t n) {
    if (n <= 2) return 16;
    if (n == 3) return 8;
    if (n == 4) return 6;
    if (n <= 6) return 4;
    return 2;
}

struct Cell {
    Box box;
    RatInterval g_iv;
};

std::vector<Box> connected_region(const SemialgSystem& sys, const ComponentSpec& comp,
                                  unsigned res, std::size_t max_cells) {
    const std::size_t n = sys.n();
    Int total = int_pow(res, n);
    if (total > Int(max_cells))
        throw oracle_error("grid of " + total.str() + " cells exceeds the cell budget");

    std::vector<Rat> step(n);
    for (std::size_t i = 0; i < n; ++i)
        step[i] = (comp.box.ranges[i].second - comp.box.ranges[i].first) / Int(res);

    auto cell_box = [&](const std::vector<unsigned>& idx) {
        Box b;
        b.ranges.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rat lo = comp.box.ranges[i].first + step[i] * Int(idx[i]);
            b.ranges[i] = {lo, lo + step[i]};
        }
        return b;
    };

    // linearized index <-> coordinates
    auto to_linear = [&](const std::vector<unsigned>& idx) {
        std::size_t lin = 0;
        for (std::size_t i = 0; i < n; ++i) lin = lin * res + idx[i];
        return lin;
    };

    // seed cells: all cells whose closed box contains the seed
    std::vector<std::vector<unsigned>> seeds;
    {
        std::vector<std::vector<unsigned>> axis_choices(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (unsigned k = 0; k < res; ++k) {
                Rat lo = comp.box.ranges[i].first + step[i] * Int(k);
                if (comp.seed.coords[i] >= lo && comp.seed.coords[i] <= lo + step[i])
                    axis_choices[i].push_back(k);
            }
            if (axis_choices[i].empty())
                throw oracle_error("seed lies outside the component box");
        }
        std::vector<unsigned> cur(n);
        std::function<void(std::size_t)> rec = [&](std::size_t pos) {
            if (pos == n) {
                seeds.push_back(cur);
                return;
            }
            for (unsigned k : axis_choices[pos]) {
                cur[pos] = k;
                rec(pos + 1);
            }
        };
        rec(0);
    }

    std::set<std::size_t> visited;
    std::vector<Box> region;
    std::vector<std::vector<unsigned>> queue;
    for (const auto& s : seeds) {
        Box b = cell_box(s);
        if (possibly_feasible(sys, b) && visited.insert(to_linear(s)).second) {
            queue.push_back(s);
            region.push_back(b);
        }
    }
    if (queue.empty()) throw oracle_error("no feasible cell at the seed");
    while (!queue.empty()) {
        std::vector<unsigned> idx = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            for (int dir : {-1, 1}) {
                if (dir < 0 && idx[i] == 0) continue;
                if (dir > 0 && idx[i] + 1 >= res) continue;
                std::vector<unsigned> nb = idx;
                nb[i] += dir;
                std::size_t lin = to_linear(nb);
                if (visited.count(lin)) continue;
                Box b = cell_box(nb);
                if (!possibly_feasible(sys, b)) continue;
                visited.insert(lin);
                region.push_back(b);
                queue.push_back(nb);
            }
        }
    }
    return region;
}

std::vector<double> box_center_d(const Box& b) {
    std::vector<double> c(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i)
        c[i] = ((b.ranges[i].first + b.ranges[i].second) / 2).convert_to<double>();
    return c;
}

} // namespace

Enclosure reference_minimum(const SemialgSystem& sys, const ComponentSpec& comp,
                            const Rat& target_width, const OracleBudget& budget) {
    const std::size_t n = sys.n();
    if (comp.seed.dim() != n || comp.box.dim() != n)
        throw std::invalid_argument("reference_minimum: dimension mismatch");
    if (!comp.box.contains(comp.seed)) throw oracle_error("seed outside the box");
    for (const auto& f : sys.equalities())
        if (f.evaluate(comp.seed) != 0) throw oracle_error("seed infeasible (equality)");
    for (const auto& f : sys.inequalities())
        if (f.evaluate(comp.seed) < 0) throw oracle_error("seed infeasible (inequality)");

    unsigned res = comp.resolution ? comp.resolution : default_resolution(n);
    std::vector<Box> region = connected_region(sys, comp, res, budget.max_cells);

    ContractData cd = make_contract_data(sys);
    ObjectiveData od = make_objective_data(sys);
    std::vector<Cell> active;
    active.reserve(region.size());
    auto cell_of = [&](Box b) -> std::optional<Cell> {
        auto contracted = contract_cell(cd, std::move(b));
        if (!contracted || !possibly_feasible(sys, *contracted)) return std::nullopt;
        RatInterval iv = eval_objective_sharp(od, *contracted);
        if (auto lag = lagrangian_lower(od, cd, *contracted))
            if (*lag > iv.lo) iv.lo = *lag;
        return Cell{std::move(*contracted), iv};
    };
    for (Box& b : region) {
        if (auto cell = cell_of(std::move(b))) active.push_back(std::move(*cell));
    }
    if (active.empty()) throw oracle_error("no feasible cell survives contraction at the seed");

    // certified incumbent: the seed itself is exactly feasible
    RationalPoint witness = comp.seed;
    Rat wit_value = sys.objective().evaluate(comp.seed);
    Rat cert_hi = wit_value;
    bool certified = true;

    // cells whose interval minimum cannot undercut the incumbent by more than
    // the target width are frozen; they still bound the final enclosure
    bool have_suspended = false;
    Rat suspended_lo = 0;

    const bool debug = std::getenv("POLYMIN_ORACLE_DEBUG") != nullptr;
    for (unsigned round = 0; round < budget.max_rounds; ++round) {
        Rat lo = cert_hi;
        bool have_lo = false;
        std::size_t best = active.size();
        for (std::size_t i = 0; i < active.size(); ++i) {
            if (!have_lo || active[i].g_iv.lo < lo) {
                lo = active[i].g_iv.lo;
                best = i;
                have_lo = true;
            }
        }
        if (have_suspended && (!have_lo || suspended_lo < lo)) lo = suspended_lo;
        if (debug)
            std::fprintf(stderr, "round %u: active=%zu lo=%.10f cert_hi=%.10f\n", round,
                         active.size(), lo.convert_to<double>(),
                         cert_hi.convert_to<double>());
        if (cert_hi - lo <= target_width || !have_lo) {
            // outward dyadic rounding keeps reported endpoints small while
            // preserving the enclosure; precision stays well inside the width
            unsigned prec = 16;
            Rat w = target_width;
            while (w < 1 && prec < 2048) {
                w *= 2;
                prec += 1;
            }
            prec += 16;
            Rat final_lo = round_dyadic(std::min(lo, wit_value), prec, false);
            Rat final_hi = round_dyadic(cert_hi, prec, true);
            return {final_lo, final_hi, witness, certified};
        }
        // try to improve the incumbent from the most promising cell
        CertOutcome c = certify_from(sys, box_center_d(active[best].box));
        if (c.ok && c.value_hi < cert_hi) {
            cert_hi = c.value_hi;
            witness = c.witness;
            wit_value = c.value;
            certified = c.certified;
        }
        // split, contract, prune, suspend
        struct Task {
            Box box;
        };
        std::vector<Task> tasks;
        tasks.reserve(active.size() * 2);
        for (Cell& cell : active) {
            if (cell.g_iv.lo > cert_hi) continue;  // cannot contain the minimum
            std::size_t axis = 0;
            Rat wmax = cell.box.ranges[0].second - cell.box.ranges[0].first;
            for (std::size_t i = 1; i < n; ++i) {
                Rat w = cell.box.ranges[i].second - cell.box.ranges[i].first;
                if (w > wmax) {
                    wmax = w;
                    axis = i;
                }
            }
            Rat mid = (cell.box.ranges[axis].first + cell.box.ranges[axis].second) / 2;
            for (int half = 0; half < 2; ++half) {
                Box b = cell.box;
                if (half == 0) b.ranges[axis].second = mid;
                else b.ranges[axis].first = mid;
                tasks.push_back({std::move(b)});
            }
        }
        std::vector<std::optional<Cell>> results(tasks.size());
        parallel_for(tasks.size(), budget.jobs, [&](std::size_t i) {
            results[i] = cell_of(std::move(tasks[i].box));
        });
        std::vector<Cell> next;
        for (auto& r : results) {
            if (!r) continue;
            if (r->g_iv.lo > cert_hi) continue;
            if (r->g_iv.lo >= cert_hi - target_width) {
                if (!have_suspended || r->g_iv.lo < suspended_lo) suspended_lo = r->g_iv.lo;
                have_suspended = true;
                continue;
            }
            next.push_back(std::move(*r));
        }
        if (next.size() > budget.max_cells)
            throw oracle_error("active cell count exceeds the cell budget");
        active = std::move(next);
    }
    throw oracle_error("refinement budget exhausted before reaching the target width");
}

// ---------------------------------------------------------------------------

SemialgSystem product_system(const SemialgSystem& a, const SemialgSystem& b) {
    if (a.n() != b.n()) throw std::invalid_argument("product_system: variable counts differ");
    const std::size_t n = a.n();
    auto lift_left = [&](IntPolynomial p) {
        for (std::size_t i = 0; i < n; ++i) p = p.insert_var(p.num_vars());
        return p;
    };
    auto lift_right = [&](IntPolynomial p) {
        for (std::size_t i = 0; i < n; ++i) p = p.insert_var(0);
        return p;
    };
    std::vector<IntPolynomial> eqs, ineqs;
    for (const auto& f : a.equalities()) eqs.push_back(lift_left(f));
    for (const auto& f : b.equalities()) eqs.push_back(lift_right(f));
    for (const auto& f : a.inequalities()) ineqs.push_back(lift_left(f));
    for (const auto& f : b.inequalities()) ineqs.push_back(lift_right(f));
    IntPolynomial dist(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        IntPolynomial diff =
            IntPolynomial::variable(2 * n, i) - IntPolynomial::variable(2 * n, n + i);
        dist = dist + diff * diff;
    }
    unsigned d = std::max(a.d(), b.d());
    return SemialgSystem(2 * n, std::move(eqs), std::move(ineqs), std::move(dist), d);
}

std::pair<Rat, Rat> sqrt_enclosure(const Rat& v, unsigned prec_bits) {
    if (v < 0) throw std::invalid_argument("sqrt_enclosure: negative argument");
    if (v == 0) return {0, 0};
    Int scale = int_pow(2, 2 * prec_bits);
    Int scaled = (numerator(v) * scale) / denominator(v);  // floor
    Int root = sqrt(scaled);                               // floor sqrt
    return {Rat(root, int_pow(2, prec_bits)), Rat(root + 1, int_pow(2, prec_bits))};
}

Enclosure separation_oracle(const SemialgSystem& sys_a, const SemialgSystem& sys_b,
                            const ComponentSpec& comp_a, const ComponentSpec& comp_b,
                            const Rat& target_width, const OracleBudget& budget) {
    SemialgSystem prod = product_system(sys_a, sys_b);
    ComponentSpec comp;
    comp.seed.coords = comp_a.seed.coords;
    comp.seed.coords.insert(comp.seed.coords.end(), comp_b.seed.coords.begin(),
                            comp_b.seed.coords.end());
    comp.box.ranges = comp_a.box.ranges;
    comp.box.ranges.insert(comp.box.ranges.end(), comp_b.box.ranges.begin(),
                           comp_b.box.ranges.end());
    comp.resolution = std::max(comp_a.resolution, comp_b.resolution);

    Enclosure sq = reference_minimum(prod, comp, target_width * target_width, budget);
    if (sq.lo < 0) sq.lo = 0;  // the squared distance is nonnegative by construction

    unsigned prec = 8;
    {
        // precision so that sqrt rounding stays below target_width / 4
        Rat w = target_width;
        while (Rat(1, int_pow(2, prec)) > w / 4 && prec < 512) prec += 8;
    }
    auto [rlo, unused_hi] = sqrt_enclosure(sq.lo, prec);
    auto [unused_lo, rhi] = sqrt_enclosure(sq.hi, prec);
    Enclosure out;
    out.lo = rlo;
    out.hi = rhi;
    out.witness = sq.witness;
    out.witness_certified = sq.witness_certified;
    return out;
}

ExampleFamily example_family(std::size_t n, unsigned d, const Int& H) {
    if (n < 2 || d < 2 || d % 2 != 0 || H < 2)
        throw std::invalid_argument("example_family: need n >= 2, even d >= 2, H >= 2");
    std::vector<IntPolynomial> eqs;
    // f_1 = H x_1 - 1
    eqs.push_back(IntPolynomial::variable(n, 0) * H - IntPolynomial::constant(n, 1));
    // f_i = x_i - x_{i-1}^d, 2 <= i <= n-1
    for (std::size_t i = 2; i + 1 <= n; ++i)
        eqs.push_back(IntPolynomial::variable(n, i - 1) -
                      IntPolynomial::variable(n, i - 2, d));
    // f_n = x_n^2 - x_{n-1}^d
    eqs.push_back(IntPolynomial::variable(n, n - 1, 2) -
                  IntPolynomial::variable(n, n - 2, d));

    ExampleFamily fam{
        SemialgSystem(n, std::move(eqs), {}, IntPolynomial::variable(n, n - 1), d),
        RationalPoint{},
        RationalPoint{},
        Rat(0),
        PowerExpr()};

    // p = (H^-1, H^-d, ..., H^{-d^{n-2}}, H^{-d^{n-1}/2})
    std::vector<Rat> pc(n);
    Int e = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        pc[i] = Rat(Int(1), int_pow(H, e.convert_to<unsigned long>()));
        e *= d;
    }
    // e = d^{n-1}; the last coordinate uses exponent d^{n-1}/2 (d is even)
    Int half = e / 2;
    pc[n - 1] = Rat(Int(1), int_pow(H, half.convert_to<unsigned long>()));
    std::vector<Rat> qc = pc;
    qc[n - 1] = -qc[n - 1];
    fam.p = RationalPoint{pc};
    fam.q = RationalPoint{qc};
    for (const auto& f : fam.sys.equalities()) {
        if (f.evaluate(fam.p) != 0 || f.evaluate(fam.q) != 0)
            throw std::logic_error("example_family: solution points do not verify");
    }
    fam.distance = Rat(2) * pc[n - 1];
    fam.distance_expr.mul(2, 1).mul(H, Rat(-half));
    return fam;
}

ExampleSeparation example_separation(std::size_t n, unsigned d, const Int& H) {
    ExampleFamily fam = example_family(n, d, H);
    IntPolynomial xn = IntPolynomial::variable(n, n - 1);
    SemialgSystem sys1(n, fam.sys.equalities(), {xn}, fam.sys.objective(), fam.sys.d());
    SemialgSystem sys2(n, fam.sys.equalities(), {-xn}, fam.sys.objective(), fam.sys.d());

    Rat delta = fam.p.coords[n - 1] / 2;
    auto make_comp = [&](const RationalPoint& pt) {
        ComponentSpec c;
        c.seed = pt;
        c.box.ranges.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            c.box.ranges[i] = {pt.coords[i] - delta, pt.coords[i] + delta};
        c.resolution = 2;
        return c;
    };
    return {std::move(sys1), std::move(sys2), make_comp(fam.p), make_comp(fam.q),
            fam.distance, fam.distance_expr};
}

// ---------------------------------------------------------------------------

std::vector<KktPoint> enumerate_kkt(const SemialgSystem& sys, const ComponentSpec& comp,
                                    const OracleBudget& budget) {
    (void)budget;
    const std::size_t n = sys.n();
    const std::size_t m = sys.m();
    std::vector<KktPoint> out;

    // subsets S of {1..m} with #S <= n; sigma is degenerate at t = 0 and
    // reported as all '+'
    std::vector<std::vector<std::size_t>> subsets;
    {
        std::vector<std::size_t> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t next) {
            if (cur.size() <= n) subsets.push_back(cur);
            if (cur.size() == std::min(n, m)) return;
            for (std::size_t i = next; i <= m; ++i) {
                cur.push_back(i);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(1);
    }

    unsigned res = comp.resolution ? comp.resolution : default_resolution(n);
    res = std::max(res, 4u);

    for (const auto& S : subsets) {
        const std::size_t s = S.size();
        // equations: f_i (i in S) + minors of the stacked gradient matrix
        std::vector<IntPolynomial> eqs;
        for (std::size_t i : S) eqs.push_back(sys.constraint(i));
        if (s < n) {
            // gradient matrix rows: grad g, grad f_i
            std::vector<std::vector<IntPolynomial>> rows;
            {
                std::vector<IntPolynomial> gr;
                for (std::size_t j = 0; j < n; ++j)
                    gr.push_back(sys.objective().partial_derivative(j));
                rows.push_back(std::move(gr));
            }
            for (std::size_t i : S) {
                std::vector<IntPolynomial> gr;
                for (std::size_t j = 0; j < n; ++j)
                    gr.push_back(sys.constraint(i).partial_derivative(j));
                rows.push_back(std::move(gr));
            }
            // all (s+1)x(s+1) column minors, lexicographic column subsets
            std::vector<std::size_t> colsel(s + 1);
            std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                                    std::size_t next) {
                if (pos == s + 1) {
                    std::vector<std::vector<IntPolynomial>> mm(s + 1);
                    for (std::size_t r = 0; r <= s; ++r)
                        for (std::size_t c = 0; c <= s; ++c)
                            mm[r].push_back(rows[r][colsel[c]]);
                    eqs.push_back(poly_det(mm));
                    return;
                }
                for (std::size_t c = next; c < n; ++c) {
                    colsel[pos] = c;
                    rec(pos + 1, c + 1);
                }
            };
            rec(0, 0);
        }
        if (eqs.size() < n) continue;  // cannot pin down isolated points
        std::vector<IntPolynomial> square(eqs.begin(), eqs.begin() + n);

        // dense start grid
        std::vector<std::vector<double>> found;
        std::vector<unsigned> idx(n, 0);
        bool done = false;
        while (!done) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) {
                Rat lo = comp.box.ranges[i].first, hi = comp.box.ranges[i].second;
                x[i] = (lo + (hi - lo) * Int(2 * idx[i] + 1) / Int(2 * res))
                           .convert_to<double>();
            }
            // Newton on the square subsystem
            bool conv = false;
            for (int it = 0; it < 60; ++it) {
                std::vector<double> fv(n);
                double resid = 0;
                for (std::size_t r = 0; r < n; ++r) {
                    fv[r] = eval_d(square[r], x);
                    resid = std::max(resid, std::fabs(fv[r]));
                }
                if (resid < 1e-12) {
                    conv = true;
                    break;
                }
                std::vector<std::vector<double>> a(n, std::vector<double>(n));
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c)
                        a[r][c] = eval_d(square[r].partial_derivative(c), x);
                std::vector<double> step = fv;
                if (!solve_d(a, step)) break;
                double scale = 1.0;
                for (std::size_t c = 0; c < n; ++c)
                    if (std::fabs(step[c]) > 1.0) scale = std::min(scale, 1.0 / std::fabs(step[c]));
                for (std::size_t c = 0; c < n; ++c) x[c] -= scale * step[c];
                if (!std::isfinite(x[0])) break;
            }
            if (conv) {
                // all equations (including unused minors) must vanish
                bool all_zero = true;
                for (const auto& e : eqs)
                    if (std::fabs(eval_d(e, x)) > 1e-8) all_zero = false;
                bool inside = true;
                for (std::size_t i = 0; i < n; ++i) {
                    double lo = comp.box.ranges[i].first.convert_to<double>();
                    double hi = comp.box.ranges[i].second.convert_to<double>();
                    if (x[i] < lo - 1e-9 || x[i] > hi + 1e-9) inside = false;
                }
                if (all_zero && inside) {
                    bool dup = false;
                    for (const auto& y : found) {
                        double dmax = 0;
                        for (std::size_t i = 0; i < n; ++i)
                            dmax = std::max(dmax, std::fabs(y[i] - x[i]));
                        if (dmax < 1e-7) dup = true;
                    }
                    if (!dup) found.push_back(x);
                }
            }
            // advance the grid index
            done = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (++idx[i] < res) {
                    done = false;
                    break;
                }
                idx[i] = 0;
            }
        }

        for (const auto& x : found) {
            KktPoint kp;
            kp.sel.S = S;
            kp.sel.sigma.assign(S.size(), 1);
            std::vector<Rat> w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = dyadic_of(x[i], 60);
            kp.pt = RationalPoint{w};
            kp.value = sys.objective().evaluate(kp.pt);
            Rat tol = Rat(1, int_pow(2, 20));
            Rat maxres = 0;
            for (std::size_t i : S) maxres = std::max(maxres, abs_rat(sys.constraint(i).evaluate(kp.pt)));
            kp.max_residual = maxres;
            bool feas = maxres <= tol;
            for (std::size_t i = 1; i <= m; ++i) {
                if (std::find(S.begin(), S.end(), i) != S.end()) continue;
                Rat v = sys.constraint(i).evaluate(kp.pt);
                if (sys.is_equality_index(i)) {
                    if (abs_rat(v) > tol) feas = false;
                } else if (v < -tol) {
                    feas = false;
                }
            }
            kp.feasible = feas;
            out.push_back(std::move(kp));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const KktPoint& a, const KktPoint& b) { return a.value < b.value; });
    return out;
}

} // namespace polymin
