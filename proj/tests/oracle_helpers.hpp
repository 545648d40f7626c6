// Test-only oracles, kept independent of the elimination engine they check.
#ifndef POLYMIN_TEST_ORACLE_HELPERS_HPP
#define POLYMIN_TEST_ORACLE_HELPERS_HPP

#include <functional>
#include <vector>

#include "polymin/linalg.hpp"
#include "polymin/poly.hpp"

namespace polymin_test {

using namespace polymin;

inline void enum_monomials_deg(std::size_t nvars, unsigned deg,
                               std::vector<Monomial>& out) {
    Monomial cur(nvars);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
        if (pos + 1 == nvars) {
            cur.exps[pos] = left;
            out.push_back(cur);
            cur.exps[pos] = 0;
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur.exps[pos] = e;
            rec(pos + 1, left - e);
        }
        cur.exps[pos] = 0;
    };
    rec(0, deg);
}

// Projective solvability of nvars forms in nvars variables via the effective
// Nullstellensatz rank criterion: with K = sum(deg_i) - (nvars - 1), the system
// has no common zero in P^{nvars-1} iff the degree-K piece of the ideal fills
// the whole degree-K space.
inline bool projective_solvable(const std::vector<IntPolynomial>& polys) {
    const std::size_t nvars = polys.at(0).num_vars();
    unsigned K = 1;
    for (const auto& p : polys) {
        if (p.is_zero()) return true;  // a zero form cuts nothing
        K += p.total_degree() - 1;
    }
    std::vector<Monomial> cols;
    enum_monomials_deg(nvars, K, cols);
    std::map<Monomial, std::size_t, GradedLexLess> col_index;
    for (std::size_t i = 0; i < cols.size(); ++i) col_index.emplace(cols[i], i);

    std::vector<std::vector<Rat>> rows;
    for (const auto& p : polys) {
        std::vector<Monomial> mults;
        enum_monomials_deg(nvars, K - p.total_degree(), mults);
        for (const auto& mu : mults) {
            std::vector<Rat> row(cols.size(), Rat(0));
            for (const auto& [mo, c] : p.terms()) {
                Monomial prod(nvars);
                for (std::size_t v = 0; v < nvars; ++v)
                    prod.exps[v] = mo.exps[v] + mu.exps[v];
                row[col_index.at(prod)] = Rat(c);
            }
            rows.push_back(std::move(row));
        }
    }
    RatMatrix m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) m.at(r, c) = rows[r][c];
    return rat_rank(m) < cols.size();
}

// Sylvester resultant of two binary forms given by coefficient lists indexed
// by the exponent of the second variable.
inline Int sylvester_binary(const std::vector<Int>& a, const std::vector<Int>& b) {
    const std::size_t da = a.size() - 1, db = b.size() - 1;
    IntMatrix m(da + db, da + db);
    for (std::size_t r = 0; r < db; ++r)
        for (std::size_t k = 0; k < a.size(); ++k) m.at(r, r + k) = a[k];
    for (std::size_t r = 0; r < da; ++r)
        for (std::size_t k = 0; k < b.size(); ++k) m.at(db + r, r + k) = b[k];
    return bareiss_det(m);
}

// Coefficients of a binary form in (x0, x2) obtained from a ternary form by
// the substitution x1 = u * x0; index = exponent of x2.
inline std::vector<Int> restrict_to_line(const IntPolynomial& p, const Int& u,
                                         unsigned degree) {
    // p over [x0, x1, x2]
    std::vector<Int> out(degree + 1, Int(0));
    for (const auto& [mo, c] : p.terms()) {
        out.at(mo.exps[2]) += c * int_pow(u, mo.exps[1]);
    }
    return out;
}

} // namespace polymin_test

#endif
