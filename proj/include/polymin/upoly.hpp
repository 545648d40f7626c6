#ifndef POLYMIN_UPOLY_HPP
#define POLYMIN_UPOLY_HPP

#include <utility>
#include <vector>

#include "polymin/numeric.hpp"

namespace polymin {

// Dense univariate polynomial over Z, coefficients low-to-high, no trailing
// zero coefficients.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UPoly constant(const Int& v) { return UPoly({v}); }

    const std::vector<Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is reported as -1 here (internal use)
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Int& leading() const { return c_.back(); }
    Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }

    Int height() const;
    Int content() const;
    UPoly primitive_part() const;

    UPoly derivative() const;
    Rat evaluate(const Rat& x) const;
    Int evaluate_int(const Int& x) const;
    int sign_at(const Rat& x) const;

    UPoly operator*(const UPoly& o) const;
    UPoly operator*(const Int& k) const;
    UPoly operator+(const UPoly& o) const;
    UPoly operator-() const;
    bool operator==(const UPoly& o) const { return c_ == o.c_; }

    std::string to_string(const std::string& var = "U") const;

private:
    std::vector<Int> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

// A real-root isolating interval with rational endpoints. lo == hi marks an
// exact rational root; otherwise the polynomial changes sign on [lo, hi] and
// contains exactly one root of the squarefree part in the open interval.
struct RootInterval {
    Rat lo, hi;
    bool is_point() const { return lo == hi; }
    Rat width() const { return hi - lo; }
};

// Squarefree part (primitive, over Z) via gcd with the derivative.
UPoly squarefree_part(const UPoly& p);

// Yun squarefree decomposition: returns factors q_1, q_2, ... with
// p ~ prod q_i^i up to a rational constant; each q_i primitive over Z.
std::vector<UPoly> squarefree_decomposition(const UPoly& p);

// Cauchy bound: every real root r satisfies |r| <= bound.
Rat cauchy_root_bound(const UPoly& p);

// Disjoint isolating intervals for all real roots of the squarefree part,
// sorted increasingly. p must be nonzero.
std::vector<RootInterval> isolate_real_roots(const UPoly& p);

// Shrink an isolating interval below `width` by sign bisection.
RootInterval refine_root(const UPoly& squarefree, RootInterval iv, const Rat& width);

// Number of distinct real roots in (a, b] via a Sturm chain of the
// squarefree part.
int count_roots_in(const UPoly& squarefree, const Rat& a, const Rat& b);

// Newton-form interpolation through (nodes[i], values[i]); nodes distinct.
std::vector<Rat> interpolate(const std::vector<Rat>& nodes, const std::vector<Rat>& values);

// Exact quotient of univariate rational polynomials; throws when the
// division leaves a remainder.
std::vector<Rat> exact_div(const std::vector<Rat>& num, const std::vector<Rat>& den);

} // namespace polymin

#endif
