#ifndef POLYMIN_BOUNDS_HPP
#define POLYMIN_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "polymin/certlog.hpp"
#include "polymin/perturb.hpp"

namespace polymin {

struct BoundParams {
    std::size_t n, m, l, s;
    unsigned d, d0;
    Int H, H0;

    Int H_tilde() const;  // max(H, 2n+2m)
    void validate() const;

    // Parameter summary for bound formulas. A ball-compactified system keeps
    // reporting the bounds of the original system; ceiling checks on actual
    // resultant inputs pass use_basis = false.
    static BoundParams from_system(const SemialgSystem& sys, std::size_t s,
                                   bool use_basis = true);
};

// Symbolic product prod bases[k]^exps[k] with positive integer bases and
// rational exponents. Bound values are kept in this form; expanding them is
// usually infeasible.
class PowerExpr {
public:
    PowerExpr() = default;
    static PowerExpr one() { return PowerExpr(); }

    PowerExpr& mul(const Int& base, const Rat& exp);
    PowerExpr operator*(const PowerExpr& o) const;
    PowerExpr pow(const Rat& e) const;
    PowerExpr squared() const { return pow(2); }

    const std::vector<std::pair<Int, Rat>>& factors() const { return factors_; }
    bool integer_exponents() const;

    // pairwise-coprime base form; equal values get identical canonical forms
    PowerExpr canonical() const;
    bool equals(const PowerExpr& o) const;

    // exact rational value when exponents are integers and the result fits
    // in max_bits bits
    std::optional<Rat> materialize(unsigned long max_bits) const;

    Enc log2(unsigned prec_bits) const;

    std::string to_string() const;

private:
    std::vector<std::pair<Int, Rat>> factors_;
};

struct BezoutNumbers {
    Int M1, M2, M3;
};
struct SupportSizes {
    Int N1, N2, N3;
};

// 2^{n-1} d^n
Int degree_bound(std::size_t n, unsigned d);

// (2^{4-n/2} Htilde d^n)^{-n 2^n d^n}
PowerExpr magnitude_bound(const BoundParams& p);

// (2^{4-n} Htilde d^{2n})^{-n 2^{2n} d^{2n}}, Htilde = max(H, 4n+2m1+2m2)
PowerExpr separation_bound(std::size_t n, unsigned d, const Int& H, std::size_t m1,
                           std::size_t m2);

// M1 = C(n,s) d^s (d-1)^{n-s}; M2 = C(n,s) d0 d^{s-1} (d-1)^{n-s} (0 when
// s = 0); M3 = C(n-1,s) d0 d^s (d-1)^{n-s-1} (0 when s = n).
BezoutNumbers bezout_numbers(std::size_t n, std::size_t s, unsigned d, unsigned d0);

// N1 = C(d0+n,n), N2 = C(d+n,n), N3 = C(d-1+n,n)(s+1)
SupportSizes support_sizes(std::size_t n, std::size_t s, unsigned d, unsigned d0);

// The coefficient ceiling M_{S,sigma} as an explicit integer. Throws
// std::range_error when the value would not fit max_bits bits.
Int coefficient_bound_M(const BoundParams& p, unsigned long max_bits = 1u << 22);

// Certified enclosure of log2(M_{S,sigma}); total on the validated domain.
Enc coefficient_bound_log2(const BoundParams& p, unsigned prec_bits);

// M_{S,sigma} <= (2^{4-n/2} Htilde d^n)^{n 2^n d^n}, certified.
bool ceiling_consistency(const BoundParams& p);

struct NamedCheck {
    std::string name;
    bool holds;
};

// The auxiliary inequalities from the main degree/magnitude proof, each
// evaluated exactly (transcendental constants via certified enclosures).
std::vector<NamedCheck> proof_inequalities(const BoundParams& p);

// Exact trichotomy of |value| against a positive bound given as PowerExpr:
// -1 below, 0 equal, +1 above. value must be nonzero.
int compare_abs_to_bound(const Rat& value, const PowerExpr& bound);

struct BoundComponents {
    std::size_t s;
    Int M1, M2, M3, N1, N2, N3;
    std::optional<Int> M_exact;  // absent when too large to expand
    Enc M_log2;
};

struct BoundReport {
    BoundParams params;
    Int deg_bound;
    PowerExpr magnitude;
    Enc magnitude_log2;
    std::vector<BoundComponents> per_s;
};

BoundReport make_bound_report(const SemialgSystem& sys);

} // namespace polymin

#endif
