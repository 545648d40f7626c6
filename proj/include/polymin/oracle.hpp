#ifndef POLYMIN_ORACLE_HPP
#define POLYMIN_ORACLE_HPP

#include <optional>
#include <vector>

#include "polymin/bounds.hpp"
#include "polymin/perturb.hpp"

namespace polymin {

struct oracle_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Box {
    std::vector<std::pair<Rat, Rat>> ranges;
    std::size_t dim() const { return ranges.size(); }
    bool contains(const RationalPoint& p) const;
};

// A compact connected component, designated by a seed point known to lie on
// it and a bounding box; connectivity is grid connectivity from the seed.
struct ComponentSpec {
    RationalPoint seed;
    Box box;
    unsigned resolution = 0;  // 0: dimension-based default
};

struct Enclosure {
    Rat lo, hi;             // lo <= min over the component <= hi
    RationalPoint witness;  // near-feasible point with g(witness) in [lo, hi]
    bool witness_certified = false;
};

struct OracleBudget {
    std::size_t max_cells = 400000;
    unsigned max_rounds = 4000;
    unsigned jobs = 1;
};

// Interval scan + branch-and-bound enclosure of min g over the grid-connected
// feasible region around the seed. The upper end comes from a certified (or
// exactly checked) feasible point, never from interval suprema alone.
Enclosure reference_minimum(const SemialgSystem& sys, const ComponentSpec& comp,
                            const Rat& target_width, const OracleBudget& budget = {});

struct KktPoint {
    SubsetSelector sel;
    RationalPoint pt;
    Rat value;
    bool feasible;       // inactive constraints hold at the point (to tolerance)
    Rat max_residual;    // largest |f_i| over the active set
};

// Dense-sampling + Newton enumeration of Lagrange critical points per
// admissible (S, sigma); desk scale only.
std::vector<KktPoint> enumerate_kkt(const SemialgSystem& sys, const ComponentSpec& comp,
                                    const OracleBudget& budget = {});

// T1 x T2 in 2n variables with objective sum (x_i - y_i)^2.
SemialgSystem product_system(const SemialgSystem& a, const SemialgSystem& b);

// Distance enclosure between two components via the squared-distance minimum
// on the product system, with a certified rational square root.
Enclosure separation_oracle(const SemialgSystem& sys_a, const SemialgSystem& sys_b,
                            const ComponentSpec& comp_a, const ComponentSpec& comp_b,
                            const Rat& target_width, const OracleBudget& budget = {});

// [lo, hi] with lo^2 <= v <= hi^2 and hi - lo <= 2^-prec_bits; v >= 0
std::pair<Rat, Rat> sqrt_enclosure(const Rat& v, unsigned prec_bits);

// The double-exponential separation family:
//   f_1 = H x_1 - 1, f_i = x_i - x_{i-1}^d (2 <= i <= n-1), f_n = x_n^2 - x_{n-1}^d
// whose zero set is the point pair {p, q} at distance 2 H^{-d^{n-1}/2}.
struct ExampleFamily {
    SemialgSystem sys;       // the n equalities, objective x_n
    RationalPoint p, q;      // the two solutions (exact; d is even)
    Rat distance;            // 2 H^{-d^{n-1}/2}
    PowerExpr distance_expr;
};

ExampleFamily example_family(std::size_t n, unsigned d, const Int& H);

// The family split into two one-point components by the sign of x_n,
// packaged for separation runs.
struct ExampleSeparation {
    SemialgSystem sys1, sys2;
    ComponentSpec comp1, comp2;
    Rat distance;
    PowerExpr distance_expr;
};

ExampleSeparation example_separation(std::size_t n, unsigned d, const Int& H);

} // namespace polymin

#endif
