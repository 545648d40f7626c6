#ifndef POLYMIN_ELIMINATION_HPP
#define POLYMIN_ELIMINATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "polymin/bounds.hpp"
#include "polymin/perturb.hpp"
#include "polymin/upoly.hpp"

namespace polymin {

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct degeneracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ceiling_violation_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct Budget {
    std::size_t max_matrix_dim = 3000;
    std::size_t max_grid_points = 100000;
    unsigned jobs = 1;
};

// The n+s+1 polynomials {P; Fbar_i^{sigma_i}, i in S; Gbar_{S,sigma,j}} over
// the common layout [t0, t, U, x0..xn, lam0, lam_{i in S}], with their
// bidegree tags in ((x0..xn), (lam0, lam)).
struct ResultantSystem {
    std::size_t n;
    unsigned d, d0;
    SubsetSelector sel;
    VarLayout layout;
    ParamPolynomial p_poly;                 // bidegree (d0, 0)
    std::vector<ParamPolynomial> f_polys;   // bidegree (d, 0), one per i in S
    std::vector<ParamPolynomial> g_polys;   // bidegree (d-1, 1), j = 1..n
};

ResultantSystem build_resultant_system(const SemialgSystem& sys, const PerturbationMatrix& A,
                                       const SubsetSelector& sel);

// R in Z[t0, t, U], homogeneous of degree s*M2 + n*M3 in (t0, t);
// R = t^e * R_tilde with t not dividing R_tilde.
struct ParamResultant {
    IntPolynomial R;        // over [t0, t, U]
    unsigned e = 0;         // the stripped t-power
    IntPolynomial R_tilde;  // R / t^e
    Int deg_tt;             // homogeneity degree s*M2 + n*M3
    Int M1;                 // ceiling for deg_U
    SubsetSelector sel;
};

// layout of ParamResultant polynomials
VarLayout resultant_layout();

// Exact parametric resultant (up to sign), via reduction to a classical
// projective resultant and Macaulay-quotient evaluation on an interpolation
// grid. Throws budget_error / degeneracy_error per the guard contract.
ParamResultant multihomog_resultant(const ResultantSystem& rs, const Budget& budget = {});

// The engine's per-point primitive: the classical projective resultant of
// n+1 integer forms in n+1 variables (exact, fixed sign convention), by
// Macaulay quotient with a diagonal generalized-characteristic-polynomial
// fallback when the extraneous minor vanishes.
Int classical_resultant_value(const std::vector<IntPolynomial>& forms);

ParamResultant strip_t_power(const ParamResultant& pr);

struct CertificatePoly {
    UPoly q;                  // Q_{S,sigma}(U)
    SubsetSelector provenance;
    Int ceiling_degree;       // M1
    Int ceiling_height;       // M_{S,sigma}
};

// Q = R_tilde(1, 0, U); enforces the nonzero / degree / height contract.
CertificatePoly q_poly(const ParamResultant& pr, const BoundParams& params);

struct CandidateSet {
    std::vector<CertificatePoly> certificates;
    UPoly squarefree_product;  // squarefree part of the product of all Q
    std::vector<RootInterval> root_intervals;
};

// All admissible (S, sigma) with #S <= min(n, m), sigma forced to + on
// inequality indices. If the minimum of g over a compact component is xi,
// some returned certificate vanishes at xi.
CandidateSet candidate_minima(const SemialgSystem& sys, const PerturbationMatrix& A,
                              const Budget& budget = {});

std::vector<SubsetSelector> enumerate_selectors(const SemialgSystem& sys);

// A root interval of some certificate meeting [lo, hi], refined below
// refine_width, together with the degree of the squarefree factor the root
// belongs to (1 with the exact value when the root is rational).
struct RootMatch {
    std::size_t cert_index;
    RootInterval interval;
    Int factor_degree;
    std::optional<Rat> rational_root;
};

std::optional<RootMatch> match_enclosure(const CandidateSet& cand, const Rat& lo,
                                         const Rat& hi, const Rat& refine_width);

// Checks on the (t0,t) = (0,1) limit system: solution structure per subset
// J of vanishing x-coordinates.
struct LimitCaseReport {
    std::vector<std::size_t> J;          // subset of {1..n}
    int kind;                            // -1: #J < n-s, 0: #J = n-s, +1: #J > n-s
    bool check_passed;
    Int affine_count;                    // d^s in the square case, else 0
};

struct LimitSystemReport {
    Int total_affine_solutions;
    bool no_solutions_at_infinity;
    bool all_checks_passed;
    std::vector<LimitCaseReport> cases;
};

LimitSystemReport limit_system_solutions(const PerturbationMatrix& A, const SubsetSelector& sel,
                                         std::size_t n, unsigned d);

// Simplest rational (smallest denominator, then smallest |numerator|) in
// [lo, hi]; used to pin exact rational roots.
Rat simplest_rational_in(const Rat& lo, const Rat& hi);

} // namespace polymin

#endif
