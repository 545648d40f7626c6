#ifndef POLYMIN_PERTURB_HPP
#define POLYMIN_PERTURB_HPP

#include <optional>
#include <vector>

#include "polymin/linalg.hpp"
#include "polymin/poly.hpp"

namespace polymin {

// Parameter summary a bound computation should be based on. Normally derived
// from the system itself; ball-compactified systems keep the summary of the
// original system here.
struct BoundBasis {
    std::size_t n, m;
    unsigned d;
    Int H;
};

// T = { x in R^n | f_1 = ... = f_l = 0, f_{l+1} >= 0, ..., f_m >= 0 }
// together with the objective g and the derived parameter summary.
class SemialgSystem {
public:
    // d_override, when given, must be even and at least every degree present.
    SemialgSystem(std::size_t n, std::vector<IntPolynomial> equalities,
                  std::vector<IntPolynomial> inequalities, IntPolynomial objective,
                  std::optional<unsigned> d_override = std::nullopt);

    std::size_t n() const { return n_; }
    std::size_t l() const { return equalities_.size(); }
    std::size_t m() const { return equalities_.size() + inequalities_.size(); }
    const std::vector<IntPolynomial>& equalities() const { return equalities_; }
    const std::vector<IntPolynomial>& inequalities() const { return inequalities_; }
    // 1-based, following f_1 ... f_m
    const IntPolynomial& constraint(std::size_t i) const;
    bool is_equality_index(std::size_t i) const { return i >= 1 && i <= l(); }
    const IntPolynomial& objective() const { return objective_; }

    unsigned d() const { return d_; }
    const Int& H() const { return H_; }
    unsigned d0() const { return d0_; }
    const Int& H0() const { return H0_; }

    const std::optional<BoundBasis>& bound_basis() const { return bound_basis_; }
    void set_bound_basis(BoundBasis b) { bound_basis_ = std::move(b); }

private:
    std::size_t n_;
    std::vector<IntPolynomial> equalities_, inequalities_;
    IntPolynomial objective_;
    unsigned d_, d0_;
    Int H_, H0_;
    std::optional<BoundBasis> bound_basis_;
};

// (m+1) x (n+1) integer matrix with every square submatrix nonsingular and
// entries in (0, 2(n+m)]. Row 0 belongs to the objective, rows 1..m to the
// constraints; column 0 is the constant-term column.
struct PerturbationMatrix {
    IntMatrix entries;
    unsigned long prime_used;

    const Int& a(std::size_t i, std::size_t j) const { return entries.at(i, j); }
};

// Smallest prime p with n+m+2 <= p <= 2n+2m+1.
unsigned long bertrand_prime(std::size_t n, std::size_t m);

PerturbationMatrix build_matrix_A(std::size_t n, std::size_t m);

// Exhaustive check that every square submatrix is nonsingular.
bool all_submatrices_nonsingular(const IntMatrix& m);

// Active-constraint selection: S subset of {1..m} with a sign per element;
// inequality indices must carry '+'.
struct SubsetSelector {
    std::vector<std::size_t> S;  // 1-based, strictly increasing
    std::vector<int> sigma;      // +1 / -1, aligned with S

    std::size_t size() const { return S.size(); }
    void validate(const SemialgSystem& sys) const;
    std::string to_string() const;
};

// tilde f_i = sum_j a_ij x_j^d + a_i0  (row i of A); positive on all of R^n.
IntPolynomial tilde_constraint(std::size_t i, const PerturbationMatrix& A, std::size_t n,
                               unsigned d);
IntPolynomial tilde_objective(const PerturbationMatrix& A, std::size_t n, unsigned d);

// Layouts used by the families below.
VarLayout perturbed_layout(std::size_t n);                        // [t, x1..xn]
VarLayout homogenized_layout(std::size_t n);                      // [t0, t, x0..xn]
VarLayout lagrange_layout(std::size_t n, const SubsetSelector&);  // + [lam0, lam_i]
VarLayout upoly_layout(std::size_t n);                            // [U, x0..xn]

struct PerturbedFamily {
    std::vector<ParamPolynomial> f_plus;   // F_i^+, i = 1..m
    std::vector<ParamPolynomial> f_minus;  // F_i^-, i = 1..l
    ParamPolynomial big_g;                 // G = g + t*tilde_g
};

PerturbedFamily perturbed_family(const SemialgSystem& sys, const PerturbationMatrix& A);

struct HomogenizedFamily {
    std::vector<ParamPolynomial> f_plus;   // Fbar_i^+, i = 1..m
    std::vector<ParamPolynomial> f_minus;  // Fbar_i^-, i = 1..l
};

HomogenizedFamily homogenized_family(const SemialgSystem& sys, const PerturbationMatrix& A);

// The n polynomials Gbar_{S,sigma,j}, multihomogeneous of degree 1 in
// (t0,t), d-1 in (x0..xn) and 1 in (lam0, lam_i).
std::vector<ParamPolynomial> lagrange_family(const SemialgSystem& sys,
                                             const PerturbationMatrix& A,
                                             const SubsetSelector& sel);

// P(U, x0, x) = U x0^d0 - h(g)_d0
ParamPolynomial u_polynomial(const SemialgSystem& sys);

// Adds the ball constraint (M+1)^2 - sum x_i^2 >= 0 and pins the bound basis
// to the original system's parameters.
SemialgSystem compactify(const SemialgSystem& sys, const Rat& M);

// Membership in T_t = { F_i^+(t,.) >= 0 for all i, F_i^-(t,.) <= 0 for i <= l }.
bool membership_T_t(const SemialgSystem& sys, const PerturbationMatrix& A, const Rat& t,
                    const RationalPoint& pt);

} // namespace polymin

#endif
