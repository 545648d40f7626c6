#ifndef POLYMIN_POLY_HPP
#define POLYMIN_POLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polymin/numeric.hpp"

namespace polymin {

// Exponent vector; length is fixed by the ambient polynomial context.
struct Monomial {
    std::vector<unsigned> exps;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
    explicit Monomial(std::vector<unsigned> e) : exps(std::move(e)) {}

    unsigned total_degree() const {
        unsigned d = 0;
        for (unsigned e : exps) d += e;
        return d;
    }
    bool operator==(const Monomial& o) const { return exps == o.exps; }
};

// Graded lexicographic order; fixes canonical term order for printing and maps.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.exps < b.exps;
    }
};

struct RationalPoint {
    std::vector<Rat> coords;

    RationalPoint() = default;
    explicit RationalPoint(std::vector<Rat> c) : coords(std::move(c)) {}
    std::size_t dim() const { return coords.size(); }
};

// Sparse multivariate polynomial over Z. Invariants: no stored zero
// coefficient; every monomial has exponent length num_vars.
class IntPolynomial {
public:
    using TermMap = std::map<Monomial, Int, GradedLexLess>;

    IntPolynomial() : num_vars_(0) {}
    explicit IntPolynomial(std::size_t num_vars) : num_vars_(num_vars) {}

    static IntPolynomial constant(std::size_t num_vars, const Int& c);
    static IntPolynomial variable(std::size_t num_vars, std::size_t j, unsigned exp = 1);
    static IntPolynomial term(std::size_t num_vars, const Int& c, const Monomial& m);

    std::size_t num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Int& c);

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator-() const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator*(const Int& c) const;
    bool operator==(const IntPolynomial& o) const {
        return num_vars_ == o.num_vars_ && terms_ == o.terms_;
    }

    IntPolynomial pow(unsigned e) const;

    // x0^e * p(x1/x0, ..., xn/x0) with x0 prepended as the new first variable.
    IntPolynomial homogenize(unsigned e) const;

    IntPolynomial partial_derivative(std::size_t j) const;

    Rat evaluate(const RationalPoint& pt) const;
    Int evaluate_int(const std::vector<Int>& pt) const;

    Int height() const;
    unsigned total_degree() const;            // throws zero_polynomial_error on 0
    unsigned degree_in(std::size_t j) const;  // 0 for the zero polynomial

    bool is_homogeneous_of_degree(unsigned e) const;
    // Degree in the listed variable slots, jointly; 0 if p = 0.
    unsigned degree_in_vars(const std::vector<std::size_t>& vars) const;
    bool is_homogeneous_in_vars(const std::vector<std::size_t>& vars, unsigned e) const;

    // Substitute variable j := value and drop that slot (num_vars shrinks by 1).
    IntPolynomial specialize(std::size_t j, const Int& value) const;
    // Substitute variable j := value without dropping the slot.
    IntPolynomial substitute(std::size_t j, const Int& value) const;

    // Insert a fresh (unused) variable slot at position j.
    IntPolynomial insert_var(std::size_t j) const;
    // Remove variable slot j; the variable must not occur.
    IntPolynomial drop_var(std::size_t j) const;

    // Exact division by the monomial x_j^e; throws if not divisible.
    IntPolynomial divide_by_var_power(std::size_t j, unsigned e) const;
    // Smallest exponent of x_j across terms (0 for the zero polynomial).
    unsigned min_degree_in(std::size_t j) const;

    // Group terms by their exponents in `vars`: returns (sub-monomial over
    // `vars`) -> coefficient polynomial over the remaining slots, in the
    // order of sub-monomials. Used to read a polynomial as a polynomial in
    // `vars` with polynomial coefficients.
    std::vector<std::pair<Monomial, IntPolynomial>>
    collect(const std::vector<std::size_t>& vars) const;

    std::string to_string(const std::vector<std::string>& var_names = {}) const;

private:
    std::size_t num_vars_;
    TermMap terms_;

    void check_same_vars(const IntPolynomial& o) const;
};

// ---------------------------------------------------------------------------
// Variable layouts: every parametric polynomial carries a layout describing
// the role of each slot, so modules can embed into a common variable space
// without index arithmetic.

enum class VarKind { T0, T, U, X, LAM };

struct VarRole {
    VarKind kind;
    std::size_t index;  // X: 0..n (0 = homogenization var); LAM: 0..s
    bool operator==(const VarRole& o) const { return kind == o.kind && index == o.index; }
};

struct VarLayout {
    std::vector<VarRole> roles;

    std::size_t size() const { return roles.size(); }
    std::optional<std::size_t> find(VarKind k, std::size_t index) const {
        for (std::size_t i = 0; i < roles.size(); ++i)
            if (roles[i].kind == k && roles[i].index == index) return i;
        return std::nullopt;
    }
    std::size_t require(VarKind k, std::size_t index) const;
    std::vector<std::size_t> slots_of_kind(VarKind k) const;
    std::vector<std::string> names() const;
    bool operator==(const VarLayout& o) const { return roles == o.roles; }
};

// Polynomial together with the roles of its variable slots.
struct ParamPolynomial {
    IntPolynomial poly;
    VarLayout layout;
};

// Re-express p (over `from`) in the slots of `to`; every slot of `from`
// must exist in `to` by role.
IntPolynomial embed(const IntPolynomial& p, const VarLayout& from, const VarLayout& to);

// Determinant of a square matrix of polynomials by cofactor expansion.
IntPolynomial poly_det(const std::vector<std::vector<IntPolynomial>>& m);

} // namespace polymin

#endif
