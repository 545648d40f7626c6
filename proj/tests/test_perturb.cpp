#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polymin/perturb.hpp"

using namespace polymin;

namespace {

IntPolynomial x(std::size_t nv, std::size_t j, unsigned e = 1) {
    return IntPolynomial::variable(nv, j, e);
}
IntPolynomial c(std::size_t nv, long v) { return IntPolynomial::constant(nv, v); }

SemialgSystem circle_system() {
    // f1 = x1^2 + x2^2 - 1 (equality), g = x1
    return SemialgSystem(2, {x(2, 0, 2) + x(2, 1, 2) - c(2, 1)}, {}, x(2, 0));
}

} // namespace

TEST_CASE("bertrand prime scan") {
    CHECK(bertrand_prime(2, 1) == 5);
    CHECK(bertrand_prime(2, 2) == 7);
    CHECK(bertrand_prime(3, 3) == 11);
}

TEST_CASE("matrix A worked example n=2 m=1") {
    PerturbationMatrix A = build_matrix_A(2, 1);
    CHECK(A.prime_used == 5);
    // A2 = [[24,12,8],[12,8,6]] mod 5 -> [[4,2,3],[2,3,1]]
    CHECK(A.a(0, 0) == 4);
    CHECK(A.a(0, 1) == 2);
    CHECK(A.a(0, 2) == 3);
    CHECK(A.a(1, 0) == 2);
    CHECK(A.a(1, 1) == 3);
    CHECK(A.a(1, 2) == 1);
    CHECK(all_submatrices_nonsingular(A.entries));
    // entry bound: max entry 4 <= 2(n+m) = 6
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(A.a(i, j) > 0);
            CHECK(A.a(i, j) <= 6);
        }
}

TEST_CASE("matrix A: every submatrix nonsingular for n+m <= 9") {
    for (std::size_t n = 2; n <= 8; ++n) {
        for (std::size_t m = 1; n + m <= 9; ++m) {
            PerturbationMatrix A = build_matrix_A(n, m);
            for (std::size_t i = 0; i <= m; ++i)
                for (std::size_t j = 0; j <= n; ++j) {
                    CHECK(A.a(i, j) > 0);
                    CHECK(A.a(i, j) <= Int(2 * (n + m)));
                }
            CHECK(all_submatrices_nonsingular(A.entries));
        }
    }
}

TEST_CASE("lemma intersections content: n+1 rows of A are nonsingular") {
    // any (n+1) x (n+1) submatrix built from full rows has nonzero determinant
    std::size_t n = 2, m = 3;
    PerturbationMatrix A = build_matrix_A(n, m);
    std::vector<std::vector<std::size_t>> row_choices = {{1, 2, 3}, {0, 1, 2}, {0, 2, 3}};
    for (const auto& rows : row_choices) {
        IntMatrix sub = A.entries.submatrix(rows, {0, 1, 2});
        CHECK(bareiss_det(sub) != 0);
    }
}

TEST_CASE("tilde polynomials") {
    PerturbationMatrix A = build_matrix_A(2, 1);
    // row 1 = (2,3,1): tilde f1 = 3 x1^2 + 1 x2^2 + 2
    IntPolynomial tf = tilde_constraint(1, A, 2, 2);
    CHECK(tf == x(2, 0, 2) * 3 + x(2, 1, 2) + c(2, 2));
    CHECK(tf.evaluate(RationalPoint{{Rat(0), Rat(0)}}) == 2);  // a_10 at the origin
    // row 0 = (4,2,3): tilde g = 2 x1^2 + 3 x2^2 + 4
    IntPolynomial tg = tilde_objective(A, 2, 2);
    CHECK(tg == x(2, 0, 2) * 2 + x(2, 1, 2) * 3 + c(2, 4));
    CHECK(tg.total_degree() == 2);
    CHECK_THROWS_AS(tilde_constraint(1, A, 2, 3), std::invalid_argument);
}

TEST_CASE("tilde positivity at random rational points") {
    PerturbationMatrix A = build_matrix_A(3, 2);
    IntPolynomial tf = tilde_constraint(2, A, 3, 4);
    IntPolynomial tg = tilde_objective(A, 3, 4);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 20);
    for (int rep = 0; rep < 1000; ++rep) {
        RationalPoint pt{{Rat(num(rng), den(rng)), Rat(num(rng), den(rng)),
                          Rat(num(rng), den(rng))}};
        CHECK(tf.evaluate(pt) > 0);
        CHECK(tg.evaluate(pt) > 0);
    }
}

TEST_CASE("system parameter summary is recomputed") {
    SemialgSystem sys = circle_system();
    CHECK(sys.n() == 2);
    CHECK(sys.l() == 1);
    CHECK(sys.m() == 1);
    CHECK(sys.d() == 2);
    CHECK(sys.H() == 1);
    CHECK(sys.d0() == 1);
    CHECK(sys.H0() == 1);
    CHECK_THROWS_AS(SemialgSystem(2, {}, {}, x(2, 0)), std::invalid_argument);  // m = 0
    CHECK_THROWS_AS(SemialgSystem(2, {x(2, 0, 2)}, {}, x(2, 0), 3u), std::invalid_argument);
    CHECK_THROWS_AS(SemialgSystem(2, {x(2, 0, 2)}, {}, c(2, 5)), std::invalid_argument);
}

TEST_CASE("perturbed family") {
    SemialgSystem sys = circle_system();
    PerturbationMatrix A = build_matrix_A(2, 1);
    PerturbedFamily fam = perturbed_family(sys, A);
    REQUIRE(fam.f_plus.size() == 1);
    REQUIRE(fam.f_minus.size() == 1);
    // layout [t, x1, x2]
    IntPolynomial f1 = x(3, 1, 2) + x(3, 2, 2) - c(3, 1);
    IntPolynomial tf1 = x(3, 1, 2) * 3 + x(3, 2, 2) + c(3, 2);
    IntPolynomial t = x(3, 0);
    CHECK(fam.f_plus[0].poly == f1 + t * tf1);
    CHECK(fam.f_minus[0].poly == f1 - t * tf1);
    // t = 0 recovers f_i
    CHECK(fam.f_plus[0].poly.specialize(0, 0) == x(2, 0, 2) + x(2, 1, 2) - c(2, 1));
    // F+ - F- = 2 t tilde_f
    CHECK(fam.f_plus[0].poly - fam.f_minus[0].poly == t * tf1 * 2);
    // G = g + t tilde_g
    CHECK(fam.big_g.poly ==
          x(3, 1) + t * (x(3, 1, 2) * 2 + x(3, 2, 2) * 3 + c(3, 4)));
}

TEST_CASE("homogenized family") {
    SemialgSystem sys = circle_system();
    PerturbationMatrix A = build_matrix_A(2, 1);
    HomogenizedFamily fam = homogenized_family(sys, A);
    REQUIRE(fam.f_plus.size() == 1);
    // layout [t0, t, x0, x1, x2]
    IntPolynomial t0 = x(5, 0), t = x(5, 1);
    IntPolynomial hf = x(5, 3, 2) + x(5, 4, 2) - x(5, 2, 2);
    IntPolynomial ht = x(5, 2, 2) * 2 + x(5, 3, 2) * 3 + x(5, 4, 2);
    CHECK(fam.f_plus[0].poly == t0 * hf + t * ht);
    CHECK(fam.f_minus[0].poly == t0 * hf - t * ht);
    // bihomogeneous: degree 1 in (t0,t), degree d in (x0,x)
    CHECK(fam.f_plus[0].poly.is_homogeneous_in_vars({0, 1}, 1));
    CHECK(fam.f_plus[0].poly.is_homogeneous_in_vars({2, 3, 4}, 2));
    // (t0,t) = (1,0) -> h(f)_d ; (0,1) -> sum a_ij x_j^d
    CHECK(fam.f_plus[0].poly.specialize(1, 0).specialize(0, 1) ==
          x(3, 1, 2) + x(3, 2, 2) - x(3, 0, 2));
    CHECK(fam.f_plus[0].poly.specialize(1, 1).specialize(0, 0) ==
          x(3, 0, 2) * 2 + x(3, 1, 2) * 3 + x(3, 2, 2));
}

TEST_CASE("specialization coherence between families") {
    // homogenized at (t0, x0) = (1, 1) equals perturbed, as an identity in t
    SemialgSystem sys = circle_system();
    PerturbationMatrix A = build_matrix_A(2, 1);
    HomogenizedFamily hf = homogenized_family(sys, A);
    PerturbedFamily pf = perturbed_family(sys, A);
    for (std::size_t i = 0; i < hf.f_plus.size(); ++i) {
        IntPolynomial spec = hf.f_plus[i].poly.specialize(0, 1).specialize(1, 1);
        CHECK(spec == pf.f_plus[i].poly);
    }
    for (std::size_t i = 0; i < hf.f_minus.size(); ++i) {
        IntPolynomial spec = hf.f_minus[i].poly.specialize(0, 1).specialize(1, 1);
        CHECK(spec == pf.f_minus[i].poly);
    }
}

TEST_CASE("lagrange family worked example") {
    SemialgSystem sys = circle_system();
    PerturbationMatrix A = build_matrix_A(2, 1);
    SubsetSelector sel{{1}, {1}};
    auto gs = lagrange_family(sys, A, sel);
    REQUIRE(gs.size() == 2);
    // layout [t0, t, x0, x1, x2, lam0, lam1]
    const std::size_t nv = 7;
    IntPolynomial t0 = x(nv, 0), t = x(nv, 1);
    IntPolynomial X0 = x(nv, 2), X1 = x(nv, 3), X2 = x(nv, 4);
    IntPolynomial L0 = x(nv, 5), L1 = x(nv, 6);
    // G1 = t0 (lam0 x0 - lam1 2 x1) + t 2 x1 (lam0 a01 - lam1 a11), a01=2, a11=3
    IntPolynomial g1 = t0 * (L0 * X0 - L1 * X1 * 2) + t * X1 * (L0 * 2 - L1 * 3) * 2;
    CHECK(gs[0].poly == g1);
    // G2 = t0 (0 - lam1 2 x2) + t 2 x2 (lam0 a02 - lam1 a12), a02=3, a12=1
    IntPolynomial g2 = t0 * (-(L1 * X2 * 2)) + t * X2 * (L0 * 3 - L1) * 2;
    CHECK(gs[1].poly == g2);
    // multihomogeneity: (t0,t) deg 1, x deg d-1, lambda deg 1
    for (const auto& g : gs) {
        CHECK(g.poly.is_homogeneous_in_vars({0, 1}, 1));
        CHECK(g.poly.is_homogeneous_in_vars({2, 3, 4}, 1));
        CHECK(g.poly.is_homogeneous_in_vars({5, 6}, 1));
    }
    // (t0,t) = (1,0): the classical homogenized Lagrange coordinates
    CHECK(gs[0].poly.specialize(1, 0).specialize(0, 1) ==
          x(5, 3) * x(5, 0) - x(5, 4) * x(5, 1) * 2);

    SubsetSelector bad{{1, 1}, {1, 1}};
    CHECK_THROWS_AS(lagrange_family(sys, A, bad), std::invalid_argument);
}

TEST_CASE("u polynomial") {
    SemialgSystem sys = circle_system();
    ParamPolynomial p = u_polynomial(sys);
    // layout [U, x0, x1, x2]; P = U x0 - x1
    CHECK(p.poly == x(4, 0) * x(4, 1) - x(4, 2));

    SemialgSystem sys2(2, {x(2, 0, 2) + x(2, 1, 2) - c(2, 1)}, {},
                       x(2, 0, 2) + x(2, 1, 2));
    ParamPolynomial p2 = u_polynomial(sys2);
    CHECK(p2.poly == x(4, 0) * x(4, 1, 2) - x(4, 2, 2) - x(4, 3, 2));

    // substituting U = g(z), x0 = 1, x = z gives zero
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> v(-4, 4);
    for (int rep = 0; rep < 20; ++rep) {
        Rat z1(v(rng)), z2(v(rng));
        Rat gz = sys2.objective().evaluate(RationalPoint{{z1, z2}});
        CHECK(p2.poly.evaluate(RationalPoint{{gz, Rat(1), z1, z2}}) == 0);
    }
}

TEST_CASE("compactify adds the ball constraint and keeps the bound basis") {
    SemialgSystem sys = circle_system();
    SemialgSystem comp = compactify(sys, Rat(1));
    CHECK(comp.m() == 2);
    CHECK(comp.inequalities().back() == c(2, 4) - x(2, 0, 2) - x(2, 1, 2));
    REQUIRE(comp.bound_basis().has_value());
    CHECK(comp.bound_basis()->n == 2);
    CHECK(comp.bound_basis()->m == 1);
    CHECK(comp.bound_basis()->d == 2);
    CHECK(comp.bound_basis()->H == 1);
    // a point at distance M+2 violates the new constraint
    CHECK(comp.inequalities().back().evaluate(RationalPoint{{Rat(3), Rat(0)}}) < 0);
    CHECK_THROWS_AS(compactify(sys, Rat(-1)), std::invalid_argument);
}

TEST_CASE("membership in T_t") {
    SemialgSystem sys = circle_system();
    PerturbationMatrix A = build_matrix_A(2, 1);
    RationalPoint on_circle{{Rat(1), Rat(0)}};
    RationalPoint outside{{Rat(2), Rat(0)}};
    CHECK(membership_T_t(sys, A, Rat(0), on_circle));
    CHECK_FALSE(membership_T_t(sys, A, Rat(0), outside));
    CHECK_THROWS_AS(membership_T_t(sys, A, Rat(-1), on_circle), std::invalid_argument);

    // nesting: membership at t1 implies membership at t2 >= t1
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-8, 8);
    int checked = 0;
    for (int rep = 0; rep < 400 && checked < 50; ++rep) {
        RationalPoint pt{{Rat(num(rng), 4), Rat(num(rng), 4)}};
        Rat t1(rep % 5, 7), t2 = t1 + Rat(1 + rep % 3, 5);
        if (membership_T_t(sys, A, t1, pt)) {
            ++checked;
            CHECK(membership_T_t(sys, A, t2, pt));
        }
    }
    CHECK(checked > 10);
}
