#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polymin/oracle.hpp"

using namespace polymin;

namespace {

IntPolynomial x(std::size_t nv, std::size_t j, unsigned e = 1) {
    return IntPolynomial::variable(nv, j, e);
}
IntPolynomial c(std::size_t nv, long v) { return IntPolynomial::constant(nv, v); }

SemialgSystem circle_system(IntPolynomial objective) {
    return SemialgSystem(2, {x(2, 0, 2) + x(2, 1, 2) - c(2, 1)}, {}, std::move(objective));
}

ComponentSpec circle_comp() {
    ComponentSpec comp;
    comp.seed = RationalPoint{{Rat(1), Rat(0)}};
    comp.box.ranges = {{Rat(-2), Rat(2)}, {Rat(-2), Rat(2)}};
    return comp;
}

const Rat kWidth20 = Rat(1, 1 << 20);

} // namespace

TEST_CASE("reference minimum on the circle, objective x1") {
    SemialgSystem sys = circle_system(x(2, 0));
    Enclosure enc = reference_minimum(sys, circle_comp(), kWidth20);
    CHECK(enc.lo <= -1);
    CHECK(enc.hi >= -1);
    CHECK(enc.hi - enc.lo <= kWidth20);
    // soundness: lo <= g(witness) <= hi exactly
    Rat gw = sys.objective().evaluate(enc.witness);
    CHECK(enc.lo <= gw);
    CHECK(gw <= enc.hi);
    CHECK(enc.witness_certified);
    // witness residual within 2^-40
    Rat resid = abs_rat(sys.equalities()[0].evaluate(enc.witness));
    CHECK(resid <= Rat(1, Int(1) << 40));
}

TEST_CASE("reference minimum on the circle, objective x1^2 + x2^2") {
    SemialgSystem sys = circle_system(x(2, 0, 2) + x(2, 1, 2));
    Enclosure enc = reference_minimum(sys, circle_comp(), kWidth20);
    CHECK(enc.lo <= 1);
    CHECK(enc.hi >= 1);
    CHECK(enc.hi - enc.lo <= kWidth20);
}

TEST_CASE("infeasible seed is rejected") {
    SemialgSystem sys = circle_system(x(2, 0));
    ComponentSpec comp = circle_comp();
    comp.seed = RationalPoint{{Rat(2), Rat(2)}};
    CHECK_THROWS_AS(reference_minimum(sys, comp, kWidth20), oracle_error);
}

TEST_CASE("ellipse minimum") {
    // 4 x1^2 + x2^2 - 4 = 0, objective x2: minimum -2 at (0, -2)
    SemialgSystem sys(2, {x(2, 0, 2) * 4 + x(2, 1, 2) - c(2, 4)}, {}, x(2, 1));
    ComponentSpec comp;
    comp.seed = RationalPoint{{Rat(1), Rat(0)}};
    comp.box.ranges = {{Rat(-3), Rat(3)}, {Rat(-3), Rat(3)}};
    Enclosure enc = reference_minimum(sys, comp, kWidth20);
    CHECK(enc.lo <= -2);
    CHECK(enc.hi >= -2);
    CHECK(enc.hi - enc.lo <= kWidth20);
}

TEST_CASE("half-circle with active inequality at the minimizer") {
    // x1^2 + x2^2 - 1 = 0 and x1 >= 0, objective x2: minimum -1 at (0,-1)
    SemialgSystem sys(2, {x(2, 0, 2) + x(2, 1, 2) - c(2, 1)}, {x(2, 0)}, x(2, 1));
    ComponentSpec comp = circle_comp();
    Enclosure enc = reference_minimum(sys, comp, kWidth20);
    CHECK(enc.lo <= -1);
    CHECK(enc.hi >= -1);
    CHECK(enc.hi - enc.lo <= kWidth20);
    // the witness must satisfy the inequality exactly or within tolerance
    CHECK(sys.inequalities()[0].evaluate(enc.witness) >= -Rat(1, Int(1) << 40));
}

TEST_CASE("kkt enumeration on the circle") {
    SemialgSystem sys = circle_system(x(2, 0));
    auto pts = enumerate_kkt(sys, circle_comp());
    // S = {1} yields (+-1, 0); S = {} yields nothing for g = x1
    bool saw_plus = false, saw_minus = false;
    for (const auto& kp : pts) {
        CHECK(kp.sel.S == std::vector<std::size_t>{1});
        Rat x1 = kp.pt.coords[0], x2 = kp.pt.coords[1];
        if (abs_rat(x1 - 1) < Rat(1, 1000) && abs_rat(x2) < Rat(1, 1000)) saw_plus = true;
        if (abs_rat(x1 + 1) < Rat(1, 1000) && abs_rat(x2) < Rat(1, 1000)) saw_minus = true;
    }
    CHECK(saw_plus);
    CHECK(saw_minus);

    // agreement with the reference minimum
    Enclosure enc = reference_minimum(sys, circle_comp(), kWidth20);
    Rat best;
    bool have = false;
    for (const auto& kp : pts)
        if (kp.feasible && (!have || kp.value < best)) {
            best = kp.value;
            have = true;
        }
    REQUIRE(have);
    CHECK(abs_rat(best - enc.lo) <= Rat(1, 1 << 18));
}

TEST_CASE("kkt: free critical point infeasible for the circle") {
    SemialgSystem sys = circle_system(x(2, 0, 2) + x(2, 1, 2));
    auto pts = enumerate_kkt(sys, circle_comp());
    bool saw_origin = false;
    for (const auto& kp : pts) {
        if (kp.sel.S.empty()) {
            if (abs_rat(kp.pt.coords[0]) < Rat(1, 1000) &&
                abs_rat(kp.pt.coords[1]) < Rat(1, 1000)) {
                saw_origin = true;
                CHECK_FALSE(kp.feasible);
            }
        }
    }
    CHECK(saw_origin);
}

TEST_CASE("separation of two distant unit circles") {
    SemialgSystem a = circle_system(x(2, 0));
    std::vector<IntPolynomial> eq2 = {(x(2, 0) - c(2, 4)) * (x(2, 0) - c(2, 4)) +
                                      x(2, 1, 2) - c(2, 1)};
    SemialgSystem b(2, eq2, {}, x(2, 0));
    ComponentSpec ca = circle_comp();
    ComponentSpec cb;
    cb.seed = RationalPoint{{Rat(5), Rat(0)}};
    cb.box.ranges = {{Rat(2), Rat(6)}, {Rat(-2), Rat(2)}};
    Rat width(1, 1 << 10);
    Enclosure enc = separation_oracle(a, b, ca, cb, width);
    CHECK(enc.lo <= 2);
    CHECK(enc.hi >= 2);
    CHECK(enc.hi - enc.lo <= width);
    // theorem-style sanity: the bound is far below the actual distance
    PowerExpr bound = separation_bound(2, 2, std::max(a.H(), b.H()), a.m(), b.m());
    CHECK(compare_abs_to_bound(enc.lo, bound) >= 0);
}

TEST_CASE("identical components produce a zero distance enclosure") {
    SemialgSystem a = circle_system(x(2, 0));
    Enclosure enc = separation_oracle(a, a, circle_comp(), circle_comp(), Rat(1, 1 << 8));
    CHECK(enc.lo == 0);
    CHECK(enc.hi <= Rat(1, 1 << 8));
}

TEST_CASE("example family worked values") {
    ExampleFamily f224 = example_family(2, 2, 4);
    CHECK(f224.p.coords == std::vector<Rat>{Rat(1, 4), Rat(1, 4)});
    CHECK(f224.q.coords == std::vector<Rat>{Rat(1, 4), Rat(-1, 4)});
    CHECK(f224.distance == Rat(1, 2));
    CHECK(f224.sys.H() == 4);  // height of H x1 - 1
    CHECK(f224.sys.equalities()[1].total_degree() == 2);

    ExampleFamily f322 = example_family(3, 2, 2);
    CHECK(f322.distance == Rat(1, 2));  // 2 * 2^-2
    CHECK(f322.p.coords == std::vector<Rat>{Rat(1, 2), Rat(1, 4), Rat(1, 4)});

    // closed form as a symbolic power product: 2 * H^,-d^{n-1}/2
    PowerExpr expect;
    expect.mul(2, 1).mul(4, -1);
    CHECK(f224.distance_expr.equals(expect));

    CHECK_THROWS_AS(example_family(2, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(example_family(2, 2, 1), std::invalid_argument);
}

TEST_CASE("example family separation matches the closed form") {
    for (auto [n, d, H] : std::vector<std::tuple<std::size_t, unsigned, int>>{
             {2, 2, 2}, {2, 2, 4}, {2, 4, 2}, {2, 4, 4},
             {3, 2, 2}, {3, 2, 4}, {3, 4, 2}, {3, 4, 4}}) {
        ExampleSeparation ex = example_separation(n, d, H);
        Enclosure enc = separation_oracle(ex.sys1, ex.sys2, ex.comp1, ex.comp2, kWidth20);
        CHECK(enc.lo <= ex.distance);
        CHECK(enc.hi >= ex.distance);
        CHECK(enc.hi - enc.lo <= kWidth20);
        // theorem sanity on each instance
        unsigned dd = std::max(ex.sys1.d(), ex.sys2.d());
        Int HH = std::max(ex.sys1.H(), ex.sys2.H());
        PowerExpr bound = separation_bound(n, dd, HH, ex.sys1.m(), ex.sys2.m());
        CHECK(compare_abs_to_bound(enc.lo, bound) >= 0);
    }
}

TEST_CASE("sqrt enclosure") {
    auto [lo, hi] = sqrt_enclosure(Rat(2), 30);
    CHECK(lo * lo <= 2);
    CHECK(hi * hi >= 2);
    CHECK(hi - lo <= Rat(1, 1 << 30));
    auto [zlo, zhi] = sqrt_enclosure(Rat(0), 30);
    CHECK(zlo == 0);
    CHECK(zhi == 0);
    auto [qlo, qhi] = sqrt_enclosure(Rat(1, 4), 30);
    CHECK(qlo <= Rat(1, 2));
    CHECK(qhi >= Rat(1, 2));
}

TEST_CASE("product system shape") {
    SemialgSystem a = circle_system(x(2, 0));
    SemialgSystem prod = product_system(a, a);
    CHECK(prod.n() == 4);
    CHECK(prod.m() == 2);
    CHECK(prod.d() == 2);
    // objective (x1-y1)^2 + (x2-y2)^2 vanishes on the diagonal
    RationalPoint diag{{Rat(1, 3), Rat(2, 3), Rat(1, 3), Rat(2, 3)}};
    CHECK(prod.objective().evaluate(diag) == 0);
}
