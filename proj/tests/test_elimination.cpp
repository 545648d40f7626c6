#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polymin/elimination.hpp"
#include "polymin/oracle.hpp"
#include "oracle_helpers.hpp"

using namespace polymin;
using namespace polymin_test;

namespace {

IntPolynomial x(std::size_t nv, std::size_t j, unsigned e = 1) {
    return IntPolynomial::variable(nv, j, e);
}
IntPolynomial c(std::size_t nv, long v) { return IntPolynomial::constant(nv, v); }

SemialgSystem circle_system(IntPolynomial objective) {
    return SemialgSystem(2, {x(2, 0, 2) + x(2, 1, 2) - c(2, 1)}, {}, std::move(objective));
}

// The reduced circle data for S = {1}, sigma = +, written out from the
// definitions (independent of the engine's reduction path), over [x0,x1,x2]
// with integer t substituted.
struct CircleReduced {
    IntPolynomial P, F, Delta;  // at fixed integer t (t0 = 1), symbolic U kept out
};

CircleReduced circle_reduced_at(const Int& t, const Int& u) {
    // A = [[4,2,3],[2,3,1]]
    IntPolynomial X0 = x(3, 0), X1 = x(3, 1), X2 = x(3, 2);
    IntPolynomial P = X0 * u - X1;
    IntPolynomial F = (X1 * X1 + X2 * X2 - X0 * X0) +
                      (X0 * X0 * 2 + X1 * X1 * 3 + X2 * X2) * t;
    // L = [[x0 + 4 t x1, -(2 x1 + 6 t x1)], [6 t x2, -(2 x2 + 2 t x2)]]
    IntPolynomial L11 = X0 + X1 * (4 * t);
    IntPolynomial L12 = -(X1 * 2 + X1 * (6 * t));
    IntPolynomial L21 = X2 * (6 * t);
    IntPolynomial L22 = -(X2 * 2 + X2 * (2 * t));
    return {P, F, L11 * L22 - L12 * L21};
}

} // namespace

TEST_CASE("solvability oracle sanity") {
    // {x0, x1, x2}: empty in P^2
    std::vector<IntPolynomial> coords = {x(3, 0), x(3, 1), x(3, 2)};
    CHECK_FALSE(projective_solvable(coords));
    // {x0, x0, x1}: the point (0:0:1) solves
    std::vector<IntPolynomial> dep = {x(3, 0), x(3, 0), x(3, 1)};
    CHECK(projective_solvable(dep));
    // circle with the line x2 and a tangent constraint
    std::vector<IntPolynomial> tangent = {x(3, 1, 2) + x(3, 2, 2) - x(3, 0, 2), x(3, 2),
                                          x(3, 1) - x(3, 0)};
    CHECK(projective_solvable(tangent));
}

TEST_CASE("free-extremum certificate for the circle (S empty)") {
    SemialgSystem sys = circle_system(x(2, 0));
    PerturbationMatrix A = build_matrix_A(2, 1);
    SubsetSelector sel{{}, {}};
    ResultantSystem rs = build_resultant_system(sys, A, sel);
    ParamResultant pr = multihomog_resultant(rs);

    // hand value: R(1,t,U) = +- 6 t (4 t U + 1); deg_tt = n*M3 = 2, M1 = 1
    CHECK(pr.M1 == 1);
    CHECK(pr.deg_tt == 2);
    IntPolynomial expected(3);  // [t0, t, U]
    expected = x(3, 1) * x(3, 0) * 6 + x(3, 1, 2) * x(3, 2) * 24;
    bool matches = pr.R == expected || pr.R == -expected;
    CHECK(matches);
    CHECK(pr.e == 1);

    BoundParams params = BoundParams::from_system(sys, 0, false);
    CertificatePoly q = q_poly(pr, params);
    // Q = R~(1,0,U) = +-6: nonzero constant, no real roots
    CHECK(q.q.degree() == 0);
    CHECK(abs_int(q.q.coeff(0)) == 6);
}

TEST_CASE("circle certificate S={1}: roots are exactly +-1") {
    SemialgSystem sys = circle_system(x(2, 0));
    PerturbationMatrix A = build_matrix_A(2, 1);
    SubsetSelector sel{{1}, {1}};
    ResultantSystem rs = build_resultant_system(sys, A, sel);
    ParamResultant pr = multihomog_resultant(rs);

    // structure: homogeneous of degree s*M2 + n*M3 in (t0,t), deg_U <= M1 = 4
    auto bz = bezout_numbers(2, 1, 2, 1);
    CHECK(pr.M1 == bz.M1);
    CHECK(pr.deg_tt == Int(1) * bz.M2 + Int(2) * bz.M3);
    CHECK(pr.R.is_homogeneous_in_vars({0, 1}, pr.deg_tt.convert_to<unsigned>()));
    CHECK(pr.R.degree_in(2) <= 4);

    BoundParams params = BoundParams::from_system(sys, 1, false);
    CertificatePoly cert = q_poly(pr, params);
    CHECK(!cert.q.is_zero());
    CHECK(cert.q.degree() <= 4);
    CHECK(cert.q.height() <= cert.ceiling_height);
    // the critical values of x1 on the circle are exactly +-1
    CHECK(cert.q.evaluate(Rat(1)) == 0);
    CHECK(cert.q.evaluate(Rat(-1)) == 0);

    // isolation intervals around -1 and 1, refinable below 2^-20
    auto roots = isolate_real_roots(cert.q);
    REQUIRE(roots.size() >= 2);
    UPoly sf = squarefree_part(cert.q);
    bool saw_minus = false, saw_plus = false;
    for (auto iv : roots) {
        auto r = refine_root(sf, iv, Rat(1, 1 << 20));
        CHECK(r.width() <= Rat(1, 1 << 20));
        if (r.lo <= -1 && r.hi >= -1) saw_minus = true;
        if (r.lo <= 1 && r.hi >= 1) saw_plus = true;
    }
    CHECK(saw_minus);
    CHECK(saw_plus);
}

TEST_CASE("circle S={1} against the restriction oracle, point by point") {
    // Res(P, F, Delta) with linear P agrees (up to a global sign) with the
    // Sylvester resultant of F and Delta restricted to the line x1 = U x0.
    SemialgSystem sys = circle_system(x(2, 0));
    PerturbationMatrix A = build_matrix_A(2, 1);
    SubsetSelector sel{{1}, {1}};
    ResultantSystem rs = build_resultant_system(sys, A, sel);
    ParamResultant pr = multihomog_resultant(rs);

    int consistent_sign = 0;
    for (long tv : {0L, 1L, -1L, 2L, 3L}) {
        for (long uv : {0L, 1L, -1L, 2L, 5L}) {
            CircleReduced red = circle_reduced_at(tv, uv);
            std::vector<Int> fa = restrict_to_line(red.F, uv, 2);
            std::vector<Int> fb = restrict_to_line(red.Delta, uv, 2);
            Int oracle = sylvester_binary(fa, fb);
            Int engine = pr.R.evaluate_int({Int(1), Int(tv), Int(uv)});
            CHECK(abs_int(engine) == abs_int(oracle));
            if (oracle != 0) {
                int s = (engine == oracle) ? 1 : -1;
                if (consistent_sign == 0) consistent_sign = s;
                CHECK(consistent_sign == s);
            }
        }
    }
}

TEST_CASE("vanishing of R agrees with projective solvability") {
    SemialgSystem sys = circle_system(x(2, 0));
    PerturbationMatrix A = build_matrix_A(2, 1);
    SubsetSelector sel{{1}, {1}};
    ResultantSystem rs = build_resultant_system(sys, A, sel);
    ParamResultant pr = multihomog_resultant(rs);

    for (long tv : {0L, 1L, 2L}) {
        for (long uv : {-2L, -1L, 0L, 1L, 2L}) {
            CircleReduced red = circle_reduced_at(tv, uv);
            bool solvable = projective_solvable({red.P, red.F, red.Delta});
            Int engine = pr.R.evaluate_int({Int(1), Int(tv), Int(uv)});
            CHECK((engine == 0) == solvable);
        }
    }
}

TEST_CASE("strip is idempotent and exact") {
    SemialgSystem sys = circle_system(x(2, 0));
    PerturbationMatrix A = build_matrix_A(2, 1);
    ResultantSystem rs = build_resultant_system(sys, A, SubsetSelector{{}, {}});
    ParamResultant pr = multihomog_resultant(rs);
    ParamResultant again = strip_t_power(pr);
    CHECK(again.e == pr.e);
    CHECK(again.R_tilde == pr.R_tilde);
    // t^e * R~ = R
    IntPolynomial recomposed = pr.R_tilde;
    for (unsigned k = 0; k < pr.e; ++k) recomposed = recomposed * x(3, 1);
    CHECK(recomposed == pr.R);
    CHECK(pr.R_tilde.min_degree_in(1) == 0);

    // explicit stripping example: R = t^2 (t0 + t) U
    ParamResultant manual;
    manual.R = x(3, 1, 2) * (x(3, 0) + x(3, 1)) * x(3, 2);
    manual.deg_tt = 3;
    manual.M1 = 1;
    ParamResultant stripped = strip_t_power(manual);
    CHECK(stripped.e == 2);
    CHECK(stripped.R_tilde == (x(3, 0) + x(3, 1)) * x(3, 2));
}

TEST_CASE("sign-flip coherence: negating g negates the candidate roots") {
    SemialgSystem sys_pos = circle_system(x(2, 0));
    SemialgSystem sys_neg = circle_system(-x(2, 0));
    PerturbationMatrix A = build_matrix_A(2, 1);
    CandidateSet a = candidate_minima(sys_pos, A);
    CandidateSet b = candidate_minima(sys_neg, A);
    REQUIRE(a.certificates.size() == b.certificates.size());
    // compare root sets of the squarefree products under negation
    auto ra = a.root_intervals;
    auto rb = b.root_intervals;
    REQUIRE(ra.size() == rb.size());
    Rat w(1, 1 << 22);
    for (std::size_t i = 0; i < ra.size(); ++i) {
        auto ri = refine_root(a.squarefree_product, ra[i], w);
        auto rj = refine_root(b.squarefree_product, rb[rb.size() - 1 - i], w);
        // ri ~ -rj: intervals must overlap after negation
        CHECK(ri.lo <= -rj.lo);
        CHECK(ri.hi >= -rj.hi);
    }
}

TEST_CASE("candidate enumeration count on the circle") {
    SemialgSystem sys = circle_system(x(2, 0));
    auto sels = enumerate_selectors(sys);
    // S = {} plus S = {1} with sigma in {+,-}
    CHECK(sels.size() == 3);
    PerturbationMatrix A = build_matrix_A(2, 1);
    CandidateSet cand = candidate_minima(sys, A);
    CHECK(cand.certificates.size() == 3);
    // containment: the true minimum -1 is a root of some certificate
    bool contains = false;
    for (const auto& cert : cand.certificates)
        if (cert.q.degree() >= 1 && cert.q.evaluate(Rat(-1)) == 0) contains = true;
    CHECK(contains);
}

TEST_CASE("two-constraint instance: S of size two reduces classically") {
    // x1^2 + x2^2 - 1 = 0, x1 >= 0, objective x2; critical values of x2 at
    // the boundary points (0, +-1) where both constraints are active
    SemialgSystem sys(2, {x(2, 0, 2) + x(2, 1, 2) - c(2, 1)}, {x(2, 0)}, x(2, 1));
    PerturbationMatrix A = build_matrix_A(2, 2);
    SubsetSelector sel{{1, 2}, {1, 1}};
    ResultantSystem rs = build_resultant_system(sys, A, sel);
    ParamResultant pr = multihomog_resultant(rs);
    BoundParams params = BoundParams::from_system(sys, 2, false);
    CertificatePoly cert = q_poly(pr, params);
    CHECK(!cert.q.is_zero());
    CHECK(cert.q.evaluate(Rat(1)) == 0);
    CHECK(cert.q.evaluate(Rat(-1)) == 0);

    // enumeration: subsets {}, {1}+-, {2}+, {1,2}+-: 6 selectors
    CHECK(enumerate_selectors(sys).size() == 6);
    CandidateSet cand = candidate_minima(sys, A);
    CHECK(cand.certificates.size() == 6);
    bool contains = false;
    for (const auto& cert2 : cand.certificates)
        if (cert2.q.degree() >= 1 && cert2.q.evaluate(Rat(-1)) == 0) contains = true;
    CHECK(contains);
}

TEST_CASE("budget guard refuses oversized instances with a diagnostic") {
    // n = 4, d = 6 style instance: the matrix dimension explodes
    std::size_t n = 4;
    std::vector<IntPolynomial> eqs;
    IntPolynomial f(n);
    for (std::size_t j = 0; j < n; ++j) f = f + x(n, j, 6);
    eqs.push_back(f - c(n, 1));
    SemialgSystem sys(n, eqs, {}, x(n, 0), 6u);
    PerturbationMatrix A = build_matrix_A(n, 1);
    Budget tight;
    CHECK_THROWS_AS(candidate_minima(sys, A, tight), budget_error);
    try {
        candidate_minima(sys, A, tight);
    } catch (const budget_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("budget") != std::string::npos);
    }
}

TEST_CASE("unsupported middle selection sizes are refused for n >= 3") {
    std::vector<IntPolynomial> eqs = {x(3, 0, 2) + x(3, 1, 2) + x(3, 2, 2) - c(3, 1)};
    SemialgSystem sys(3, eqs, {}, x(3, 0));
    PerturbationMatrix A = build_matrix_A(3, 1);
    SubsetSelector sel{{1}, {1}};  // s = 1 = n - 2
    ResultantSystem rs = build_resultant_system(sys, A, sel);
    CHECK_THROWS_AS(multihomog_resultant(rs), budget_error);
}

TEST_CASE("limit system checks (n = 2)") {
    for (unsigned d : {2u, 4u}) {
        PerturbationMatrix A = build_matrix_A(2, 2);
        for (std::size_t s : {std::size_t(1), std::size_t(2)}) {
            SubsetSelector sel;
            for (std::size_t i = 1; i <= s; ++i) {
                sel.S.push_back(i);
                sel.sigma.push_back(1);
            }
            LimitSystemReport rep = limit_system_solutions(A, sel, 2, d);
            CHECK(rep.all_checks_passed);
            CHECK(rep.no_solutions_at_infinity);
            // # of J with #J = n - s is C(n, n-s); each contributes d^s
            Int expected = binomial(Int(2), Int(2 - s)) * int_pow(d, s);
            CHECK(rep.total_affine_solutions == expected);
            for (const auto& cs : rep.cases) {
                CHECK(cs.check_passed);
                if (cs.kind == 0) CHECK(cs.affine_count == int_pow(d, s));
            }
        }
    }
}

TEST_CASE("limit system worked example n=2 s=1 d=2 J={2}") {
    PerturbationMatrix A = build_matrix_A(2, 1);
    SubsetSelector sel{{1}, {1}};
    LimitSystemReport rep = limit_system_solutions(A, sel, 2, 2);
    bool found = false;
    for (const auto& cs : rep.cases) {
        if (cs.J == std::vector<std::size_t>{2}) {
            found = true;
            CHECK(cs.kind == 0);
            CHECK(cs.affine_count == 2);  // d^s = 2 solutions with x0 = 1
        }
    }
    CHECK(found);
}

TEST_CASE("classical resultant primitive: linear systems are determinants") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> v(-5, 5);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<IntPolynomial> forms;
        for (std::size_t r = 0; r < 3; ++r) {
            IntPolynomial f(3);
            for (std::size_t cidx = 0; cidx < 3; ++cidx) f = f + x(3, cidx) * Int(v(rng));
            if (f.is_zero()) f = x(3, 0);
            forms.push_back(f);
        }
        IntMatrix m(3, 3);
        for (std::size_t r = 0; r < 3; ++r)
            for (const auto& [mo, coeff] : forms[r].terms())
                for (std::size_t cidx = 0; cidx < 3; ++cidx)
                    if (mo.exps[cidx] == 1) m.at(r, cidx) = coeff;
        CHECK(abs_int(classical_resultant_value(forms)) == abs_int(bareiss_det(m)));
    }
}

TEST_CASE("classical resultant primitive: binary forms match Sylvester") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> v(-4, 4);
    for (int rep = 0; rep < 40; ++rep) {
        unsigned da = 1 + rep % 3, db = 1 + (rep / 3) % 3;
        std::vector<Int> a(da + 1), b(db + 1);
        for (auto& c2 : a) c2 = v(rng);
        for (auto& c2 : b) c2 = v(rng);
        if (a.back() == 0) a.back() = 1;
        if (b.back() == 0) b.back() = 1;
        // forms in (x0, x1): coefficient k on x0^{d-k} x1^k
        auto to_form = [](const std::vector<Int>& cs) {
            IntPolynomial f(2);
            unsigned d = static_cast<unsigned>(cs.size() - 1);
            for (unsigned k = 0; k < cs.size(); ++k) {
                Monomial mo(2);
                mo.exps[0] = d - k;
                mo.exps[1] = k;
                f.add_term(mo, cs[k]);
            }
            return f;
        };
        Int engine = classical_resultant_value({to_form(a), to_form(b)});
        Int sylv = sylvester_binary(a, b);
        CHECK(engine == sylv);
    }
}

TEST_CASE("classical resultant primitive: monomial systems and degeneracy") {
    // coordinate powers have no common zero: unit resultant
    std::vector<IntPolynomial> powers = {x(3, 1, 2), x(3, 2, 2), x(3, 0, 2)};
    CHECK(abs_int(classical_resultant_value(powers)) == 1);
    // {x1 x2, x1^2, x2^2} share the zero (1:0:0); the extraneous minor
    // degenerates and the epsilon fallback must still return 0
    std::vector<IntPolynomial> degen = {x(3, 1) * x(3, 2), x(3, 1, 2), x(3, 2, 2)};
    CHECK(classical_resultant_value(degen) == 0);
    // scaling multilinearity in one form: Res(c f, g, h) = c^{deg g deg h} Res
    std::vector<IntPolynomial> scaled = {x(3, 1, 2) * 3, x(3, 2, 2), x(3, 0, 2)};
    CHECK(abs_int(classical_resultant_value(scaled)) == int_pow(3, 4));
}

TEST_CASE("quartic constraint: certificate roots at +-1") {
    // f1 = x1^4 + x2^4 - 1, g = x1: critical values of x1 are +-1
    SemialgSystem sys(2, {x(2, 0, 4) + x(2, 1, 4) - c(2, 1)}, {}, x(2, 0));
    PerturbationMatrix A = build_matrix_A(2, 1);
    SubsetSelector sel{{1}, {1}};
    ResultantSystem rs = build_resultant_system(sys, A, sel);
    Budget budget;
    budget.jobs = 0;  // hardware parallelism; merged by index, deterministic
    ParamResultant pr = multihomog_resultant(rs, budget);
    CertificatePoly cert = q_poly(pr, BoundParams::from_system(sys, 1, false));
    CHECK(!cert.q.is_zero());
    CHECK(cert.q.evaluate(Rat(1)) == 0);
    CHECK(cert.q.evaluate(Rat(-1)) == 0);
    CHECK(Int(cert.q.degree()) <= bezout_numbers(2, 1, 4, 1).M1);
}

TEST_CASE("ellipse certificate roots at +-2") {
    SemialgSystem sys(2, {x(2, 0, 2) * 4 + x(2, 1, 2) - c(2, 4)}, {}, x(2, 1));
    PerturbationMatrix A = build_matrix_A(2, 1);
    SubsetSelector sel{{1}, {1}};
    ResultantSystem rs = build_resultant_system(sys, A, sel);
    ParamResultant pr = multihomog_resultant(rs);
    CertificatePoly cert = q_poly(pr, BoundParams::from_system(sys, 1, false));
    CHECK(cert.q.evaluate(Rat(2)) == 0);
    CHECK(cert.q.evaluate(Rat(-2)) == 0);
}

TEST_CASE("degree-two objective certificate on the circle") {
    SemialgSystem sys(2, {x(2, 0, 2) + x(2, 1, 2) - c(2, 1)}, {},
                      x(2, 0, 2) + x(2, 1, 2));
    PerturbationMatrix A = build_matrix_A(2, 1);
    SubsetSelector sel{{1}, {1}};
    ResultantSystem rs = build_resultant_system(sys, A, sel);
    ParamResultant pr = multihomog_resultant(rs);
    CertificatePoly cert = q_poly(pr, BoundParams::from_system(sys, 1, false));
    // g is identically 1 on the circle: U = 1 must be a root
    CHECK(cert.q.evaluate(Rat(1)) == 0);
}

TEST_CASE("parallel grid evaluation is deterministic") {
    SemialgSystem sys(2, {x(2, 0, 2) + x(2, 1, 2) - c(2, 1)}, {x(2, 0)}, x(2, 1));
    PerturbationMatrix A = build_matrix_A(2, 2);
    Budget seq;
    seq.jobs = 1;
    Budget par;
    par.jobs = 4;
    CandidateSet a = candidate_minima(sys, A, seq);
    CandidateSet b = candidate_minima(sys, A, par);
    REQUIRE(a.certificates.size() == b.certificates.size());
    for (std::size_t i = 0; i < a.certificates.size(); ++i)
        CHECK(a.certificates[i].q == b.certificates[i].q);
}

TEST_CASE("randomized end-to-end: oracle minimum always meets a certificate root") {
    // random rational ellipses a(x1-c1)^2 + b(x2-c2)^2 = r through an exact
    // rational seed, with random linear objectives
    std::mt19937 rng(20240901);
    std::uniform_int_distribution<int> small(1, 3);
    std::uniform_int_distribution<int> coord(-2, 2);
    std::uniform_int_distribution<int> obj(-2, 2);
    int done = 0;
    for (int rep = 0; rep < 40 && done < 12; ++rep) {
        long a = small(rng), b = small(rng);
        long c1 = coord(rng), c2 = coord(rng);
        long p1 = c1 + small(rng), p2 = c2 + small(rng);  // seed off-center
        // f = a(x1-c1)^2 + b(x2-c2)^2 - r with r chosen so the seed lies on it
        long r = a * (p1 - c1) * (p1 - c1) + b * (p2 - c2) * (p2 - c2);
        if (r == 0) continue;
        long g1 = obj(rng), g2 = obj(rng);
        if (g1 == 0 && g2 == 0) continue;
        ++done;

        IntPolynomial d1 = x(2, 0) - c(2, c1);
        IntPolynomial d2 = x(2, 1) - c(2, c2);
        IntPolynomial f = d1 * d1 * a + d2 * d2 * b - c(2, r);
        IntPolynomial g = x(2, 0) * g1 + x(2, 1) * g2;
        SemialgSystem sys(2, {f}, {}, g);

        ComponentSpec comp;
        comp.seed = RationalPoint{{Rat(p1), Rat(p2)}};
        // box comfortably containing the ellipse
        Rat rad = Rat(r) + 4;
        comp.box.ranges = {{Rat(c1) - rad, Rat(c1) + rad}, {Rat(c2) - rad, Rat(c2) + rad}};

        Enclosure enc = reference_minimum(sys, comp, Rat(1, 1 << 20));
        PerturbationMatrix A = build_matrix_A(2, 1);
        CandidateSet cand = candidate_minima(sys, A);
        auto match = match_enclosure(cand, enc.lo, enc.hi, Rat(1, 1 << 22));
        if (!match) {
            MESSAGE("instance: a=" << a << " b=" << b << " c=(" << c1 << "," << c2
                                   << ") p=(" << p1 << "," << p2 << ") g=(" << g1 << ","
                                   << g2 << ") r=" << r);
        }
        CHECK(match.has_value());
    }
    CHECK(done >= 12);
}

TEST_CASE("simplest rational in interval") {
    CHECK(simplest_rational_in(Rat(-1, 2), Rat(1, 2)) == 0);
    CHECK(simplest_rational_in(Rat(5, 2), Rat(7, 2)) == 3);
    CHECK(simplest_rational_in(Rat(1, 3), Rat(2, 5)) == Rat(1, 3));
    CHECK(simplest_rational_in(Rat(7, 22), Rat(8, 25)) == Rat(7, 22));
    CHECK(simplest_rational_in(Rat(-7, 2), Rat(-5, 2)) == -3);
}
