#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polymin/io.hpp"

using namespace polymin;

namespace {

const char* kCircleDoc = R"(# unit circle, minimize x1
vars: x1 x2
eq: x1^2 + x2^2 - 1
obj: x1
seed: 1 0
box: -2 2 -2 2
)";

} // namespace

TEST_CASE("parse the circle document") {
    InputDocument doc = parse_input(kCircleDoc);
    REQUIRE(doc.systems.size() == 1);
    SemialgSystem sys = system_from_block(doc.systems[0]);
    CHECK(sys.n() == 2);
    CHECK(sys.l() == 1);
    CHECK(sys.m() == 1);
    CHECK(sys.d() == 2);
    CHECK(sys.H() == 1);
    ComponentSpec comp = component_from_block(doc.systems[0]);
    CHECK(comp.seed.coords == std::vector<Rat>{Rat(1), Rat(0)});
}

TEST_CASE("odd degree override is rejected") {
    std::string doc = "vars: x1 x2\neq: x1^2 - x2\nobj: x1\nd: 3\n";
    CHECK_THROWS_WITH_AS(parse_input(doc), "line 4: d must be even", parse_error);
}

TEST_CASE("big integer coefficients parse exactly") {
    std::string doc = "vars: x1 x2\neq: 9999999999999999999999*x1 - 1\nobj: x2\n";
    InputDocument parsed = parse_input(doc);
    SemialgSystem sys = system_from_block(parsed.systems[0]);
    CHECK(sys.H() == Int("9999999999999999999999"));
}

TEST_CASE("polynomial parser details") {
    std::vector<std::string> vars{"x1", "x2"};
    IntPolynomial p = parse_polynomial("3*x1^2*x2 - x2 + 4", vars);
    CHECK(p.to_string(vars) == "3*x1^2*x2 - 1*x2 + 4");
    CHECK_THROWS_AS(parse_polynomial("x3 + 1", vars), parse_error);
    CHECK_THROWS_AS(parse_polynomial("", vars), parse_error);
    CHECK_THROWS_AS(parse_polynomial("2 +", vars), parse_error);
    // rationals
    CHECK(parse_rational("5/3") == Rat(5, 3));
    CHECK(parse_rational("-7") == -7);
    CHECK_THROWS_AS(parse_rational("1.5"), parse_error);
}

TEST_CASE("round-trip normalization is idempotent") {
    InputDocument doc = parse_input(kCircleDoc);
    std::string once = serialize_document(doc);
    std::string twice = serialize_document(parse_input(once));
    CHECK(once == twice);
}

TEST_CASE("two-system documents") {
    std::string text = "system: 1\nvars: x1 x2\neq: x1^2 + x2^2 - 1\nobj: x1\n"
                       "system: 2\nvars: x1 x2\neq: x1 - 2\nobj: x1\n";
    InputDocument doc = parse_input(text);
    REQUIRE(doc.systems.size() == 2);
    CHECK(doc.systems[1].equalities.size() == 1);
}

TEST_CASE("bounds report for the circle") {
    InputDocument doc = parse_input(kCircleDoc);
    Report rep = cmd_bounds(doc);
    CHECK(rep.exit_code == 0);
    CHECK(rep.human.find("degree bound (exact): 8") != std::string::npos);
    CHECK(rep.machine_json.find("\"degree_bound\": \"8\"") != std::string::npos);
    CHECK(rep.machine_json.find("192") != std::string::npos);
    // byte-identical reruns
    Report rep2 = cmd_bounds(doc);
    CHECK(rep.full_text() == rep2.full_text());
}

TEST_CASE("qpoly command with explicit selection") {
    InputDocument doc = parse_input(kCircleDoc);
    CliOptions opt;
    opt.selector = SubsetSelector{{1}, {1}};
    Report rep = cmd_qpoly(doc, opt);
    CHECK(rep.exit_code == 0);
    CHECK(rep.human.find("Q_{1+}") != std::string::npos);
    // all-(S, sigma) mode yields at most 3 certificates on the circle
    CliOptions all;
    Report rep_all = cmd_qpoly(doc, all);
    CHECK(rep_all.machine_json.find("certificates") != std::string::npos);
}

TEST_CASE("certify command on the circle") {
    InputDocument doc = parse_input(kCircleDoc);
    CliOptions opt;
    Report rep = cmd_certify(doc, opt);
    CHECK(rep.exit_code == 0);
    CHECK(rep.human.find("verdict certificate_root_meets_oracle: pass") != std::string::npos);
    CHECK(rep.human.find("verdict magnitude_bound: pass") != std::string::npos);
    CHECK(rep.human.find("verdict algebraic_degree_within_bound: pass") !=
          std::string::npos);
    // matched root -1 is rational: reported degree 1
    CHECK(rep.machine_json.find("\"factor_degree\": \"1\"") != std::string::npos);
}

TEST_CASE("certify reports an inapplicable magnitude bound for zero minima") {
    // g = (x1 - 1)^2 has minimum 0 on the circle through (1, 0)
    std::string doc_text = "vars: x1 x2\neq: x1^2 + x2^2 - 1\n"
                           "obj: x1^2 - 2*x1 + 1\nseed: 1 0\nbox: -2 2 -2 2\n";
    InputDocument doc = parse_input(doc_text);
    CliOptions opt;
    Report rep = cmd_certify(doc, opt);
    CHECK(rep.human.find("verdict magnitude_bound: inapplicable") != std::string::npos);
    CHECK(rep.exit_code == 0);
}

TEST_CASE("certify reports are byte-identical across runs and thread counts") {
    InputDocument doc = parse_input(kCircleDoc);
    CliOptions seq;
    seq.budget.jobs = 1;
    seq.oracle_budget.jobs = 1;
    CliOptions par;
    par.budget.jobs = 3;
    par.oracle_budget.jobs = 3;
    Report a = cmd_certify(doc, seq);
    Report b = cmd_certify(doc, seq);
    Report c = cmd_certify(doc, par);
    CHECK(a.full_text() == b.full_text());
    CHECK(a.full_text() == c.full_text());
}

TEST_CASE("separate command on the emitted example family") {
    std::string text = cmd_example(2, 2, 4);
    InputDocument doc = parse_input(text);
    REQUIRE(doc.systems.size() == 2);
    CliOptions opt;
    Report rep = cmd_separate(doc, opt);
    CHECK(rep.exit_code == 0);
    CHECK(rep.human.find("verdict distance_above_bound: pass") != std::string::npos);
}
