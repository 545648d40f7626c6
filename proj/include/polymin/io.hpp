#ifndef POLYMIN_IO_HPP
#define POLYMIN_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "polymin/elimination.hpp"
#include "polymin/oracle.hpp"

namespace polymin {

struct parse_error : std::runtime_error {
    int line;
    parse_error(const std::string& msg, int line_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// One system block of an input document.
struct SystemBlock {
    std::vector<std::string> variables;
    std::vector<IntPolynomial> equalities, inequalities;
    std::optional<IntPolynomial> objective;
    std::optional<unsigned> d_override;
    std::optional<RationalPoint> seed;
    std::optional<Box> box;
    std::optional<unsigned> resolution;
};

struct InputDocument {
    std::vector<SystemBlock> systems;  // one, or two for `separate`
};

IntPolynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                               int line = 0);
Rat parse_rational(const std::string& text, int line = 0);

InputDocument parse_input(const std::string& text);

std::string serialize_document(const InputDocument& doc);

SemialgSystem system_from_block(const SystemBlock& blk);

ComponentSpec component_from_block(const SystemBlock& blk);

struct CliOptions {
    Budget budget;
    OracleBudget oracle_budget;
    Rat target_width = Rat(1, 1048576);  // 2^-20
    std::optional<unsigned> resolution;
    std::optional<SubsetSelector> selector;  // qpoly: restrict to one (S, sigma)
};

struct Report {
    std::string human;
    std::string machine_json;
    int exit_code = 0;  // 0 pass/inapplicable, 1 verdict failure
    std::string full_text() const {
        return human + "\n--- machine ---\n" + machine_json + "\n";
    }
};

Report cmd_bounds(const InputDocument& doc);
Report cmd_qpoly(const InputDocument& doc, const CliOptions& opt);
Report cmd_certify(const InputDocument& doc, const CliOptions& opt);
Report cmd_separate(const InputDocument& doc, const CliOptions& opt);

// Emits a ready-to-run two-system document for the double-exponential family.
std::string cmd_example(std::size_t n, unsigned d, const Int& H);

} // namespace polymin

#endif
