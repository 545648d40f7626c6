#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polymin/io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const polymin::Report& rep, const std::string& output_path) {
    std::string text = rep.full_text();
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path);
        if (!out) throw std::runtime_error("cannot open output file: " + output_path);
        out << text;
        std::cout << text;
    }
}

polymin::SubsetSelector parse_selector(const std::string& s) {
    // "1+,3-" -> S = {1,3}, sigma = {+,-}
    polymin::SubsetSelector sel;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        char sign = item.back();
        int sg = 1;
        std::string digits = item;
        if (sign == '+' || sign == '-') {
            sg = sign == '-' ? -1 : 1;
            digits = item.substr(0, item.size() - 1);
        }
        sel.S.push_back(std::stoul(digits));
        sel.sigma.push_back(sg);
    }
    return sel;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified degree and magnitude bounds for polynomial minima over "
                 "semialgebraic sets"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string input_path, output_path, target_width_str = "1/1048576", selector_str;
    unsigned jobs = 0;
    std::size_t budget_dim = 3000, budget_grid = 100000;
    unsigned resolution = 0;

    app.add_option("--output", output_path, "write the report to this path as well");
    app.add_option("--budget", budget_dim, "largest admissible elimination matrix dimension");
    app.add_option("--grid-budget", budget_grid, "largest admissible interpolation grid");
    app.add_option("--target-width", target_width_str,
                   "oracle enclosure width, as a rational like 1/1048576");
    app.add_option("--resolution", resolution, "initial oracle grid resolution per axis");
    app.add_option("--jobs", jobs, "worker threads (0: hardware parallelism)");

    auto* cmd_bounds = app.add_subcommand("bounds", "evaluate the bound formulas");
    cmd_bounds->add_option("input", input_path, "system document")->required();

    auto* cmd_qpoly = app.add_subcommand("qpoly", "compute certificate polynomials");
    cmd_qpoly->add_option("input", input_path, "system document")->required();
    cmd_qpoly->add_option("--selection", selector_str,
                          "restrict to one (S, sigma), e.g. \"1+\" or \"1+,2-\"");

    auto* cmd_certify =
        app.add_subcommand("certify", "oracle minimum vs certificates and bounds");
    cmd_certify->add_option("input", input_path, "system document")->required();

    auto* cmd_separate =
        app.add_subcommand("separate", "distance between two components vs the bound");
    cmd_separate->add_option("input", input_path, "two-system document")->required();

    std::size_t ex_n = 2;
    unsigned ex_d = 2;
    std::string ex_H = "2";
    auto* cmd_example =
        app.add_subcommand("example", "emit the double-exponential separation family");
    cmd_example->add_option("n", ex_n, "variable count")->required();
    cmd_example->add_option("d", ex_d, "even degree")->required();
    cmd_example->add_option("H", ex_H, "height parameter")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        polymin::CliOptions opt;
        opt.budget.max_matrix_dim = budget_dim;
        opt.budget.max_grid_points = budget_grid;
        opt.budget.jobs = jobs;
        opt.oracle_budget.jobs = jobs;
        opt.target_width = polymin::parse_rational(target_width_str);
        if (resolution) opt.resolution = resolution;
        if (!selector_str.empty()) opt.selector = parse_selector(selector_str);

        if (cmd_example->parsed()) {
            std::string text = polymin::cmd_example(ex_n, ex_d, polymin::Int(ex_H));
            if (!output_path.empty()) {
                std::ofstream out(output_path);
                out << text;
            }
            std::cout << text;
            return 0;
        }

        polymin::InputDocument doc = polymin::parse_input(read_file(input_path));
        polymin::Report rep;
        if (cmd_bounds->parsed()) rep = polymin::cmd_bounds(doc);
        else if (cmd_qpoly->parsed()) rep = polymin::cmd_qpoly(doc, opt);
        else if (cmd_certify->parsed()) rep = polymin::cmd_certify(doc, opt);
        else if (cmd_separate->parsed()) rep = polymin::cmd_separate(doc, opt);
        emit(rep, output_path);
        return rep.exit_code;
    } catch (const polymin::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const polymin::budget_error& e) {
        std::cerr << "budget guard: " << e.what() << "\n";
        return 3;
    } catch (const polymin::oracle_error& e) {
        std::cerr << "oracle: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
