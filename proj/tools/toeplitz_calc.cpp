#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "toeplitz/cli/run.hpp"

namespace cli = toeplitz::cli;

int main(int argc, char** argv) {
    CLI::App app{"Toeplitz-subalgebra calculus: ellipticity, parametrices, indices, inverses, order reductions"};
    app.require_subcommand(1);

    cli::Flags flags;
    std::string problem;
    std::string json_path;

    const std::map<std::string, std::string> about{
        {"ellipticity", "Principal-symbol ellipticity check with a witness on failure"},
        {"parametrix", "Parametrix by symbol bootstrap, cross-checked against the witness route"},
        {"index", "Fredholm index from finite sections at M and 2M"},
        {"invert", "Spectral-invariance inverse of an order-0 element"},
        {"reduce", "Order reductions and the commuting diagram"},
        {"verify", "Operator-level consistency checks"},
    };
    for (const auto& name : cli::commands()) {
        const auto it = about.find(name);
        auto* sub = app.add_subcommand(name, it == about.end() ? "" : it->second);
        sub->add_option("problem", problem, "Problem document (JSON)")->required();
        sub->add_option("--modes,-M", flags.modes, "Galerkin resolution M (modes -M..M)");
        sub->add_option("--depth,-J", flags.depth, "Number of retained homogeneous levels");
        sub->add_option("--tol", flags.tol, "Singular value threshold (relative)");
        sub->add_option("--cond", flags.cond, "Condition bound kappa");
        sub->add_option("--grid", flags.grid, "Grid size for principal-symbol checks");
        sub->add_option("--seed", flags.seed, "Seed for randomized checks");
        sub->add_option("--shift,-s", flags.shift, "Sobolev shift for order reductions");
        sub->add_option("--json", json_path, "Write the machine-readable report to PATH");
        sub->add_option("--export-matrix", flags.export_matrix, "Write the Galerkin section (binary) to PATH");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const auto result = cli::run_file(command, problem, flags);
    std::cout << result.text;
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << json_path << "\n";
            return 2;
        }
        out << cli::report_text(result.report);
    }
    return result.exit_code;
}
