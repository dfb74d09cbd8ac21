#pragma once

#include <optional>
#include <string>

#include "toeplitz/cli/problem.hpp"

namespace toeplitz::cli {

/// Command-line overrides of the problem parameters.
struct Flags {
    std::optional<int> modes;
    std::optional<int> depth;
    std::optional<double> tol;
    std::optional<double> cond;
    std::optional<int> grid;
    std::optional<std::uint64_t> seed;
    std::optional<int> shift;
    /// Writes the Galerkin section of the element (circle only).
    std::optional<std::string> export_matrix;
};

struct RunResult {
    int exit_code = 0;
    json report;
    /// Human-readable table.
    std::string text;
};

const std::vector<std::string>& commands();

/// Executes one command. Exit codes: 0 pass, 1 negative verdict, 2 invalid input,
/// 3 unresolved numerics. Never throws for library errors.
RunResult run_command(const std::string& command, const ProblemSpec& spec, const Flags& flags);

/// Loads the problem file first; load errors produce an exit-2 report.
RunResult run_file(const std::string& command, const std::string& path, const Flags& flags);

/// Deterministic report text (two-space indent, trailing newline).
std::string report_text(const json& report);

}  // namespace toeplitz::cli
