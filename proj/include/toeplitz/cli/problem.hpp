#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toeplitz/circle/symbol.hpp"
#include "toeplitz/sg/symbol.hpp"

namespace toeplitz::cli {

using nlohmann::json;

/// Operator expression of a problem document.
struct Expr {
    enum class Kind { Builtin, Multiplication, Symbol, Sum, Product, Scale };
    Kind kind = Kind::Builtin;

    // Builtin
    std::string builtin;
    int dim = 1;
    int mu = 0;
    int m = 0;

    // Multiplication (circle)
    std::optional<circle::TrigPoly> multiplier;
    // Symbol: circle symbol + kernel (depth = number of listed components) or SG symbol
    std::optional<circle::Operator> circle_symbol;
    std::optional<sg::SGSymbol> sg_symbol;

    // Scale
    cplx factor{1.0, 0.0};

    // Sum, Product, Scale
    std::vector<Expr> args;

    bool operator==(const Expr&) const = default;
};

struct ProjectionSpec {
    /// full | hardy | twisted-line | constant-matrix | complete
    std::string kind = "full";
    int dim = 0;  // 0: inferred from the operator
    std::optional<circle::TrigPoly> matrix;  // constant-matrix (circle)
    std::optional<sg::QMatrix> sg_matrix;    // constant-matrix (sg)
    /// complete: components starting at degree 0, completed by Newton–Schulz
    std::optional<circle::Operator> start;

    bool operator==(const ProjectionSpec&) const = default;
};

struct Parameters {
    int modes = 64;
    double tol = 1e-8;
    double cond = 1e8;
    int grid = 64;
    std::uint64_t seed = 0;
    /// Sobolev shift used by order reduction (default: the operator's order).
    std::optional<int> s;

    bool operator==(const Parameters&) const = default;
};

struct ProblemSpec {
    std::string name;
    std::string description;
    std::string algebra = "circle";
    int depth = 5;
    Expr op;
    ProjectionSpec source;
    ProjectionSpec target;
    std::vector<std::string> tasks;
    Parameters parameters;
    /// Optional user candidate for the parametrix (SG non-monomial leading parts).
    std::optional<Expr> candidate;

    bool operator==(const ProblemSpec&) const = default;
};

/// Validates a problem document. Errors are InputError with the offending field path.
ProblemSpec parse_problem(const json& doc);
ProblemSpec parse_problem_text(const std::string& text);
ProblemSpec load_problem(const std::string& path);

json serialize_problem(const ProblemSpec& spec);

/// Rows and columns of an expression (validated while parsing).
std::pair<int, int> expr_shape(const Expr& e);

json serialize_trig(const circle::TrigPoly& p);
json serialize_circle_symbol(const circle::Operator& op);
json serialize_sg_symbol(const sg::SGSymbol& s);

}  // namespace toeplitz::cli
