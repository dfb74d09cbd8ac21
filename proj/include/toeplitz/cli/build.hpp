#pragma once

#include "toeplitz/circle/ellipticity.hpp"
#include "toeplitz/cli/problem.hpp"
#include "toeplitz/sg/ellipticity.hpp"

namespace toeplitz::cli {

/// Circle operator of an expression at the given depth. Listed symbol components are
/// padded with zeros or truncated to the depth.
circle::Operator build_circle(const Expr& e, const CalculusOptions& calc);
circle::Projection build_circle_projection(const ProjectionSpec& p, const CalculusOptions& calc);
circle::Element build_circle_element(const ProblemSpec& spec, const CalculusOptions& calc);

sg::SGSymbol build_sg(const Expr& e, const CalculusOptions& calc);
sg::Projection build_sg_projection(const ProjectionSpec& p, const CalculusOptions& calc);
sg::Element build_sg_element(const ProblemSpec& spec, const CalculusOptions& calc);

}  // namespace toeplitz::cli
