#pragma once

#include <string>

#include "toeplitz/circle/symbol.hpp"
#include "toeplitz/core/algebra.hpp"

namespace toeplitz::circle {

/// Circle instance of the algebra contract.
struct CircleAlgebra {
    using Operator = circle::Operator;
    using Order = int;

    static std::string name() { return "circle"; }
    static Operator compose(const Operator& a, const Operator& b, const CalculusOptions& o) {
        return circle::compose(a, b, o);
    }
    static Operator adjoint(const Operator& a, const CalculusOptions& o) { return circle::adjoint(a, o); }
    static Operator add(const Operator& a, const Operator& b) { return circle::add(a, b); }
    static Operator subtract(const Operator& a, const Operator& b) { return circle::subtract(a, b); }
    static Operator scale(const Operator& a, cplx s) { return circle::scale(a, s); }
    static Operator identity(int dim, int depth);
    static int order(const Operator& a) { return a.order(); }
    static bool is_zero_order(int order) { return order == 0; }
    static int depth(const Operator& a) { return a.depth(); }
    static int rows(const Operator& a) { return a.rows(); }
    static int cols(const Operator& a) { return a.cols(); }
    static std::optional<int> leading_level(const Operator& a, const CalculusOptions& o) {
        return circle::leading_level(a.symbol, o.zero_tol);
    }
    static std::string format_level(int order, std::optional<int> level, int depth) {
        if (level) return std::to_string(order - *level);
        return "<= " + std::to_string(order - depth);
    }
};

static_assert(core::AlgebraInstance<CircleAlgebra>);

using Projection = core::ProjectionHandle<CircleAlgebra>;
using Element = core::ToeplitzElement<CircleAlgebra>;
using Parametrix = core::Parametrix<CircleAlgebra>;

}  // namespace toeplitz::circle
