#include "toeplitz/cli/build.hpp"

#include "toeplitz/circle/builtins.hpp"

namespace toeplitz::cli {

namespace {

circle::Operator at_depth(circle::Operator op, int depth) {
    auto& s = op.symbol;
    while (static_cast<int>(s.comps.size()) < depth) {
        const int degree = s.order - static_cast<int>(s.comps.size());
        s.comps.push_back({degree, circle::TrigPoly(s.rows, s.cols), circle::TrigPoly(s.rows, s.cols)});
    }
    s.comps.resize(depth);
    s.depth = depth;
    return op;
}

sg::CQ exact(cplx v) { return {sg::rational_from_double(v.real()), sg::rational_from_double(v.imag())}; }

}  // namespace

circle::Operator build_circle(const Expr& e, const CalculusOptions& calc) {
    const int depth = calc.depth;
    switch (e.kind) {
        case Expr::Kind::Builtin:
            if (e.builtin == "identity") return circle::identity(e.dim, depth);
            if (e.builtin == "derivative") return circle::derivative(e.dim, depth);
            if (e.builtin == "hardy") return circle::hardy(e.dim, depth);
            if (e.builtin == "twisted-line") return circle::twisted_line(depth);
            if (e.builtin == "bracket-power") return circle::bracket_power(e.mu, e.dim, depth);
            if (e.builtin == "homogeneous-power") return circle::homogeneous_power(e.mu, e.dim, depth);
            throw InputError("unknown circle builtin \"" + e.builtin + "\"");
        case Expr::Kind::Multiplication: return circle::multiplication(*e.multiplier, depth);
        case Expr::Kind::Symbol:
            if (!e.circle_symbol) throw InputError("expected a circle symbol");
            return at_depth(*e.circle_symbol, depth);
        case Expr::Kind::Scale: return circle::scale(build_circle(e.args[0], calc), e.factor);
        case Expr::Kind::Sum: {
            circle::Operator acc = build_circle(e.args[0], calc);
            for (std::size_t i = 1; i < e.args.size(); ++i) acc = circle::add(acc, build_circle(e.args[i], calc));
            return acc;
        }
        case Expr::Kind::Product: {
            circle::Operator acc = build_circle(e.args[0], calc);
            for (std::size_t i = 1; i < e.args.size(); ++i) acc = circle::compose(acc, build_circle(e.args[i], calc), calc);
            return acc;
        }
    }
    throw InputError("unsupported expression");
}

circle::Projection build_circle_projection(const ProjectionSpec& p, const CalculusOptions& calc) {
    if (p.kind == "full") return circle::full_projection(p.dim, calc.depth);
    if (p.kind == "hardy") return circle::certified(circle::hardy(p.dim, calc.depth), calc);
    if (p.kind == "twisted-line") return circle::certified(circle::twisted_line(calc.depth), calc);
    if (p.kind == "constant-matrix") return circle::certified(circle::constant_matrix(p.matrix->coefficient(0), calc.depth), calc);
    if (p.kind == "complete") return core::complete_projection<circle::CircleAlgebra>(at_depth(*p.start, calc.depth), calc);
    throw InputError("unknown projection \"" + p.kind + "\"");
}

circle::Element build_circle_element(const ProblemSpec& spec, const CalculusOptions& calc) {
    const auto p0 = build_circle_projection(spec.source, calc);
    const auto p1 = build_circle_projection(spec.target, calc);
    return core::toeplitz_compress<circle::CircleAlgebra>(build_circle(spec.op, calc), p0, p1, calc);
}

sg::SGSymbol build_sg(const Expr& e, const CalculusOptions& calc) {
    const int depth = calc.depth;
    switch (e.kind) {
        case Expr::Kind::Builtin:
            if (e.builtin == "identity") return sg::SGSymbol::weight(0, 0, e.dim, depth);
            if (e.builtin == "weight") return sg::SGSymbol::weight(e.mu, e.m, e.dim, depth);
            throw InputError("unknown sg builtin \"" + e.builtin + "\"");
        case Expr::Kind::Symbol: {
            if (!e.sg_symbol) throw InputError("expected an sg symbol");
            sg::SGSymbol s = *e.sg_symbol;
            s.depth = depth;
            s.truncate();
            return s;
        }
        case Expr::Kind::Scale: return sg::scale(build_sg(e.args[0], calc), exact(e.factor));
        case Expr::Kind::Sum: {
            sg::SGSymbol acc = build_sg(e.args[0], calc);
            for (std::size_t i = 1; i < e.args.size(); ++i) acc = sg::add(acc, build_sg(e.args[i], calc));
            return acc;
        }
        case Expr::Kind::Product: {
            sg::SGSymbol acc = build_sg(e.args[0], calc);
            for (std::size_t i = 1; i < e.args.size(); ++i) acc = sg::compose(acc, build_sg(e.args[i], calc), calc);
            return acc;
        }
        case Expr::Kind::Multiplication: break;
    }
    throw InputError("expression not available for algebra sg");
}

sg::Projection build_sg_projection(const ProjectionSpec& p, const CalculusOptions& calc) {
    if (p.kind == "full") return sg::sg_full_projection(p.dim, calc.depth);
    if (p.kind == "constant-matrix") return sg::sg_constant_projection(*p.sg_matrix, calc.depth);
    throw InputError("projection not available for algebra sg");
}

sg::Element build_sg_element(const ProblemSpec& spec, const CalculusOptions& calc) {
    const auto p0 = build_sg_projection(spec.source, calc);
    const auto p1 = build_sg_projection(spec.target, calc);
    return core::toeplitz_compress<sg::SGAlgebra>(build_sg(spec.op, calc), p0, p1, calc);
}

}  // namespace toeplitz::cli
