#include "toeplitz/circle/builtins.hpp"

#include <numeric>

namespace toeplitz::circle {

namespace {

Operator with_symbol(ClassicalSymbol s) {
    SmoothingKernel k(s.rows, s.cols);
    return {std::move(s), std::move(k), 0.0, std::nullopt};
}

}  // namespace

Operator CircleAlgebra::identity(int dim, int depth) { return circle::identity(dim, depth); }

Operator identity(int dim, int depth) {
    return homogeneous_power(0, dim, depth);
}

Operator multiplication(const TrigPoly& f, int depth) {
    auto s = ClassicalSymbol::zero(0, depth, f.rows(), f.cols());
    s.comps[0].plus = f;
    s.comps[0].minus = f;
    Operator op = with_symbol(std::move(s));
    for (const auto& [m, c] : f.coefficients()) op.kernel.add(m, 0, c);
    return op;
}

Operator hardy(int dim, int depth) {
    auto s = ClassicalSymbol::zero(0, depth, dim, dim);
    s.comps[0].plus = TrigPoly::identity(dim);
    Operator op = with_symbol(std::move(s));
    op.kernel.add(0, 0, CMatrix::Identity(dim, dim));
    return op;
}

Operator constant_matrix(const CMatrix& c, int depth) { return multiplication(TrigPoly::constant(c), depth); }

TrigPoly twisted_line_symbol() {
    TrigPoly p(2, 2);
    CMatrix c0 = CMatrix::Identity(2, 2) * 0.5;
    CMatrix cp = CMatrix::Zero(2, 2);
    cp(1, 0) = 0.5;
    p.add_coefficient(0, c0);
    p.add_coefficient(1, cp);
    p.add_coefficient(-1, cp.transpose());
    return p;
}

Operator twisted_line(int depth) { return multiplication(twisted_line_symbol(), depth); }

Operator derivative(int dim, int depth) {
    auto s = ClassicalSymbol::zero(1, depth, dim, dim);
    s.comps[0].plus = TrigPoly::identity(dim);
    s.comps[0].minus = -1.0 * TrigPoly::identity(dim);
    return with_symbol(std::move(s));
}

double half_binomial(int p, int k) {
    long long num = 1;
    long long den = 1;
    for (int i = 0; i < k; ++i) {
        num *= (p - 2 * i);
        den *= 2 * (i + 1);
        const long long g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

Operator bracket_power(int mu, int dim, int depth) {
    auto s = ClassicalSymbol::zero(mu, depth, dim, dim);
    for (int k = 0; 2 * k < depth; ++k) {
        const double c = half_binomial(mu, k);
        if (c == 0.0) break;
        s.comps[2 * k].plus = c * TrigPoly::identity(dim);
        s.comps[2 * k].minus = c * TrigPoly::identity(dim);
    }
    Operator op = with_symbol(std::move(s));
    op.kernel.add(0, 0, CMatrix::Identity(dim, dim));
    return op;
}

Operator homogeneous_power(int mu, int dim, int depth) {
    auto s = ClassicalSymbol::zero(mu, depth, dim, dim);
    s.comps[0].plus = TrigPoly::identity(dim);
    s.comps[0].minus = TrigPoly::identity(dim);
    Operator op = with_symbol(std::move(s));
    op.kernel.add(0, 0, CMatrix::Identity(dim, dim));
    return op;
}

Operator from_principal(const TrigPoly& plus, const TrigPoly& minus, int depth) {
    auto s = ClassicalSymbol::zero(0, depth, plus.rows(), plus.cols());
    s.comps[0].plus = plus;
    s.comps[0].minus = minus;
    return with_symbol(std::move(s));
}

}  // namespace toeplitz::circle
