#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "toeplitz/circle/builtins.hpp"
#include "toeplitz/circle/ellipticity.hpp"
#include "toeplitz/lab/galerkin.hpp"

namespace testing {

using namespace toeplitz;
using circle::Operator;
using circle::TrigPoly;

inline CMatrix scalar(cplx v) { return CMatrix::Constant(1, 1, v); }

inline TrigPoly exp_mode(int k, int dim = 1) { return TrigPoly::monomial(k, CMatrix::Identity(dim, dim)); }

/// Trigonometric polynomial with small integer coefficients (real and imaginary parts in [-2, 2]).
inline TrigPoly random_integer_trig(std::mt19937_64& rng, int rows, int cols, int k) {
    std::uniform_int_distribution<int> d(-2, 2);
    TrigPoly p(rows, cols);
    for (int n = -k; n <= k; ++n) {
        CMatrix c(rows, cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) c(i, j) = cplx(d(rng), d(rng));
        }
        p.add_coefficient(n, c);
    }
    return p;
}

/// Trigonometric polynomial with coefficients uniform in the unit square, scaled by `amp`.
inline TrigPoly random_real_trig(std::mt19937_64& rng, int rows, int cols, int k, double amp = 1.0) {
    std::uniform_real_distribution<double> d(-amp, amp);
    TrigPoly p(rows, cols);
    for (int n = -k; n <= k; ++n) {
        CMatrix c(rows, cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) c(i, j) = cplx(d(rng), d(rng));
        }
        p.add_coefficient(n, c);
    }
    return p;
}

/// Symbol with every retained component random (no kernel).
inline Operator random_symbol(std::mt19937_64& rng, int order, int depth, int rows, int cols, int k,
                              bool integer) {
    auto s = circle::ClassicalSymbol::zero(order, depth, rows, cols);
    for (auto& c : s.comps) {
        c.plus = integer ? random_integer_trig(rng, rows, cols, k) : random_real_trig(rng, rows, cols, k);
        c.minus = integer ? random_integer_trig(rng, rows, cols, k) : random_real_trig(rng, rows, cols, k);
    }
    return {s, circle::SmoothingKernel(rows, cols), 0.0, std::nullopt};
}

/// Symbol value a(θ, ξ) for ξ != 0, evaluated from the components directly.
inline CMatrix symbol_value(const circle::ClassicalSymbol& s, double theta, int xi) {
    CMatrix v = CMatrix::Zero(s.rows, s.cols);
    for (const auto& c : s.comps) {
        v += std::pow(std::abs(double(xi)), c.degree) * c.branch(xi > 0 ? 1 : -1)(theta);
    }
    return v;
}

/// Independent Galerkin oracle: entry (m, n) = (1/N) Σ_θ a(θ, n) e^{-i(m-n)θ} by quadrature,
/// plus kernel entries; n = 0 contributes the kernel only.
inline CMatrix quadrature_galerkin(const Operator& op, int M, int samples = 256) {
    const int r = op.rows();
    const int c = op.cols();
    CMatrix g = CMatrix::Zero((2 * M + 1) * r, (2 * M + 1) * c);
    for (int n = -M; n <= M; ++n) {
        if (n == 0) continue;
        std::vector<CMatrix> vals(samples);
        for (int s = 0; s < samples; ++s) vals[s] = symbol_value(op.symbol, 2.0 * std::numbers::pi * s / samples, n);
        for (int m = -M; m <= M; ++m) {
            CMatrix e = CMatrix::Zero(r, c);
            for (int s = 0; s < samples; ++s) {
                e += std::polar(1.0, -2.0 * std::numbers::pi * (m - n) * s / samples) * vals[s];
            }
            g.block((m + M) * r, (n + M) * c, r, c) = e / double(samples);
        }
    }
    for (const auto& [n, col] : op.kernel.columns()) {
        for (const auto& [m, b] : col) {
            if (std::abs(m) <= M && std::abs(n) <= M) g.block((m + M) * r, (n + M) * c, r, c) += b;
        }
    }
    return g;
}

/// Interior band used for composition comparisons: columns M/4 < |n| <= M/2, rows |m| <= M/2.
inline double interior_discrepancy(const lab::GalerkinMatrix& shape, const CMatrix& diff) {
    const int M = shape.col_modes;
    const auto rows = shape.row_band(0, M / 2);
    const auto cols = shape.col_band(M / 4 + 1, M / 2);
    return lab::spectral_norm(lab::select(diff, rows, cols));
}

/// Least-squares slope of log(err) against log(M).
inline double loglog_slope(const std::vector<double>& ms, const std::vector<double>& errs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const double x = std::log(ms[i]);
        const double y = std::log(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testing
