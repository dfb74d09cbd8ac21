#pragma once

#include "toeplitz/circle/ellipticity.hpp"
#include "toeplitz/lab/index.hpp"

namespace toeplitz::lab {

struct InverseOptions {
    int M = 128;
    double tau = 1e-8;
    /// Largest admissible condition number of the compressed section.
    double cond = 1e8;
};

struct SpectralInverse {
    circle::Element inverse;
    IndexReport index;
    double condition = 0.0;
    /// ‖Gal(B)Gal(A) - Gal(P0)‖ and ‖Gal(A)Gal(B) - Gal(P1)‖ at resolution M (spectral norm).
    double left_residual = 0.0;
    double right_residual = 0.0;
};

/// B + R0#B + R0#(P0 A⁻¹ P1)#R1 with R0 = P0 - B#A, R1 = P1 - A#B.
///
/// The middle factor is evaluated on the spectral subspaces of Gal(P_j) at resolution M;
/// the returned handle keeps the symbol of B + R0#B and stores the dense remainder as a
/// kernel tagged with M, so its section at M is the discrete inverse.
SpectralInverse spectral_inverse(const circle::Element& a, const circle::Parametrix& b, const InverseOptions& opt,
                                 const CalculusOptions& calc);

struct ToeplitzReduction {
    circle::Element forward;  // P # ⟨D⟩^μ # P
    circle::Element inverse;  // R^{-μ}
    /// Smallest eigenvalue of the Hermitian part of Gal(P S P + (1-P) S (1-P)).
    double positivity_margin = 0.0;
    /// ‖Gal(R^μ)Gal(R^{-μ}) - Gal(P)‖ at M.
    double pair_residual = 0.0;
    std::optional<int> bootstrap_level;
};

/// Order reduction inside the range of an orthogonal projection P.
ToeplitzReduction toeplitz_order_reduction(int mu, const circle::Projection& p, const InverseOptions& opt,
                                           const CalculusOptions& calc);

}  // namespace toeplitz::lab
