#pragma once

#include "toeplitz/circle/algebra.hpp"

namespace toeplitz::circle {

/// Identity; the kernel restores mode 0 removed by zero excision.
Operator identity(int dim, int depth);
/// Multiplication by f; column 0 of the kernel holds the Fourier coefficients of f.
Operator multiplication(const TrigPoly& f, int depth);
/// Projection onto modes n >= 0 (tensored with the identity on C^dim).
Operator hardy(int dim, int depth);
/// Multiplication by a constant matrix.
Operator constant_matrix(const CMatrix& c, int depth);
/// π(θ) = ½[[1, e^{-iθ}], [e^{iθ}, 1]], a rank-1 projection at every θ.
TrigPoly twisted_line_symbol();
Operator twisted_line(int depth);
/// D = -i d/dθ.
Operator derivative(int dim, int depth);
/// ⟨D⟩^μ: homogeneous expansion of (1+ξ²)^{μ/2}, nonzero only at even levels.
Operator bracket_power(int mu, int dim, int depth);
/// |D|^μ + Π₀, where Π₀ is the projection onto mode 0; exact inverse pairs for all μ.
Operator homogeneous_power(int mu, int dim, int depth);
/// Operator with a given principal part (π⁺, π⁻) at order 0 and no kernel.
Operator from_principal(const TrigPoly& plus, const TrigPoly& minus, int depth);

/// C((p/2), k) as an exact dyadic double.
double half_binomial(int p, int k);

}  // namespace toeplitz::circle
