#pragma once

#include "toeplitz/common.hpp"

namespace toeplitz::lab {

/// Orthonormal basis of the spectral subspace of g for eigenvalues with real part > 1/2.
///
/// Diagonal and Hermitian inputs are handled directly; other near-idempotent
/// matrices go through the Newton iteration for the matrix sign of 2g - 1.
CMatrix spectral_range(const CMatrix& g);

/// Largest distance of an eigenvalue of g from the set {0, 1}.
double idempotency_spread(const CMatrix& g);

/// Relative Hermitian defect ‖g - gᴴ‖ / max(1, ‖g‖) (Frobenius).
double hermitian_defect(const CMatrix& g);

}  // namespace toeplitz::lab
