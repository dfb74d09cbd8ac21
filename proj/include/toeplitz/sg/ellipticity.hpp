#pragma once

#include <string>

#include "toeplitz/sg/symbol.hpp"

namespace toeplitz::sg {

struct SGCertificate {
    bool elliptic = false;
    double min_singular = 0.0;
    std::string witness;
    std::string reason;
    int x_grid = 0;
    int xi_grid = 0;
    double kappa = 0.0;
    /// Ranks of the restricted corner maps and of the projection corners, (sx, sξ) ordered ++, +-, -+, --.
    std::array<int, 4> corner_ranks{};
};

/// Grid points x = tan(πt/2) on an odd uniform t-grid in (-1, 1) containing 0.
std::vector<double> compactified_grid(int grid);

/// Corners exactly (rational ranks); σ^μ on the x-grid and σ_m on the ξ-grid, normalized
/// by ⟨x⟩^{-m} and ⟨ξ⟩^{-μ}, with smallest restricted singular value >= 1/κ.
SGCertificate check_ellipticity(const Element& t, int x_grid, int xi_grid, double kappa);

/// Parametrix from the monomial-type leading part, bootstrapped to bi-order <= (-J, -J).
/// Throws InputError("candidate required") for other leading parts.
Parametrix sg_parametrix(const Element& t, const CalculusOptions& opt);
/// Same with a user-supplied candidate (full-algebra kind).
Parametrix sg_parametrix(const Element& t, const SGSymbol& candidate, const CalculusOptions& opt);

struct SGReductionPair {
    SGSymbol forward;
    SGSymbol inverse;
    /// Leading level of forward#candidate - 1 before bootstrapping, and of forward#inverse - 1 after.
    std::optional<int> level_before;
    std::optional<int> level_after;
};

/// ⟨x⟩^m⟨ξ⟩^μ·I and its calculus inverse.
SGReductionPair sg_order_reduction(int mu, int m, int dim, const CalculusOptions& opt);

/// Projection handles: identity or a constant matrix projection (exact idempotent).
Projection sg_full_projection(int dim, int depth);
Projection sg_constant_projection(const QMatrix& p, int depth);

}  // namespace toeplitz::sg
