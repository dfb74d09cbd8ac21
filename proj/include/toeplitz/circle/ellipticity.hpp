#pragma once

#include <array>
#include <string>

#include "toeplitz/circle/algebra.hpp"

namespace toeplitz::circle {

struct BranchData {
    int sign = 1;
    TrigPoly pi0;
    TrigPoly pi1;
    TrigPoly sigma;
    int r0 = 0;
    int r1 = 0;
};

/// Principal matrices of A, P0, P1 on both ξ-branches with their (constant) ranks.
struct RestrictedSymbolData {
    int order = 0;
    std::array<BranchData, 2> branches;  // [0] = ξ > 0, [1] = ξ < 0

    const BranchData& branch(int sign) const { return branches[sign > 0 ? 0 : 1]; }
    /// Q1ᴴ σ(θ) Q0 in orthonormal bases of range π0(θ) and range π1(θ).
    CMatrix restricted(int sign, double theta) const;
};

/// Orthonormal basis of the column space of m (pivoted QR, relative threshold 1e-10).
CMatrix range_basis(const CMatrix& m);

/// Throws InputError("invalid projection symbol") if a rank varies over the G-point grid.
RestrictedSymbolData principal_and_restricted(const Operator& a, const Operator& p0, const Operator& p1,
                                              int grid);

struct Certificate {
    bool elliptic = false;
    double min_singular = 0.0;
    std::string witness;  // empty when elliptic
    std::string reason;
    int grid = 0;
    double kappa = 0.0;
    int bandwidth = 0;
};

/// Grid certificate for the restricted principal symbol of t (G uniform θ samples per branch).
Certificate check_ellipticity(const Element& t, int grid, double kappa);

/// Full-algebra candidate c = (aᴴa + (1-π0)ᴴ(1-π0))⁻¹ aᴴ, a = π1σπ0, on each branch,
/// of order -μ. Exact when the pointwise determinants are monomials.
Operator pointwise_candidate(const Element& t, const CalculusOptions& opt);

/// Ambient solver for order-0 square operators: pointwise inverse of the principal
/// symbol followed by the bootstrap with identity projections.
core::AmbientSolver<CircleAlgebra> ambient_solver(const CalculusOptions& opt, int grid, double kappa);

/// Parametrix from pointwise candidates (full-algebra kind) through the Neumann bootstrap.
Parametrix symbol_parametrix(const Element& t, const CalculusOptions& opt);

/// Full projections (identity) wrapped as certified handles.
Projection full_projection(int dim, int depth);
Projection certified(const Operator& p, const CalculusOptions& opt);

struct ReductionPair {
    Operator forward;
    Operator inverse;
    /// Leading levels of forward#inverse - P and inverse#forward - P.
    std::optional<int> left_level;
    std::optional<int> right_level;
};

/// ⟨D⟩^{±μ} pair (no projection).
ReductionPair order_reduction(int mu, int dim, const CalculusOptions& opt);

core::ReductionFamily<CircleAlgebra> bracket_family(int depth);
core::ReductionFamily<CircleAlgebra> homogeneous_family(int depth);

}  // namespace toeplitz::circle
