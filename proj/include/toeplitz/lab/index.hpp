#pragma once

#include <string>

#include "toeplitz/circle/algebra.hpp"
#include "toeplitz/lab/galerkin.hpp"

namespace toeplitz::lab {

/// Kernel dimension of a compressed tall section, with its singular-value margin.
struct SectionKernel {
    int dimension = 0;
    /// Smallest singular value kept as nonzero (infinity if the section is empty).
    double min_retained = 0.0;
    double threshold = 0.0;
    int source_rank = 0;
    int target_rank = 0;
};

struct IndexReport {
    int ker = 0;
    int coker = 0;
    int index = 0;
    double min_singular = 0.0;
    double threshold = 0.0;
    double tau = 1e-8;
    bool stable = false;
    /// min retained singular value at 2M divided by the one at M.
    double margin_ratio = 0.0;
    int M = 0;
    int ker_2M = 0;
    int coker_2M = 0;

    std::string verdict() const { return stable ? "resolved" : "unresolved"; }
};

/// Modes added to the row window of a tall section beyond the column window.
int tall_padding(const circle::Operator& a);

/// dim ker of V1ᴴ Gal(A; M+pad × M) V0, where V_j span the spectral ranges of Gal(P_j).
SectionKernel section_kernel(const circle::Operator& a, const circle::Operator& p0, const circle::Operator& p1,
                             int M, double tau);
/// Same for the adjoint, using Gal(A)ᴴ and the spectral ranges of Gal(P_j)ᴴ.
SectionKernel section_cokernel(const circle::Operator& a, const circle::Operator& p0, const circle::Operator& p1,
                               int M, double tau);

/// Fredholm data at M, confirmed at 2M. Stable requires equal (ker, coker) and a
/// singular-value margin ratio of at least `min_margin_ratio`.
IndexReport numerical_index(const circle::Element& t, int M, double tau = 1e-8, double min_margin_ratio = 0.75);

/// Winding number of det f(θ) over a uniform grid; throws Unresolved("winding undefined")
/// when |det f| nearly vanishes on the grid.
int winding_oracle(const circle::TrigPoly& f, int grid = 256);

/// Minimum of |det f(θ)| on the grid.
double min_abs_det(const circle::TrigPoly& f, int grid);

}  // namespace toeplitz::lab
