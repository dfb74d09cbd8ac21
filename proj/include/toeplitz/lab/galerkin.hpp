#pragma once

#include <optional>
#include <string>

#include "toeplitz/circle/symbol.hpp"

namespace toeplitz::lab {

/// Dense Fourier–Galerkin section. Block (m, n) sits at rows (m+Mr)*block_rows and
/// columns (n+Mc)*block_cols for modes |m| <= Mr, |n| <= Mc.
struct GalerkinMatrix {
    CMatrix data;
    int row_modes = 0;  // Mr
    int col_modes = 0;  // Mc
    int block_rows = 1;
    int block_cols = 1;
    std::string provenance;
    std::optional<double> sobolev_s;

    Eigen::Index row_index(int m, int i = 0) const { return Eigen::Index(m + row_modes) * block_rows + i; }
    Eigen::Index col_index(int n, int j = 0) const { return Eigen::Index(n + col_modes) * block_cols + j; }
    /// Rows/columns for modes lo <= |mode| <= hi (used for interior comparisons).
    std::vector<Eigen::Index> row_band(int lo, int hi) const;
    std::vector<Eigen::Index> col_band(int lo, int hi) const;
};

/// Throws InputError when M is below the symbol bandwidth of op. Sections of user
/// operators are only meaningful once the window holds every coefficient mode.
void require_resolution(const circle::Operator& op, int M);

/// Galerkin section on modes -M..M (square window). Coefficients beyond the window are cut.
GalerkinMatrix galerkin(const circle::Operator& op, int M, const std::string& label = "");
/// Galerkin section with independent row/column windows (tall or wide sections).
GalerkinMatrix galerkin(const circle::Operator& op, int row_modes, int col_modes, const std::string& label = "");

/// Rows scaled by ⟨m⟩^{s_row}, columns by ⟨n⟩^{s_col}.
GalerkinMatrix weighted(const GalerkinMatrix& g, double s_row, double s_col);

/// Submatrix picking the given row and column indices.
CMatrix select(const CMatrix& m, const std::vector<Eigen::Index>& rows, const std::vector<Eigen::Index>& cols);

/// Largest singular value (spectral norm).
double spectral_norm(const CMatrix& m);

/// Spectral norm on the interior window: rows |m| <= M/2, columns M/4 < |n| <= M/2.
/// Away from mode 0 (finite-rank corrections) and from the section boundary.
double interior_norm(const GalerkinMatrix& g);

}  // namespace toeplitz::lab
