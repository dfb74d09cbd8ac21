#pragma once

#include <string>

#include "toeplitz/lab/galerkin.hpp"

namespace toeplitz::lab {

/// Binary layout, little-endian: "TCGM", u32 version (1), u64 rows, u64 cols, i64 M,
/// u32 provenance length, provenance bytes, then rows*cols complex doubles (re, im) row-major.
void export_matrix(const std::string& path, const GalerkinMatrix& g);

/// Reads a file written by export_matrix. Block sizes are inferred from cols = (2M+1)·block,
/// assuming square blocks.
GalerkinMatrix import_matrix(const std::string& path);

}  // namespace toeplitz::lab
