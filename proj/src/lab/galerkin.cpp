#include "toeplitz/lab/galerkin.hpp"

#include <cmath>
#include <sstream>

#include "toeplitz/parallel.hpp"

namespace toeplitz::lab {

namespace {

std::vector<Eigen::Index> band(int modes, int block, int lo, int hi) {
    std::vector<Eigen::Index> idx;
    for (int m = -modes; m <= modes; ++m) {
        const int a = std::abs(m);
        if (a < lo || a > hi) continue;
        for (int i = 0; i < block; ++i) idx.push_back(Eigen::Index(m + modes) * block + i);
    }
    return idx;
}

}  // namespace

std::vector<Eigen::Index> GalerkinMatrix::row_band(int lo, int hi) const {
    return band(row_modes, block_rows, lo, hi);
}

std::vector<Eigen::Index> GalerkinMatrix::col_band(int lo, int hi) const {
    return band(col_modes, block_cols, lo, hi);
}

GalerkinMatrix galerkin(const circle::Operator& op, int M, const std::string& label) {
    return galerkin(op, M, M, label);
}

void require_resolution(const circle::Operator& op, int M) {
    const int k = op.bandwidth();
    if (M < k) {
        std::ostringstream os;
        os << "resolution M=" << M << " is below the symbol bandwidth K=" << k;
        throw InputError(os.str());
    }
}

GalerkinMatrix galerkin(const circle::Operator& op, int row_modes, int col_modes, const std::string& label) {
    if (row_modes < 0 || col_modes < 0) throw InputError("resolution must be nonnegative");
    GalerkinMatrix g;
    g.row_modes = row_modes;
    g.col_modes = col_modes;
    g.block_rows = op.rows();
    g.block_cols = op.cols();
    g.data = CMatrix::Zero(Eigen::Index(2 * row_modes + 1) * g.block_rows,
                           Eigen::Index(2 * col_modes + 1) * g.block_cols);
    std::ostringstream prov;
    prov << (label.empty() ? "operator" : label) << "; order " << op.order() << "; M=" << row_modes;
    if (row_modes != col_modes) prov << "x" << col_modes;
    prov << "; zero excision chi(0)=0";
    if (op.resolution) prov << "; dense kernel at M=" << *op.resolution;
    g.provenance = prov.str();

    parallel_for(static_cast<std::size_t>(2 * col_modes + 1), [&](std::size_t i) {
        const int n = static_cast<int>(i) - col_modes;
        for (const auto& [m, block] : circle::column(op, n)) {
            if (std::abs(m) > row_modes) continue;
            g.data.block(g.row_index(m), g.col_index(n), g.block_rows, g.block_cols) = block;
        }
    });
    return g;
}

GalerkinMatrix weighted(const GalerkinMatrix& g, double s_row, double s_col) {
    GalerkinMatrix out = g;
    for (int m = -g.row_modes; m <= g.row_modes; ++m) {
        const double w = std::pow(1.0 + double(m) * m, s_row / 2.0);
        out.data.middleRows(g.row_index(m), g.block_rows) *= w;
    }
    for (int n = -g.col_modes; n <= g.col_modes; ++n) {
        const double w = std::pow(1.0 + double(n) * n, s_col / 2.0);
        out.data.middleCols(g.col_index(n), g.block_cols) *= w;
    }
    out.sobolev_s = s_col;
    return out;
}

CMatrix select(const CMatrix& m, const std::vector<Eigen::Index>& rows, const std::vector<Eigen::Index>& cols) {
    CMatrix out(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < rows.size(); ++i) out(i, j) = m(rows[i], cols[j]);
    }
    return out;
}

double spectral_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double interior_norm(const GalerkinMatrix& g) {
    const int M = g.col_modes;
    return spectral_norm(select(g.data, g.row_band(0, g.row_modes / 2), g.col_band(M / 4 + 1, M / 2)));
}

}  // namespace toeplitz::lab
