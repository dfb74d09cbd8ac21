#include "toeplitz/lab/index.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "toeplitz/format.hpp"
#include "toeplitz/lab/spectral.hpp"

namespace toeplitz::lab {

namespace {

SectionKernel kernel_of(const CMatrix& t, int source_rank, int target_rank, double tau) {
    SectionKernel out;
    out.source_rank = source_rank;
    out.target_rank = target_rank;
    out.min_retained = std::numeric_limits<double>::infinity();
    if (source_rank == 0) return out;
    if (target_rank == 0) {
        out.dimension = source_rank;
        return out;
    }
    Eigen::BDCSVD<CMatrix> svd(t);
    const auto& sv = svd.singularValues();
    out.threshold = tau * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > out.threshold && sv(i) > 0.0) {
            ++rank;
            out.min_retained = std::min(out.min_retained, sv(i));
        }
    }
    out.dimension = source_rank - rank;
    return out;
}

}  // namespace

int tall_padding(const circle::Operator& a) { return a.bandwidth() + 2; }

SectionKernel section_kernel(const circle::Operator& a, const circle::Operator& p0, const circle::Operator& p1,
                             int M, double tau) {
    const int mr = std::max(M + tall_padding(a), a.kernel.row_extent());
    const CMatrix v0 = spectral_range(galerkin(p0, M).data);
    const CMatrix v1 = spectral_range(galerkin(p1, mr).data);
    const CMatrix t = v1.adjoint() * galerkin(a, mr, M).data * v0;
    return kernel_of(t, static_cast<int>(v0.cols()), static_cast<int>(v1.cols()), tau);
}

SectionKernel section_cokernel(const circle::Operator& a, const circle::Operator& p0, const circle::Operator& p1,
                               int M, double tau) {
    const int mr = std::max(M + tall_padding(a), a.kernel.column_extent());
    const CMatrix v_src = spectral_range(galerkin(p1, M).data.adjoint());
    const CMatrix v_dst = spectral_range(galerkin(p0, mr).data.adjoint());
    const CMatrix t = v_dst.adjoint() * galerkin(a, M, mr).data.adjoint() * v_src;
    return kernel_of(t, static_cast<int>(v_src.cols()), static_cast<int>(v_dst.cols()), tau);
}

IndexReport numerical_index(const circle::Element& t, int M, double tau, double min_margin_ratio) {
    require_resolution(t.op, M);
    IndexReport r;
    r.M = M;
    r.tau = tau;
    const auto k1 = section_kernel(t.op, t.p0.op, t.p1.op, M, tau);
    const auto c1 = section_cokernel(t.op, t.p0.op, t.p1.op, M, tau);
    const auto k2 = section_kernel(t.op, t.p0.op, t.p1.op, 2 * M, tau);
    const auto c2 = section_cokernel(t.op, t.p0.op, t.p1.op, 2 * M, tau);
    r.ker = k1.dimension;
    r.coker = c1.dimension;
    r.index = r.ker - r.coker;
    r.ker_2M = k2.dimension;
    r.coker_2M = c2.dimension;
    r.threshold = std::max(k1.threshold, c1.threshold);
    const double m1 = std::min(k1.min_retained, c1.min_retained);
    const double m2 = std::min(k2.min_retained, c2.min_retained);
    r.min_singular = std::isfinite(m1) ? m1 : 0.0;
    if (!std::isfinite(m1) && !std::isfinite(m2)) {
        r.margin_ratio = 1.0;
    } else if (!std::isfinite(m1) || !std::isfinite(m2) || m1 <= 0.0) {
        r.margin_ratio = 0.0;
    } else {
        r.margin_ratio = m2 / m1;
    }
    r.stable = r.ker == r.ker_2M && r.coker == r.coker_2M && r.margin_ratio >= min_margin_ratio;
    return r;
}

double min_abs_det(const circle::TrigPoly& f, int grid) {
    double m = std::numeric_limits<double>::infinity();
    for (int g = 0; g < grid; ++g) {
        const double theta = 2.0 * std::numbers::pi * g / grid;
        m = std::min(m, std::abs(f(theta).determinant()));
    }
    return m;
}

int winding_oracle(const circle::TrigPoly& f, int grid) {
    if (f.rows() != f.cols()) throw InputError("winding needs a square symbol");
    std::vector<cplx> d(grid);
    double scale = 0.0;
    for (int g = 0; g < grid; ++g) {
        d[g] = f(2.0 * std::numbers::pi * g / grid).determinant();
        scale = std::max(scale, std::abs(d[g]));
    }
    for (int g = 0; g < grid; ++g) {
        if (std::abs(d[g]) <= 1e-8 * std::max(scale, 1e-300)) {
            throw Unresolved("winding undefined: det f nearly vanishes at theta=" +
                             format_number(2.0 * std::numbers::pi * g / grid));
        }
    }
    double total = 0.0;
    for (int g = 0; g < grid; ++g) total += std::arg(d[(g + 1) % grid] / d[g]);
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace toeplitz::lab
