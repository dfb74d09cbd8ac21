#include "toeplitz/lab/spectral.hpp"

#include <cmath>

namespace toeplitz::lab {

namespace {

bool is_diagonal(const CMatrix& g) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            if (i != j && g(i, j) != cplx{}) return false;
        }
    }
    return true;
}

// Eigenvalues exactly at 1/2 (unpaired boundary modes of a section) are sent to the
// kernel side, as in the Hermitian branch.
constexpr double kMidShift = 1e-6;

CMatrix sign_projection(const CMatrix& g) {
    const Eigen::Index n = g.rows();
    CMatrix x = 2.0 * g - (1.0 + kMidShift) * CMatrix::Identity(n, n);
    for (int it = 0; it < 100; ++it) {
        Eigen::PartialPivLU<CMatrix> lu(x);
        CMatrix next = 0.5 * (x + lu.inverse());
        const double change = (next - x).norm() / std::max(1.0, next.norm());
        x = std::move(next);
        if (change < 1e-14) break;
    }
    return 0.5 * (x + CMatrix::Identity(n, n));
}

}  // namespace

CMatrix spectral_range(const CMatrix& g) {
    const Eigen::Index n = g.rows();
    if (n == 0) return CMatrix(0, 0);
    if (is_diagonal(g)) {
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (g(i, i).real() > 0.5) keep.push_back(i);
        }
        CMatrix v = CMatrix::Zero(n, keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j) v(keep[j], j) = 1.0;
        return v;
    }
    if (hermitian_defect(g) <= 1e-12) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (g + g.adjoint()));
        const auto& ev = es.eigenvalues();
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (ev(i) > 0.5) keep.push_back(i);
        }
        CMatrix v(n, keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j) v.col(j) = es.eigenvectors().col(keep[j]);
        return v;
    }
    const CMatrix p = sign_projection(g);
    if (!p.allFinite()) throw Unresolved("spectral projection undefined: section has eigenvalues on Re = 1/2");
    const auto rank = static_cast<Eigen::Index>(std::llround(p.trace().real()));
    Eigen::ColPivHouseholderQR<CMatrix> qr(p);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, rank);
    return q;
}

double idempotency_spread(const CMatrix& g) {
    if (g.size() == 0) return 0.0;
    Eigen::ComplexEigenSolver<CMatrix> es(g, false);
    double spread = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        const cplx l = es.eigenvalues()(i);
        spread = std::max(spread, std::min(std::abs(l), std::abs(l - 1.0)));
    }
    return spread;
}

double hermitian_defect(const CMatrix& g) {
    return (g - g.adjoint()).norm() / std::max(1.0, g.norm());
}

}  // namespace toeplitz::lab
