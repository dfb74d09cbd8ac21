#include "toeplitz/circle/trig_poly.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace toeplitz::circle {

namespace {

bool exactly_zero(const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        if (m.data()[i] != cplx{}) return false;
    }
    return true;
}

void require_same_shape(const TrigPoly& a, const TrigPoly& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << "trigonometric polynomial " << op << ": shape " << a.rows() << "x" << a.cols()
           << " vs " << b.rows() << "x" << b.cols();
        throw InputError(os.str());
    }
}

}  // namespace

TrigPoly TrigPoly::constant(const CMatrix& c) { return monomial(0, c); }

TrigPoly TrigPoly::monomial(int mode, const CMatrix& c) {
    TrigPoly p(static_cast<int>(c.rows()), static_cast<int>(c.cols()));
    p.add_coefficient(mode, c);
    return p;
}

TrigPoly TrigPoly::identity(int dim) { return constant(CMatrix::Identity(dim, dim)); }

int TrigPoly::bandwidth() const {
    int k = 0;
    for (const auto& [n, c] : coeffs_) k = std::max(k, std::abs(n));
    return k;
}

CMatrix TrigPoly::coefficient(int mode) const {
    auto it = coeffs_.find(mode);
    if (it == coeffs_.end()) return CMatrix::Zero(rows_, cols_);
    return it->second;
}

void TrigPoly::add_coefficient(int mode, const CMatrix& c) {
    if (c.rows() != rows_ || c.cols() != cols_) {
        throw InputError("trigonometric coefficient has wrong shape");
    }
    auto it = coeffs_.find(mode);
    if (it == coeffs_.end()) {
        if (!exactly_zero(c)) coeffs_.emplace(mode, c);
        return;
    }
    it->second += c;
    if (exactly_zero(it->second)) coeffs_.erase(it);
}

CMatrix TrigPoly::operator()(double theta) const {
    CMatrix v = CMatrix::Zero(rows_, cols_);
    for (const auto& [n, c] : coeffs_) v += std::polar(1.0, n * theta) * c;
    return v;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
    require_same_shape(*this, other, "sum");
    for (const auto& [n, c] : other.coeffs_) add_coefficient(n, c);
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& other) {
    require_same_shape(*this, other, "difference");
    for (const auto& [n, c] : other.coeffs_) add_coefficient(n, -c);
    return *this;
}

TrigPoly& TrigPoly::operator*=(cplx s) {
    if (s == cplx{}) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [n, c] : coeffs_) c *= s;
    return *this;
}

TrigPoly TrigPoly::adjoint() const {
    TrigPoly out(cols_, rows_);
    for (const auto& [n, c] : coeffs_) out.coeffs_.emplace(-n, c.adjoint());
    return out;
}

TrigPoly TrigPoly::derivative(int alpha) const {
    if (alpha == 0) return *this;
    TrigPoly out(rows_, cols_);
    for (const auto& [n, c] : coeffs_) {
        if (n == 0) continue;
        double f = 1.0;
        for (int i = 0; i < alpha; ++i) f *= n;
        out.coeffs_.emplace(n, f * c);
    }
    return out;
}

double TrigPoly::max_abs() const {
    double m = 0.0;
    for (const auto& [n, c] : coeffs_) m = std::max(m, c.cwiseAbs().maxCoeff());
    return m;
}

TrigPoly TrigPoly::pruned(double tol) const {
    TrigPoly out(rows_, cols_);
    for (const auto& [n, c] : coeffs_) {
        if (c.cwiseAbs().maxCoeff() > tol) out.coeffs_.emplace(n, c);
    }
    return out;
}

TrigPoly TrigPoly::truncated(int cap, double& discarded) const {
    TrigPoly out(rows_, cols_);
    for (const auto& [n, c] : coeffs_) {
        if (std::abs(n) <= cap) {
            out.coeffs_.emplace(n, c);
        } else {
            discarded += c.norm();
        }
    }
    return out;
}

bool TrigPoly::operator==(const TrigPoly& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    if (coeffs_.size() != other.coeffs_.size()) return false;
    for (auto a = coeffs_.begin(), b = other.coeffs_.begin(); a != coeffs_.end(); ++a, ++b) {
        if (a->first != b->first || a->second != b->second) return false;
    }
    return true;
}

TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
TrigPoly operator*(cplx s, TrigPoly a) { return a *= s; }

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    if (a.cols() != b.rows()) throw InputError("trigonometric polynomial product: inner dimension mismatch");
    TrigPoly out(a.rows(), b.cols());
    for (const auto& [n, ca] : a.coefficients()) {
        for (const auto& [k, cb] : b.coefficients()) out.add_coefficient(n + k, ca * cb);
    }
    return out;
}

namespace {

TrigPoly entry(const TrigPoly& a, int i, int j) {
    TrigPoly out(1, 1);
    for (const auto& [n, c] : a.coefficients()) out.add_coefficient(n, c.block(i, j, 1, 1));
    return out;
}

TrigPoly minor_of(const TrigPoly& a, int skip_row, int skip_col) {
    const int d = a.rows();
    TrigPoly out(d - 1, d - 1);
    for (const auto& [n, c] : a.coefficients()) {
        CMatrix m(d - 1, d - 1);
        for (int i = 0, r = 0; i < d; ++i) {
            if (i == skip_row) continue;
            for (int j = 0, s = 0; j < d; ++j) {
                if (j == skip_col) continue;
                m(r, s++) = c(i, j);
            }
            ++r;
        }
        out.add_coefficient(n, m);
    }
    return out;
}

}  // namespace

TrigPoly determinant(const TrigPoly& a) {
    if (a.rows() != a.cols()) throw InputError("determinant of a non-square symbol");
    const int d = a.rows();
    if (d > 4) throw InputError("symbolic determinant supports dimensions up to 4");
    if (d == 1) return a;
    TrigPoly det(1, 1);
    for (int j = 0; j < d; ++j) {
        TrigPoly term = entry(a, 0, j) * determinant(minor_of(a, 0, j));
        if (j % 2 == 0) det += term; else det -= term;
    }
    return det;
}

TrigPoly adjugate(const TrigPoly& a) {
    const int d = a.rows();
    TrigPoly adj(d, d);
    if (d == 1) return TrigPoly::identity(1);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            TrigPoly cof = determinant(minor_of(a, i, j));
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            for (const auto& [n, c] : cof.coefficients()) {
                CMatrix m = CMatrix::Zero(d, d);
                m(j, i) = sign * c(0, 0);
                adj.add_coefficient(n, m);
            }
        }
    }
    return adj;
}

namespace {

TrigPoly sampled_inverse(const TrigPoly& a, double tol) {
    const int d = a.rows();
    const int k = a.bandwidth();
    int samples = 64;
    while (samples < 8 * (k + 1)) samples *= 2;
    TrigPoly previous;
    bool have_previous = false;
    for (; samples <= (1 << 16); samples *= 2) {
        std::vector<CMatrix> values(samples);
        for (int s = 0; s < samples; ++s) {
            const double theta = 2.0 * std::numbers::pi * s / samples;
            const CMatrix v = a(theta);
            Eigen::JacobiSVD<CMatrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
            const auto& sv = svd.singularValues();
            if (sv(sv.size() - 1) <= 1e-14 * std::max(1.0, sv(0))) {
                std::ostringstream os;
                os << "theta=" << theta;
                throw NotElliptic("symbol is not invertible", os.str());
            }
            values[s] = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
        }
        TrigPoly out(d, d);
        const int half = samples / 2;
        for (int n = -half + 1; n < half; ++n) {
            CMatrix c = CMatrix::Zero(d, d);
            for (int s = 0; s < samples; ++s) {
                c += std::polar(1.0, -2.0 * std::numbers::pi * n * s / samples) * values[s];
            }
            c /= static_cast<double>(samples);
            out.add_coefficient(n, c);
        }
        double scale = std::max(out.max_abs(), 1.0);
        out = out.pruned(tol * scale);
        if (have_previous) {
            TrigPoly diff = out - previous;
            if (diff.max_abs() <= 10.0 * tol * scale) return out;
        }
        previous = out;
        have_previous = true;
    }
    throw Unresolved("pointwise symbol inverse did not converge");
}

}  // namespace

TrigPoly inverse(const TrigPoly& a, double tol) {
    if (a.rows() != a.cols()) throw InputError("inverse of a non-square symbol");
    if (a.rows() <= 4) {
        const TrigPoly det = determinant(a);
        const double scale = det.max_abs();
        if (scale == 0.0) throw NotElliptic("symbol determinant vanishes identically", "theta=0");
        const TrigPoly lead = det.pruned(tol * scale);
        if (lead.coefficients().size() == 1) {
            const auto& [k, c] = *lead.coefficients().begin();
            // conj(c)/|c|^2 keeps unit and dyadic leading coefficients exact
            const cplx inv_c = std::conj(c(0, 0)) / std::norm(c(0, 0));
            TrigPoly out(a.rows(), a.cols());
            const TrigPoly adj = adjugate(a);
            for (const auto& [n, m] : adj.coefficients()) {
                out.add_coefficient(n - k, m * inv_c);
            }
            return out;
        }
    }
    return sampled_inverse(a, tol);
}

}  // namespace toeplitz::circle
