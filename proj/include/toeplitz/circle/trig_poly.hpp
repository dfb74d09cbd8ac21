#pragma once

#include <map>

#include "toeplitz/common.hpp"

namespace toeplitz::circle {

/// Matrix-valued trigonometric polynomial c(θ) = Σ_n c_n e^{inθ}.
///
/// Only nonzero coefficients are stored; the bandwidth is the largest |n|
/// present and grows additively under products.
class TrigPoly {
public:
    TrigPoly() = default;
    TrigPoly(int rows, int cols) : rows_(rows), cols_(cols) {}

    static TrigPoly constant(const CMatrix& c);
    static TrigPoly monomial(int mode, const CMatrix& c);
    static TrigPoly identity(int dim);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int bandwidth() const;
    bool is_zero() const { return coeffs_.empty(); }

    const std::map<int, CMatrix>& coefficients() const { return coeffs_; }
    CMatrix coefficient(int mode) const;
    void add_coefficient(int mode, const CMatrix& c);

    CMatrix operator()(double theta) const;

    TrigPoly& operator+=(const TrigPoly& other);
    TrigPoly& operator-=(const TrigPoly& other);
    TrigPoly& operator*=(cplx s);

    /// Pointwise conjugate transpose: c_n -> c_{-n}^H.
    TrigPoly adjoint() const;
    /// D_θ^α with D_θ = -i ∂_θ, i.e. c_n -> n^α c_n.
    TrigPoly derivative(int alpha) const;

    double max_abs() const;
    /// Drops modes whose largest entry is <= tol.
    TrigPoly pruned(double tol) const;
    /// Keeps |n| <= cap; the Frobenius mass of dropped modes is added to `discarded`.
    TrigPoly truncated(int cap, double& discarded) const;

    bool operator==(const TrigPoly& other) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::map<int, CMatrix> coeffs_;
};

TrigPoly operator+(TrigPoly a, const TrigPoly& b);
TrigPoly operator-(TrigPoly a, const TrigPoly& b);
TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator*(cplx s, TrigPoly a);

/// Determinant of a square trigonometric polynomial (cofactor expansion; dims <= 4).
TrigPoly determinant(const TrigPoly& a);
/// Adjugate (transposed cofactor matrix) of a square trigonometric polynomial.
TrigPoly adjugate(const TrigPoly& a);

/// Inverse of an everywhere invertible square trigonometric polynomial.
///
/// When the determinant is a single monomial c·e^{ikθ} the inverse is the exact
/// polynomial adj(a)·c⁻¹e^{-ikθ}. Otherwise the pointwise inverse is sampled and
/// transformed; samples double until the coefficients settle below `tol`.
/// Throws NotElliptic with the offending θ if a sample is singular.
TrigPoly inverse(const TrigPoly& a, double tol = 1e-14);

}  // namespace toeplitz::circle
