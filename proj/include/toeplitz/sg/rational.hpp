#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "toeplitz/common.hpp"

namespace toeplitz::sg {

using Rational = mpq_class;

/// Exact complex rational.
struct CQ {
    Rational re;
    Rational im;

    CQ() = default;
    CQ(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
    CQ(int r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    CQ conj() const { return {re, -im}; }
    cplx to_complex() const { return {re.get_d(), im.get_d()}; }

    friend CQ operator+(const CQ& a, const CQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend CQ operator-(const CQ& a, const CQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend CQ operator-(const CQ& a) { return {-a.re, -a.im}; }
    friend CQ operator*(const CQ& a, const CQ& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CQ operator/(const CQ& a, const CQ& b);
    CQ& operator+=(const CQ& b) { return *this = *this + b; }
    CQ& operator-=(const CQ& b) { return *this = *this - b; }
    friend bool operator==(const CQ& a, const CQ& b) { return a.re == b.re && a.im == b.im; }
};

/// Exact conversion of a finite double.
Rational rational_from_double(double v);
/// "p/q", or "p" for integers.
std::string to_string(const Rational& q);
/// Parses "p", "p/q" or a decimal like "0.25" (exactly).
Rational parse_rational(const std::string& text);

/// Dense matrix over CQ.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

    static QMatrix identity(int n);
    static QMatrix from_complex(const CMatrix& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    CQ& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    const CQ& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

    bool is_zero() const;
    QMatrix adjoint() const;
    CMatrix to_complex() const;
    /// Exact rank by fraction-free elimination.
    int rank() const;
    /// Gauss–Jordan inverse; throws NotInvertible if singular.
    QMatrix inverse() const;

    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const CQ& s, const QMatrix& a);
    QMatrix& operator+=(const QMatrix& b) { return *this = *this + b; }
    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<CQ> data_;
};

}  // namespace toeplitz::sg
