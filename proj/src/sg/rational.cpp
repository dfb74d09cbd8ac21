#include "toeplitz/sg/rational.hpp"

#include <cmath>
#include <sstream>

namespace toeplitz::sg {

CQ operator/(const CQ& a, const CQ& b) {
    const Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw NotInvertible("division by zero");
    const CQ num = a * b.conj();
    return {num.re / n, num.im / n};
}

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw InputError("non-finite number where a rational is required");
    Rational q(v);  // exact for doubles
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& value) {
    Rational q = value;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    auto fail = [&] { throw InputError("not a rational number: \"" + text + "\""); };
    if (text.empty()) fail();
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            mpz_class num(text.substr(0, slash), 10);
            mpz_class den(text.substr(slash + 1), 10);
            if (den == 0) fail();
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos && text.find_first_of("eE") == std::string::npos) {
            return Rational(mpz_class(text, 10));
        }
        if (text.find_first_of("eE") != std::string::npos) {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) fail();
            return rational_from_double(v);
        }
        // exact decimal
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+") fail();
        mpz_class num(digits, 10);
        mpz_class den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        fail();
    }
    return {};
}

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = CQ(1);
    return m;
}

QMatrix QMatrix::from_complex(const CMatrix& c) {
    QMatrix m(static_cast<int>(c.rows()), static_cast<int>(c.cols()));
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            m(i, j) = CQ(rational_from_double(c(i, j).real()), rational_from_double(c(i, j).imag()));
        }
    }
    return m;
}

bool QMatrix::is_zero() const {
    for (const auto& v : data_) {
        if (!v.is_zero()) return false;
    }
    return true;
}

QMatrix QMatrix::adjoint() const {
    QMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j).conj();
    }
    return out;
}

CMatrix QMatrix::to_complex() const {
    CMatrix out(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).to_complex();
    }
    return out;
}

int QMatrix::rank() const {
    QMatrix m = *this;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows_; ++i) {
            if (!m(i, col).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        for (int j = 0; j < cols_; ++j) std::swap(m(rank, j), m(pivot, j));
        const CQ p = m(rank, col);
        for (int i = rank + 1; i < rows_; ++i) {
            if (m(i, col).is_zero()) continue;
            const CQ f = m(i, col) / p;
            for (int j = col; j < cols_; ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

QMatrix QMatrix::inverse() const {
    if (rows_ != cols_) throw NotInvertible("inverse of a non-square matrix");
    const int n = rows_;
    QMatrix a = *this;
    QMatrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i) {
            if (!a(i, col).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) throw NotInvertible("singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(a(col, j), a(pivot, j));
            std::swap(inv(col, j), inv(pivot, j));
        }
        const CQ p = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) = a(col, j) / p;
            inv(col, j) = inv(col, j) / p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || a(i, col).is_zero()) continue;
            const CQ f = a(i, col);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum dimension mismatch");
    QMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference dimension mismatch");
    QMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    QMatrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            const CQ& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

QMatrix operator*(const CQ& s, const QMatrix& a) {
    QMatrix out = a;
    for (auto& v : out.data_) v = s * v;
    return out;
}

}  // namespace toeplitz::sg
