#pragma once

#include <map>
#include <utility>
#include <vector>

#include "toeplitz/sg/rational.hpp"

namespace toeplitz::sg {

/// Basis function b_{r,0}(x) = ⟨x⟩^r or b_{r,1}(x) = x⟨x⟩^{r-1}; both have degree r.
struct BasisKey {
    Rational degree;
    int parity = 0;

    friend bool operator==(const BasisKey& a, const BasisKey& b) {
        return a.degree == b.degree && a.parity == b.parity;
    }
    /// Higher degree first, then parity.
    friend bool operator<(const BasisKey& a, const BasisKey& b) {
        if (a.degree != b.degree) return a.degree > b.degree;
        return a.parity < b.parity;
    }
};

using Expansion = std::vector<std::pair<BasisKey, Rational>>;

/// b_a · b_b in the basis.
Expansion basis_product(const BasisKey& a, const BasisKey& b);
/// d/dx b_a in the basis.
Expansion basis_derivative(const BasisKey& a);
/// α-fold derivative, collected.
Expansion basis_derivative(const BasisKey& a, int alpha);
double basis_value(const BasisKey& k, double x);
/// Limit of b_k(x)/⟨x⟩^top as x -> sign·∞.
int branch_value(const BasisKey& k, const Rational& top, int sign);

/// Matrix-valued element Σ c_k b_k of the closed one-variable algebra.
class OneVarClassical {
public:
    OneVarClassical() = default;
    OneVarClassical(int rows, int cols) : rows_(rows), cols_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::map<BasisKey, QMatrix>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const BasisKey& k, const QMatrix& c);
    /// Highest degree present (requires a nonzero element).
    Rational degree() const;
    CMatrix operator()(double x) const;
    /// Coefficient matrix of the x -> sign·∞ asymptotics at the given top degree.
    QMatrix branch(const Rational& top, int sign) const;

    friend OneVarClassical operator*(const OneVarClassical& a, const OneVarClassical& b);
    OneVarClassical derivative() const;
    friend bool operator==(const OneVarClassical& a, const OneVarClassical& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.terms_ == b.terms_;
    }

private:
    int rows_ = 1;
    int cols_ = 1;
    std::map<BasisKey, QMatrix> terms_;
};

}  // namespace toeplitz::sg
