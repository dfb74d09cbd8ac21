#include "toeplitz/sg/one_var.hpp"

#include <cmath>

namespace toeplitz::sg {

namespace {

void collect(Expansion& into, const BasisKey& k, const Rational& c) {
    if (c == 0) return;
    for (auto& [key, v] : into) {
        if (key == k) {
            v += c;
            return;
        }
    }
    into.emplace_back(k, c);
}

}  // namespace

Expansion basis_product(const BasisKey& a, const BasisKey& b) {
    const Rational d = a.degree + b.degree;
    if (a.parity == 1 && b.parity == 1) {
        // x²⟨x⟩^{r+s-2} = ⟨x⟩^{r+s} - ⟨x⟩^{r+s-2}
        return {{{d, 0}, Rational(1)}, {{d - 2, 0}, Rational(-1)}};
    }
    return {{{d, a.parity + b.parity}, Rational(1)}};
}

Expansion basis_derivative(const BasisKey& a) {
    const Rational& r = a.degree;
    Expansion out;
    if (a.parity == 0) {
        collect(out, {r - 1, 1}, r);
    } else {
        collect(out, {r - 1, 0}, r);
        collect(out, {r - 3, 0}, -(r - 1));
    }
    return out;
}

Expansion basis_derivative(const BasisKey& a, int alpha) {
    Expansion cur{{a, Rational(1)}};
    for (int i = 0; i < alpha; ++i) {
        Expansion next;
        for (const auto& [k, c] : cur) {
            for (const auto& [k2, c2] : basis_derivative(k)) collect(next, k2, c * c2);
        }
        std::erase_if(next, [](const auto& e) { return e.second == 0; });
        cur = std::move(next);
    }
    return cur;
}

double basis_value(const BasisKey& k, double x) {
    const double bracket = std::sqrt(1.0 + x * x);
    const double r = k.degree.get_d();
    if (k.parity == 0) return std::pow(bracket, r);
    return x * std::pow(bracket, r - 1.0);
}

int branch_value(const BasisKey& k, const Rational& top, int sign) {
    if (k.degree != top) return 0;
    return k.parity == 0 ? 1 : sign;
}

void OneVarClassical::add(const BasisKey& k, const QMatrix& c) {
    if (c.rows() != rows_ || c.cols() != cols_) throw InputError("coefficient shape mismatch");
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Rational OneVarClassical::degree() const {
    if (terms_.empty()) throw InputError("degree of the zero function");
    return terms_.begin()->first.degree;
}

CMatrix OneVarClassical::operator()(double x) const {
    CMatrix v = CMatrix::Zero(rows_, cols_);
    for (const auto& [k, c] : terms_) v += basis_value(k, x) * c.to_complex();
    return v;
}

QMatrix OneVarClassical::branch(const Rational& top, int sign) const {
    QMatrix out(rows_, cols_);
    for (const auto& [k, c] : terms_) {
        const int b = branch_value(k, top, sign);
        if (b != 0) out += CQ(b) * c;
    }
    return out;
}

OneVarClassical operator*(const OneVarClassical& a, const OneVarClassical& b) {
    OneVarClassical out(a.rows_, b.cols_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            const QMatrix prod = ca * cb;
            for (const auto& [k, c] : basis_product(ka, kb)) out.add(k, CQ(c) * prod);
        }
    }
    return out;
}

OneVarClassical OneVarClassical::derivative() const {
    OneVarClassical out(rows_, cols_);
    for (const auto& [k, c] : terms_) {
        for (const auto& [k2, f] : basis_derivative(k)) out.add(k2, CQ(f) * c);
    }
    return out;
}

}  // namespace toeplitz::sg
