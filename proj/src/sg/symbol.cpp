#include "toeplitz/sg/symbol.hpp"

#include <sstream>

namespace toeplitz::sg {

namespace {

Rational floor_of(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

/// (-i)^α / α!
CQ leibniz_factor(int alpha) {
    mpz_class fact = 1;
    for (int i = 2; i <= alpha; ++i) fact *= i;
    const Rational inv(mpz_class(1), fact);
    switch (alpha % 4) {
        case 0: return {inv, 0};
        case 1: return {0, -inv};
        case 2: return {-inv, 0};
        default: return {0, inv};
    }
}

}  // namespace

SGSymbol SGSymbol::zero(BiOrder order, int depth, int rows, int cols) {
    SGSymbol s;
    s.order = order;
    s.depth = depth;
    s.rows = rows;
    s.cols = cols;
    return s;
}

SGSymbol SGSymbol::weight(int mu, int m, int dim, int depth) {
    SGSymbol s = zero({mu, m}, depth, dim, dim);
    s.add_term({Rational(m), 0}, {Rational(mu), 0}, QMatrix::identity(dim));
    return s;
}

SGSymbol SGSymbol::constant(const QMatrix& c, int depth) {
    SGSymbol s = zero({0, 0}, depth, c.rows(), c.cols());
    s.add_term({Rational(0), 0}, {Rational(0), 0}, c);
    return s;
}

void SGSymbol::add_term(const BasisKey& x, const BasisKey& xi, const QMatrix& c) {
    if (c.rows() != rows || c.cols() != cols) throw InputError("term matrix shape differs from symbol shape");
    const TermKey k{x, xi};
    auto it = terms.find(k);
    if (it == terms.end()) {
        if (!c.is_zero()) terms.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

void SGSymbol::truncate() {
    std::erase_if(terms, [&](const auto& t) {
        return Rational(order.mu) - t.first.xi.degree >= depth && Rational(order.m) - t.first.x.degree >= depth;
    });
}

void SGSymbol::validate() const {
    if (depth < 1) throw InputError("depth must be positive");
    int i = 0;
    for (const auto& [k, c] : terms) {
        if (k.xi.degree > order.mu || k.x.degree > order.m) {
            std::ostringstream os;
            os << "terms[" << i << "]: degrees (" << to_string(k.xi.degree) << ", " << to_string(k.x.degree)
               << ") exceed the bi-order (" << order.mu << ", " << order.m << ")";
            throw InputError(os.str());
        }
        if (k.x.parity < 0 || k.x.parity > 1 || k.xi.parity < 0 || k.xi.parity > 1) {
            throw InputError("basis parity must be 0 or 1");
        }
        ++i;
    }
}

int SGSymbol::level(const TermKey& k) const {
    const Rational a = Rational(order.mu) - k.xi.degree;
    const Rational b = Rational(order.m) - k.x.degree;
    return static_cast<int>(floor_of(a < b ? a : b).get_d());
}

CMatrix SGSymbol::operator()(double x, double xi) const {
    CMatrix v = CMatrix::Zero(rows, cols);
    for (const auto& [k, c] : terms) v += basis_value(k.x, x) * basis_value(k.xi, xi) * c.to_complex();
    return v;
}

SGSymbol compose(const SGSymbol& a, const SGSymbol& b, const CalculusOptions& opt) {
    if (a.cols != b.rows) {
        std::ostringstream os;
        os << "composition dimension mismatch: " << a.rows << "x" << a.cols << " # " << b.rows << "x" << b.cols;
        throw InputError(os.str());
    }
    const int depth = std::min({a.depth, b.depth, opt.depth});
    SGSymbol out = SGSymbol::zero({a.order.mu + b.order.mu, a.order.m + b.order.m}, depth, a.rows, b.cols);
    for (int alpha = 0; alpha < depth; ++alpha) {
        const CQ factor = leibniz_factor(alpha);
        for (const auto& [ka, ma] : a.terms) {
            const Expansion dxi = basis_derivative(ka.xi, alpha);
            if (dxi.empty()) continue;
            for (const auto& [kb, mb] : b.terms) {
                const Expansion dx = basis_derivative(kb.x, alpha);
                if (dx.empty()) continue;
                const QMatrix prod = ma * mb;
                for (const auto& [kxi, cxi] : dxi) {
                    for (const auto& [kx, cx] : dx) {
                        for (const auto& [px, cpx] : basis_product(ka.x, kx)) {
                            for (const auto& [pxi, cpxi] : basis_product(kxi, kb.xi)) {
                                const Rational c = cxi * cx * cpx * cpxi;
                                out.add_term(px, pxi, (factor * CQ(c)) * prod);
                            }
                        }
                    }
                }
            }
        }
    }
    out.truncate();
    return out;
}

SGSymbol adjoint(const SGSymbol& a, const CalculusOptions& opt) {
    const int depth = std::min(a.depth, opt.depth);
    SGSymbol out = SGSymbol::zero(a.order, depth, a.cols, a.rows);
    for (int alpha = 0; alpha < depth; ++alpha) {
        const CQ factor = leibniz_factor(alpha);
        for (const auto& [k, m] : a.terms) {
            const QMatrix mh = m.adjoint();
            for (const auto& [kxi, cxi] : basis_derivative(k.xi, alpha)) {
                for (const auto& [kx, cx] : basis_derivative(k.x, alpha)) {
                    out.add_term(kx, kxi, (factor * CQ(cxi * cx)) * mh);
                }
            }
        }
    }
    out.truncate();
    return out;
}

SGSymbol add(const SGSymbol& a, const SGSymbol& b, const CQ& factor) {
    if (a.rows != b.rows || a.cols != b.cols) {
        std::ostringstream os;
        os << "sum dimension mismatch: " << a.rows << "x" << a.cols << " + " << b.rows << "x" << b.cols;
        throw InputError(os.str());
    }
    SGSymbol out = SGSymbol::zero({std::max(a.order.mu, b.order.mu), std::max(a.order.m, b.order.m)},
                                  std::min(a.depth, b.depth), a.rows, a.cols);
    for (const auto& [k, c] : a.terms) out.add_term(k.x, k.xi, c);
    for (const auto& [k, c] : b.terms) out.add_term(k.x, k.xi, factor * c);
    out.truncate();
    return out;
}

SGSymbol scale(const SGSymbol& a, const CQ& s) {
    SGSymbol out = SGSymbol::zero(a.order, a.depth, a.rows, a.cols);
    for (const auto& [k, c] : a.terms) out.add_term(k.x, k.xi, s * c);
    return out;
}

std::optional<int> leading_level(const SGSymbol& a) {
    std::optional<int> best;
    for (const auto& [k, c] : a.terms) {
        const int l = a.level(k);
        if (l >= a.depth) continue;
        if (!best || l < *best) best = l;
    }
    return best;
}

ThreeSymbols three_symbols(const SGSymbol& a) {
    ThreeSymbols out;
    const Rational mu(a.order.mu);
    const Rational m(a.order.m);
    for (int s = 0; s < 2; ++s) {
        out.xi_principal[s] = OneVarClassical(a.rows, a.cols);
        out.x_principal[s] = OneVarClassical(a.rows, a.cols);
        for (int t = 0; t < 2; ++t) out.corners[s][t] = QMatrix(a.rows, a.cols);
    }
    for (const auto& [k, c] : a.terms) {
        for (int s = 0; s < 2; ++s) {
            const int sign = s == 0 ? 1 : -1;
            if (const int bx = branch_value(k.xi, mu, sign)) out.xi_principal[s].add(k.x, CQ(bx) * c);
            if (const int bxi = branch_value(k.x, m, sign)) out.x_principal[s].add(k.xi, CQ(bxi) * c);
            for (int t = 0; t < 2; ++t) {
                const int b = branch_value(k.x, m, sign) * branch_value(k.xi, mu, t == 0 ? 1 : -1);
                if (b != 0) out.corners[s][t] += CQ(b) * c;
            }
        }
    }
    return out;
}

SGSymbol SGAlgebra::scale(const SGSymbol& a, cplx s) {
    return sg::scale(a, CQ(rational_from_double(s.real()), rational_from_double(s.imag())));
}

std::string SGAlgebra::format_level(const BiOrder& o, std::optional<int> level, int depth) {
    std::ostringstream os;
    if (level) {
        os << "(" << o.mu - *level << ", " << o.m - *level << ")";
    } else {
        os << "<= (" << o.mu - depth << ", " << o.m - depth << ")";
    }
    return os.str();
}

}  // namespace toeplitz::sg
