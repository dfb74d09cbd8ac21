#pragma once

#include <random>

#include "toeplitz/sg/symbol.hpp"

namespace testing {

inline toeplitz::sg::BasisKey key(int r, int parity) { return {toeplitz::sg::Rational(r), parity}; }

/// Random symbol of bi-order (mu, m) with small integer coefficients and integer degrees.
inline toeplitz::sg::SGSymbol random_sg(std::mt19937_64& rng, int mu, int m, int dim, int depth) {
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<int> drop(0, 2);
    std::uniform_int_distribution<int> par(0, 1);
    using namespace toeplitz::sg;
    SGSymbol s = SGSymbol::zero({mu, m}, depth, dim, dim);
    for (int dx = 0; dx < 3; ++dx) {
        for (int dxi = 0; dxi < 3; ++dxi) {
            QMatrix c(dim, dim);
            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j < dim; ++j) c(i, j) = CQ(coef(rng), coef(rng));
            }
            s.add_term(key(m - dx * drop(rng) / 2, par(rng)), key(mu - dxi, par(rng)), c);
        }
    }
    return s;
}

}  // namespace testing
