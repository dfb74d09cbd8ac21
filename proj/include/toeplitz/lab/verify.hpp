#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toeplitz/circle/ellipticity.hpp"

namespace toeplitz::lab {

struct VerifyOptions {
    int M = 64;
    double tau = 1e-8;
    int grid = 64;
    double kappa = 1e6;
    std::uint64_t seed = 0;
};

struct VerifyCheck {
    std::string name;
    bool passed = false;
    /// Measured quantities on success, the failing witness otherwise.
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool passed() const;
};

/// Operator-level checks on an order-0 element:
/// kernel identity, ker T*T = ker T, index of the adjoint, compactness proxy,
/// σ-axiom spot checks and projection perturbation.
VerifyReport verify_suite(const circle::Element& t, const VerifyOptions& opt, const CalculusOptions& calc);

/// Witness W = A*#A + (1-P0)*#(1-P0) of an element.
circle::Operator witness_operator(const circle::Element& t, const CalculusOptions& calc);

/// P + order -1 noise (seeded, amplitude 1/16), completed by Newton–Schulz.
circle::Projection perturbed_projection(const circle::Projection& p, std::uint64_t seed, const CalculusOptions& calc);

/// Smallest mode c with the columns |n| > c of Gal(r) below tol (Frobenius); M if none.
int compactness_cutoff(const circle::Operator& r, int M, double tol);

}  // namespace toeplitz::lab
