#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace toeplitz {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Base of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or incompatible input (CLI exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

/// Ellipticity could not be certified. `witness` names the offending point.
class NotElliptic : public Error {
public:
    NotElliptic(const std::string& what, std::string witness)
        : Error(what), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

/// No (two-sided) inverse at the requested resolution.
class NotInvertible : public Error {
public:
    using Error::Error;
};

/// Numerical data could not be resolved (e.g. unstable across resolutions).
class Unresolved : public Error {
public:
    using Error::Error;
};

/// Settings shared by the symbolic calculi.
struct CalculusOptions {
    /// Number of retained homogeneous levels; everything at level >= depth is smoothing.
    int depth = 5;
    /// Absolute threshold below which a retained coefficient counts as zero.
    /// Exact instances produce literal zeros; this only absorbs rounding from
    /// numerically inverted symbols.
    double zero_tol = 1e-11;
    /// Optional bandwidth cap on trigonometric coefficients (circle only).
    std::optional<int> bandwidth_cap;
};

/// Worker count for internal parallel loops (TOEPLITZ_CALC_THREADS, default: hardware).
unsigned worker_threads();

}  // namespace toeplitz
