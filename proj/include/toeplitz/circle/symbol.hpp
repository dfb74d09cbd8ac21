#pragma once

#include <map>
#include <optional>
#include <vector>

#include "toeplitz/circle/trig_poly.hpp"

namespace toeplitz::circle {

/// a(θ,ξ) = plus(θ)|ξ|^degree for ξ > 0 and minus(θ)|ξ|^degree for ξ < 0.
struct HomComponent {
    int degree = 0;
    TrigPoly plus;
    TrigPoly minus;

    bool is_zero() const { return plus.is_zero() && minus.is_zero(); }
    double max_abs() const { return std::max(plus.max_abs(), minus.max_abs()); }
    int bandwidth() const { return std::max(plus.bandwidth(), minus.bandwidth()); }
    const TrigPoly& branch(int sign) const { return sign > 0 ? plus : minus; }
    bool operator==(const HomComponent&) const = default;
};

/// Truncated classical expansion a ~ Σ_{j<J} a_{μ-j}; component j has degree μ-j.
struct ClassicalSymbol {
    int order = 0;
    int depth = 1;
    int rows = 1;
    int cols = 1;
    std::vector<HomComponent> comps;

    static ClassicalSymbol zero(int order, int depth, int rows, int cols);

    /// Throws InputError if the degree/shape invariants are violated.
    void validate() const;
    int bandwidth() const;
    bool operator==(const ClassicalSymbol&) const = default;
};

/// Finite-rank operator u ↦ Σ e^{imθ} k_{mn} û(n), stored column-major.
class SmoothingKernel {
public:
    using Column = std::map<int, CMatrix>;

    SmoothingKernel() = default;
    SmoothingKernel(int rows, int cols) : rows_(rows), cols_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return columns_.empty(); }

    void add(int m, int n, const CMatrix& block);
    CMatrix entry(int m, int n) const;
    const std::map<int, Column>& columns() const { return columns_; }
    const Column* column(int n) const;

    /// Largest |n| over stored columns (0 when empty).
    int column_extent() const;
    /// Largest |m| over stored rows (0 when empty).
    int row_extent() const;
    std::size_t size() const;
    double max_abs() const;
    /// Drops blocks whose largest entry is <= tol.
    SmoothingKernel pruned(double tol) const;

    bool operator==(const SmoothingKernel&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::map<int, Column> columns_;
};

/// Operator handle on the circle: truncated classical symbol plus explicit smoothing kernel.
struct Operator {
    ClassicalSymbol symbol;
    SmoothingKernel kernel;
    /// Frobenius mass removed by bandwidth capping.
    double discarded_mass = 0.0;
    /// Set when the kernel holds dense data valid only up to this Galerkin resolution.
    std::optional<int> resolution;

    int order() const { return symbol.order; }
    int depth() const { return symbol.depth; }
    int rows() const { return symbol.rows; }
    int cols() const { return symbol.cols; }
    /// Bandwidth of the symbol coefficients (kernel excluded).
    int bandwidth() const { return symbol.bandwidth(); }
    bool operator==(const Operator&) const = default;
};

/// χ(n)|n|^d, with χ(0) = 0.
double excised_power(int n, int degree);

/// Column n of the operator matrix: rows m -> rows×cols blocks (exact, finite support).
SmoothingKernel::Column column(const Operator& a, int n);
/// Row m of the operator matrix: columns n -> blocks.
std::map<int, CMatrix> row(const Operator& a, int m);

ClassicalSymbol compose(const ClassicalSymbol& a, const ClassicalSymbol& b, const CalculusOptions& opt);
ClassicalSymbol adjoint(const ClassicalSymbol& a, const CalculusOptions& opt);
ClassicalSymbol add(const ClassicalSymbol& a, const ClassicalSymbol& b, double sign = 1.0);
ClassicalSymbol scale(const ClassicalSymbol& a, cplx s);

/// Composition of handles; the kernel carries the exact low-mode correction.
Operator compose(const Operator& a, const Operator& b, const CalculusOptions& opt);
Operator adjoint(const Operator& a, const CalculusOptions& opt);
Operator add(const Operator& a, const Operator& b);
Operator subtract(const Operator& a, const Operator& b);
Operator scale(const Operator& a, cplx s);

/// Index j of the first retained component exceeding `tol`; nullopt if all vanish.
std::optional<int> leading_level(const ClassicalSymbol& a, double tol);

/// Generalized binomial coefficient C(d, α) for integer d (exact in int64 for desk sizes).
long long binomial(int d, int alpha);

}  // namespace toeplitz::circle
