#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "toeplitz/core/algebra.hpp"
#include "toeplitz/sg/one_var.hpp"

namespace toeplitz::sg {

/// Bi-order (μ, m): μ in ξ, m in x.
struct BiOrder {
    int mu = 0;
    int m = 0;
    friend bool operator==(const BiOrder&, const BiOrder&) = default;
};

/// Key of a separable term p(x) q(ξ).
struct TermKey {
    BasisKey x;
    BasisKey xi;
    friend bool operator==(const TermKey& a, const TermKey& b) { return a.x == b.x && a.xi == b.xi; }
    friend bool operator<(const TermKey& a, const TermKey& b) {
        if (!(a.x == b.x)) return a.x < b.x;
        return a.xi < b.xi;
    }
};

/// Σ M_i b_{x,i}(x) b_{ξ,i}(ξ) in canonical form (one matrix per basis pair),
/// kept modulo bi-order (μ-J, m-J).
struct SGSymbol {
    BiOrder order;
    int depth = 5;
    int rows = 1;
    int cols = 1;
    std::map<TermKey, QMatrix> terms;

    static SGSymbol zero(BiOrder order, int depth, int rows, int cols);
    /// ⟨x⟩^m ⟨ξ⟩^μ times the identity.
    static SGSymbol weight(int mu, int m, int dim, int depth);
    static SGSymbol constant(const QMatrix& c, int depth);

    void add_term(const BasisKey& x, const BasisKey& xi, const QMatrix& c);
    /// Drops terms of bi-order <= (μ-J, m-J).
    void truncate();
    /// Throws InputError if a term exceeds the declared bi-order.
    void validate() const;
    /// Level min(μ - deg ξ, m - deg x), floored.
    int level(const TermKey& k) const;

    CMatrix operator()(double x, double xi) const;
    friend bool operator==(const SGSymbol&, const SGSymbol&) = default;
};

SGSymbol compose(const SGSymbol& a, const SGSymbol& b, const CalculusOptions& opt);
SGSymbol adjoint(const SGSymbol& a, const CalculusOptions& opt);
SGSymbol add(const SGSymbol& a, const SGSymbol& b, const CQ& factor = CQ(1));
SGSymbol scale(const SGSymbol& a, const CQ& s);
std::optional<int> leading_level(const SGSymbol& a);

struct ThreeSymbols {
    /// ξ-principal symbol for ξ -> ±∞ (index 0: +, 1: -), a function of x.
    std::array<OneVarClassical, 2> xi_principal;
    /// x-principal symbol for x -> ±∞, a function of ξ.
    std::array<OneVarClassical, 2> x_principal;
    /// corners[sx][sξ] with index 0 = +, 1 = -.
    std::array<std::array<QMatrix, 2>, 2> corners;
};

ThreeSymbols three_symbols(const SGSymbol& a);

struct SGAlgebra {
    using Operator = SGSymbol;
    using Order = BiOrder;

    static std::string name() { return "sg"; }
    static Operator compose(const Operator& a, const Operator& b, const CalculusOptions& o) {
        return sg::compose(a, b, o);
    }
    static Operator adjoint(const Operator& a, const CalculusOptions& o) { return sg::adjoint(a, o); }
    static Operator add(const Operator& a, const Operator& b) { return sg::add(a, b); }
    static Operator subtract(const Operator& a, const Operator& b) { return sg::add(a, b, CQ(-1)); }
    static Operator scale(const Operator& a, cplx s);
    static Operator identity(int dim, int depth) { return SGSymbol::weight(0, 0, dim, depth); }
    static BiOrder order(const Operator& a) { return a.order; }
    static bool is_zero_order(const BiOrder& o) { return o.mu == 0 && o.m == 0; }
    static int depth(const Operator& a) { return a.depth; }
    static int rows(const Operator& a) { return a.rows; }
    static int cols(const Operator& a) { return a.cols; }
    static std::optional<int> leading_level(const Operator& a, const CalculusOptions&) {
        return sg::leading_level(a);
    }
    static std::string format_level(const BiOrder& o, std::optional<int> level, int depth);
};

static_assert(core::AlgebraInstance<SGAlgebra>);

using Projection = core::ProjectionHandle<SGAlgebra>;
using Element = core::ToeplitzElement<SGAlgebra>;
using Parametrix = core::Parametrix<SGAlgebra>;

}  // namespace toeplitz::sg
