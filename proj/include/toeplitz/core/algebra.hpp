#pragma once

#include <concepts>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "toeplitz/common.hpp"

namespace toeplitz::core {

/// Contract an algebra instance has to satisfy for the generic constructions.
///
/// `leading_level(x, opt)` returns the index of the first retained homogeneous
/// level of x that does not vanish (0 = principal level, measured from the
/// declared order of x), or nullopt when every retained level vanishes, i.e.
/// x has order <= order(x) - depth(x).
template <class A>
concept AlgebraInstance = requires(const typename A::Operator& x, const CalculusOptions& opt, int n,
                                   cplx s) {
    typename A::Order;
    { A::name() } -> std::convertible_to<std::string>;
    { A::compose(x, x, opt) } -> std::same_as<typename A::Operator>;
    { A::adjoint(x, opt) } -> std::same_as<typename A::Operator>;
    { A::add(x, x) } -> std::same_as<typename A::Operator>;
    { A::subtract(x, x) } -> std::same_as<typename A::Operator>;
    { A::scale(x, s) } -> std::same_as<typename A::Operator>;
    { A::identity(n, n) } -> std::same_as<typename A::Operator>;
    { A::order(x) } -> std::same_as<typename A::Order>;
    { A::is_zero_order(A::order(x)) } -> std::convertible_to<bool>;
    { A::depth(x) } -> std::convertible_to<int>;
    { A::rows(x) } -> std::convertible_to<int>;
    { A::cols(x) } -> std::convertible_to<int>;
    { A::leading_level(x, opt) } -> std::same_as<std::optional<int>>;
    { A::format_level(A::order(x), std::optional<int>{}, n) } -> std::convertible_to<std::string>;
};

/// Order-0 operator whose idempotency defect P#P - P vanishes at all retained levels.
template <class Alg>
struct ProjectionHandle {
    typename Alg::Operator op;
    /// Newton–Schulz steps spent by completion (0 if the input was already exact).
    int iterations = 0;
    /// Leading level of P#P - P before each step and after the last one.
    std::vector<std::optional<int>> history;
};

template <class Alg>
struct ToeplitzElement {
    typename Alg::Operator inner;
    typename Alg::Operator op;  // P1 # inner # P0
    ProjectionHandle<Alg> p0;
    ProjectionHandle<Alg> p1;
};

struct ParametrixDiagnostics {
    /// Leading levels of P0 - B0#A and P1 - A#B0 for the accepted candidate.
    std::optional<int> left_candidate_level;
    std::optional<int> right_candidate_level;
    /// Leading level of B_L - B_R (nullopt = agree at every retained level).
    std::optional<int> reconcile_level;
    std::optional<int> left_residual_level;
    std::optional<int> right_residual_level;
    int neumann_terms = 0;
    std::string route;
};

template <class Alg>
struct Parametrix {
    ToeplitzElement<Alg> b;
    typename Alg::Operator left_residual;   // b#A - P0
    typename Alg::Operator right_residual;  // A#b - P1
    ParametrixDiagnostics diagnostics;
};

enum class CandidateKind { FullAlgebra, Toeplitz };

namespace detail {

template <class Alg>
typename Alg::Operator compose3(const typename Alg::Operator& a, const typename Alg::Operator& b,
                                const typename Alg::Operator& c, const CalculusOptions& opt) {
    return Alg::compose(Alg::compose(a, b, opt), c, opt);
}

/// P + Σ_{ℓ=1}^{J-1} R^ℓ.
template <class Alg>
typename Alg::Operator neumann(const typename Alg::Operator& p, const typename Alg::Operator& r,
                               const CalculusOptions& opt, int& terms) {
    typename Alg::Operator sum = p;
    typename Alg::Operator power = r;
    terms = 0;
    const int depth = std::min(Alg::depth(r), opt.depth);
    for (int l = 1; l < depth; ++l) {
        if (!Alg::leading_level(power, opt)) break;  // remaining powers vanish at retained levels
        sum = Alg::add(sum, power);
        ++terms;
        if (l + 1 < depth) power = Alg::compose(power, r, opt);
    }
    return sum;
}

}  // namespace detail

/// Certifies that op is an order-0 projection at working depth.
template <AlgebraInstance Alg>
ProjectionHandle<Alg> certify_projection(const typename Alg::Operator& op, const CalculusOptions& opt) {
    if (!Alg::is_zero_order(Alg::order(op))) throw InputError("projection must have order 0");
    if (Alg::rows(op) != Alg::cols(op)) throw InputError("projection must be square");
    const auto defect = Alg::subtract(Alg::compose(op, op, opt), op);
    const auto level = Alg::leading_level(defect, opt);
    if (level) {
        throw InputError("projection is not idempotent at working depth (defect at level " +
                         std::to_string(*level) + ")");
    }
    return {op, 0, {level}};
}

/// Newton–Schulz completion p <- 3p#p - 2p#p#p until p#p - p vanishes at all retained levels.
template <AlgebraInstance Alg>
ProjectionHandle<Alg> complete_projection(const typename Alg::Operator& start, const CalculusOptions& opt) {
    if (!Alg::is_zero_order(Alg::order(start))) throw InputError("projection must have order 0");
    typename Alg::Operator p = start;
    ProjectionHandle<Alg> out;
    for (int it = 0;; ++it) {
        const auto p2 = Alg::compose(p, p, opt);
        const auto level = Alg::leading_level(Alg::subtract(p2, p), opt);
        out.history.push_back(level);
        if (!level) break;
        if (*level == 0) throw InputError("principal part is not idempotent");
        if (it >= 64) throw Unresolved("projection completion did not converge");
        const auto p3 = Alg::compose(p2, p, opt);
        p = Alg::subtract(Alg::scale(p2, 3.0), Alg::scale(p3, 2.0));
        ++out.iterations;
    }
    out.op = p;
    return out;
}

/// P1 # A # P0.
template <AlgebraInstance Alg>
ToeplitzElement<Alg> toeplitz_compress(const typename Alg::Operator& a, const ProjectionHandle<Alg>& p0,
                                       const ProjectionHandle<Alg>& p1, const CalculusOptions& opt) {
    if (Alg::cols(a) != Alg::rows(p0.op) || Alg::rows(a) != Alg::rows(p1.op)) {
        std::ostringstream os;
        os << "operator is " << Alg::rows(a) << "x" << Alg::cols(a) << " but projections act on "
           << Alg::rows(p0.op) << " (source) and " << Alg::rows(p1.op) << " (target)";
        throw InputError(os.str());
    }
    if (!Alg::is_zero_order(Alg::order(p0.op)) || !Alg::is_zero_order(Alg::order(p1.op))) {
        throw InputError("projections must have order 0");
    }
    return {a, detail::compose3<Alg>(p1.op, a, p0.op, opt), p0, p1};
}

/// Leading levels of (1-P1)#A and A#(1-P0); both nullopt for a valid element.
template <AlgebraInstance Alg>
std::pair<std::optional<int>, std::optional<int>> element_defects(const ToeplitzElement<Alg>& t,
                                                                  const CalculusOptions& opt) {
    const auto left = Alg::subtract(t.op, Alg::compose(t.p1.op, t.op, opt));
    const auto right = Alg::subtract(t.op, Alg::compose(t.op, t.p0.op, opt));
    return {Alg::leading_level(left, opt), Alg::leading_level(right, opt)};
}

/// Neumann bootstrap of left/right candidates into a parametrix with residuals of order <= -J.
template <AlgebraInstance Alg>
Parametrix<Alg> parametrix_bootstrap(const ToeplitzElement<Alg>& a, const typename Alg::Operator& cand_left,
                                     const typename Alg::Operator& cand_right, CandidateKind kind,
                                     const CalculusOptions& opt) {
    using Op = typename Alg::Operator;
    const Op& p0 = a.p0.op;
    const Op& p1 = a.p1.op;
    if (Alg::rows(cand_left) != Alg::cols(a.op) || Alg::cols(cand_left) != Alg::rows(a.op) ||
        Alg::rows(cand_right) != Alg::cols(a.op) || Alg::cols(cand_right) != Alg::rows(a.op)) {
        throw InputError("candidate dimensions do not reverse the element's direction");
    }
    Op b0 = cand_left;
    Op b1 = cand_right;
    if (kind == CandidateKind::FullAlgebra) {
        b0 = detail::compose3<Alg>(p0, b0, p1, opt);
        b1 = detail::compose3<Alg>(p0, b1, p1, opt);
    }
    if (!Alg::is_zero_order(Alg::order(Alg::compose(b0, a.op, opt)))) {
        throw InputError("candidate order does not invert the element's order");
    }
    ParametrixDiagnostics diag;
    const Op r0 = Alg::subtract(p0, Alg::compose(b0, a.op, opt));
    const Op r1 = Alg::subtract(p1, Alg::compose(a.op, b1, opt));
    diag.left_candidate_level = Alg::leading_level(r0, opt);
    diag.right_candidate_level = Alg::leading_level(r1, opt);
    if (diag.left_candidate_level == 0 || diag.right_candidate_level == 0) {
        throw NotElliptic("not elliptic-certified",
                          diag.left_candidate_level == 0 ? "left candidate residual has order 0"
                                                         : "right candidate residual has order 0");
    }
    int terms_left = 0;
    int terms_right = 0;
    const Op bl = Alg::compose(detail::neumann<Alg>(p0, r0, opt, terms_left), b0, opt);
    const Op br = Alg::compose(b1, detail::neumann<Alg>(p1, r1, opt, terms_right), opt);
    diag.neumann_terms = std::max(terms_left, terms_right);
    diag.reconcile_level = Alg::leading_level(Alg::subtract(bl, br), opt);

    Parametrix<Alg> out;
    out.b = {bl, bl, a.p1, a.p0};
    out.left_residual = Alg::subtract(Alg::compose(bl, a.op, opt), p0);
    out.right_residual = Alg::subtract(Alg::compose(a.op, bl, opt), p1);
    diag.left_residual_level = Alg::leading_level(out.left_residual, opt);
    diag.right_residual_level = Alg::leading_level(out.right_residual, opt);
    diag.route = "bootstrap";
    out.diagnostics = diag;
    if (diag.reconcile_level || diag.left_residual_level || diag.right_residual_level) {
        throw Unresolved("bootstrapped parametrix residuals do not vanish at working depth");
    }
    return out;
}

/// Ambient parametrix provider: returns C with C#W - 1 of order <= -J, or throws NotElliptic.
template <class Alg>
using AmbientSolver = std::function<typename Alg::Operator(const typename Alg::Operator&)>;

/// Left parametrix P0#C#A*#P1 with C an ambient parametrix of W = A*#A + (1-P0)*#(1-P0);
/// the right parametrix comes from the same route applied to A*.
template <AlgebraInstance Alg>
Parametrix<Alg> fredholm_parametrix(const ToeplitzElement<Alg>& a, const AmbientSolver<Alg>& solver,
                                    const CalculusOptions& opt) {
    using Op = typename Alg::Operator;
    if (!Alg::is_zero_order(Alg::order(a.op))) {
        throw InputError("witness route needs an order-0 element; reduce the order first");
    }
    const Op& p0 = a.p0.op;
    const Op& p1 = a.p1.op;
    const Op a_star = Alg::adjoint(a.op, opt);

    const Op q0 = Alg::subtract(Alg::identity(Alg::rows(p0), Alg::depth(p0)), p0);
    const Op w_left = Alg::add(Alg::compose(a_star, a.op, opt), Alg::compose(Alg::adjoint(q0, opt), q0, opt));
    const Op c_left = solver(w_left);
    const Op bl = Alg::compose(detail::compose3<Alg>(p0, c_left, a_star, opt), p1, opt);

    const Op q1 = Alg::subtract(Alg::identity(Alg::rows(p1), Alg::depth(p1)), p1);
    const Op w_right = Alg::add(Alg::compose(a.op, a_star, opt), Alg::compose(q1, Alg::adjoint(q1, opt), opt));
    const Op c_right = solver(w_right);
    const Op p1s = Alg::adjoint(p1, opt);
    const Op p0s = Alg::adjoint(p0, opt);
    const Op bl_adj = Alg::compose(detail::compose3<Alg>(p1s, c_right, a.op, opt), p0s, opt);
    const Op br = Alg::adjoint(bl_adj, opt);

    ParametrixDiagnostics diag;
    diag.route = "witness";
    diag.reconcile_level = Alg::leading_level(Alg::subtract(bl, br), opt);
    Parametrix<Alg> out;
    out.b = {bl, bl, a.p1, a.p0};
    out.left_residual = Alg::subtract(Alg::compose(bl, a.op, opt), p0);
    out.right_residual = Alg::subtract(Alg::compose(a.op, bl, opt), p1);
    diag.left_residual_level = Alg::leading_level(out.left_residual, opt);
    diag.right_residual_level = Alg::leading_level(out.right_residual, opt);
    out.diagnostics = diag;
    if (diag.reconcile_level || diag.left_residual_level || diag.right_residual_level) {
        throw Unresolved("witness parametrix residuals do not vanish at working depth");
    }
    return out;
}

/// Order reduction data: S_μ with S_μ # S_{-μ} = 1 modulo order -J.
template <class Alg>
using ReductionFamily = std::function<typename Alg::Operator(int mu, int dim)>;

template <class Alg>
struct ReducedElement {
    ToeplitzElement<Alg> element;  // order 0
    int s = 0;
    int mu = 0;
};

/// Ã = S_{s-μ} # A # S_{-s} with P̃0 = S_s P0 S_{-s} and P̃1 = S_{s-μ} P1 S_{μ-s}.
template <AlgebraInstance Alg>
ReducedElement<Alg> reduce_order(const ToeplitzElement<Alg>& a, int mu, int s, const ReductionFamily<Alg>& family,
                                 const CalculusOptions& opt) {
    using Op = typename Alg::Operator;
    const int d0 = Alg::rows(a.p0.op);
    const int d1 = Alg::rows(a.p1.op);
    const Op s0_pos = family(s, d0);
    const Op s0_neg = family(-s, d0);
    const Op s1_pos = family(s - mu, d1);
    const Op s1_neg = family(mu - s, d1);
    ReducedElement<Alg> out;
    out.s = s;
    out.mu = mu;
    out.element.inner = detail::compose3<Alg>(s1_pos, a.inner, s0_neg, opt);
    out.element.op = detail::compose3<Alg>(s1_pos, a.op, s0_neg, opt);
    out.element.p0 = certify_projection<Alg>(detail::compose3<Alg>(s0_pos, a.p0.op, s0_neg, opt), opt);
    out.element.p1 = certify_projection<Alg>(detail::compose3<Alg>(s1_pos, a.p1.op, s1_neg, opt), opt);
    return out;
}

/// Human-readable residual order for a leading level relative to a top order.
template <AlgebraInstance Alg>
std::string describe_level(const typename Alg::Operator& x, const CalculusOptions& opt) {
    return Alg::format_level(Alg::order(x), Alg::leading_level(x, opt), Alg::depth(x));
}

}  // namespace toeplitz::core
