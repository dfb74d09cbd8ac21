#include "toeplitz/lab/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "toeplitz/circle/builtins.hpp"
#include "toeplitz/lab/index.hpp"

namespace toeplitz::lab {

using circle::CircleAlgebra;
using circle::Operator;

namespace {

Operator kernel_part(const Operator& a) {
    return {circle::ClassicalSymbol::zero(a.order(), a.depth(), a.rows(), a.cols()), a.kernel, 0.0, std::nullopt};
}

double principal_gap(const circle::TrigPoly& a, const circle::TrigPoly& b) { return (a - b).max_abs(); }

std::string verdict_text(bool elliptic) { return elliptic ? "elliptic" : "not elliptic"; }

int grid_for(const circle::Element& t, int grid) {
    const int k = std::max({t.op.symbol.comps[0].bandwidth(), t.p0.op.symbol.comps[0].bandwidth(),
                            t.p1.op.symbol.comps[0].bandwidth()});
    return std::max(grid, 4 * (k + 1));
}

VerifyCheck kernel_identity(const circle::Element& t, const VerifyOptions& opt, const CalculusOptions& calc) {
    const Operator w = witness_operator(t, calc);
    const Operator id0 = circle::identity(t.op.cols(), t.op.depth());
    const Operator id1 = circle::identity(t.op.rows(), t.op.depth());
    const int ker_w = section_kernel(w, id0, id0, opt.M, opt.tau).dimension;
    const int ker_a = section_kernel(t.op, t.p0.op, t.p1.op, opt.M, opt.tau).dimension;

    const Operator a_star = circle::adjoint(t.op, calc);
    const Operator q1 = circle::subtract(id1, t.p1.op);
    const Operator w_adj = circle::add(circle::compose(t.op, a_star, calc), circle::compose(q1, circle::adjoint(q1, calc), calc));
    const int ker_wa = section_kernel(w_adj, id1, id1, opt.M, opt.tau).dimension;
    const int ker_as = section_cokernel(t.op, t.p0.op, t.p1.op, opt.M, opt.tau).dimension;

    std::ostringstream os;
    os << "ker W = " << ker_w << ", ker A = " << ker_a << "; ker W' = " << ker_wa << ", ker A* = " << ker_as;
    return {"kernel-identity", ker_w == ker_a && ker_wa == ker_as, os.str()};
}

VerifyCheck kernel_of_square(const circle::Element& t, const VerifyOptions& opt, const CalculusOptions& calc) {
    const Operator tt = circle::compose(circle::adjoint(t.op, calc), t.op, calc);
    const int ker_tt = section_kernel(tt, t.p0.op, t.p0.op, opt.M, opt.tau).dimension;
    const int ker_t = section_kernel(t.op, t.p0.op, t.p1.op, opt.M, opt.tau).dimension;
    std::ostringstream os;
    os << "ker T*T = " << ker_tt << ", ker T = " << ker_t;
    return {"kernel-TstarT", ker_tt == ker_t, os.str()};
}

VerifyCheck adjoint_index(const circle::Element& t, const VerifyOptions& opt, const CalculusOptions& calc) {
    circle::Element adj;
    adj.inner = circle::adjoint(t.inner, calc);
    adj.op = circle::adjoint(t.op, calc);
    adj.p0 = circle::certified(circle::adjoint(t.p1.op, calc), calc);
    adj.p1 = circle::certified(circle::adjoint(t.p0.op, calc), calc);
    const auto a = numerical_index(t, opt.M, opt.tau);
    const auto b = numerical_index(adj, opt.M, opt.tau);
    std::ostringstream os;
    if (!a.stable || !b.stable) {
        os << "index unresolved (A: " << a.verdict() << ", A*: " << b.verdict() << ")";
        return {"adjoint-index", false, os.str()};
    }
    os << "index A = " << a.index << ", index A* = " << b.index;
    return {"adjoint-index", b.index == -a.index, os.str()};
}

VerifyCheck compactness(const circle::Element& t, const VerifyOptions& opt, const CalculusOptions& calc) {
    Operator r = kernel_part(t.op);
    std::string source = "kernel of A";
    try {
        r = circle::symbol_parametrix(t, calc).left_residual;
        source = "parametrix residual";
    } catch (const Error&) {
        // not elliptic: the explicit kernel of A is the smoothing part at hand
    }
    const double scale = std::max(1.0, galerkin(r, opt.M).data.norm());
    const int c1 = compactness_cutoff(r, opt.M, opt.tau * scale);
    const int c2 = compactness_cutoff(r, 2 * opt.M, opt.tau * scale);
    std::ostringstream os;
    os << source << ": cutoff " << c1 << " at M=" << opt.M << ", " << c2 << " at M=" << 2 * opt.M;
    return {"compactness", c2 <= c1 && c2 < 2 * opt.M, os.str()};
}

VerifyCheck sigma_axioms(const circle::Element& t, const CalculusOptions& calc) {
    const Operator a_star = circle::adjoint(t.op, calc);
    const Operator prod = circle::compose(a_star, t.op, calc);
    const double scale = std::max(1.0, t.op.symbol.comps[0].max_abs());
    const double tol = calc.zero_tol * scale * scale;
    std::ostringstream os;
    for (int sign : {1, -1}) {
        const auto& s = t.op.symbol.comps[0].branch(sign);
        const std::string b = sign > 0 ? "+" : "-";
        if (principal_gap(prod.symbol.comps[0].branch(sign), s.adjoint() * s) > tol) {
            return {"sigma-axioms", false, "sigma(A*A) != sigma(A)*sigma(A) on branch " + b};
        }
        if (principal_gap(a_star.symbol.comps[0].branch(sign), s.adjoint()) > tol) {
            return {"sigma-axioms", false, "sigma(A*) != sigma(A)* on branch " + b};
        }
    }
    if (circle::leading_level(kernel_part(t.op).symbol, calc.zero_tol)) {
        return {"sigma-axioms", false, "smoothing part has a nonzero symbol"};
    }
    return {"sigma-axioms", true, "multiplicative, smoothing-null, adjoint-compatible"};
}

VerifyCheck perturbation(const circle::Element& t, const VerifyOptions& opt, const CalculusOptions& calc) {
    try {
        const auto q0 = perturbed_projection(t.p0, opt.seed, calc);
        const auto q1 = perturbed_projection(t.p1, opt.seed + 1, calc);
        const auto tq = core::toeplitz_compress<CircleAlgebra>(t.inner, q0, q1, calc);
        const bool vp = circle::check_ellipticity(t, grid_for(t, opt.grid), opt.kappa).elliptic;
        const bool vq = circle::check_ellipticity(tq, grid_for(tq, opt.grid), opt.kappa).elliptic;
        std::ostringstream os;
        os << "P: " << verdict_text(vp) << ", Q: " << verdict_text(vq) << " (" << q0.iterations << "+"
           << q1.iterations << " completion steps)";
        return {"perturbation", vp == vq, os.str()};
    } catch (const Error& e) {
        return {"perturbation", false, e.what()};
    }
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

Operator witness_operator(const circle::Element& t, const CalculusOptions& calc) {
    const Operator q0 = circle::subtract(circle::identity(t.op.cols(), t.op.depth()), t.p0.op);
    return circle::add(circle::compose(circle::adjoint(t.op, calc), t.op, calc),
                       circle::compose(circle::adjoint(q0, calc), q0, calc));
}

circle::Projection perturbed_projection(const circle::Projection& p, std::uint64_t seed, const CalculusOptions& calc) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-2, 2);
    const int dim = p.op.rows();
    auto noise = circle::ClassicalSymbol::zero(0, p.op.depth(), dim, dim);
    if (noise.comps.size() > 1) {
        for (auto* branch : {&noise.comps[1].plus, &noise.comps[1].minus}) {
            for (int n = -1; n <= 1; ++n) {
                CMatrix c(dim, dim);
                for (Eigen::Index i = 0; i < c.size(); ++i) c.data()[i] = cplx(d(rng), d(rng)) / 16.0;
                branch->add_coefficient(n, c);
            }
        }
    }
    const Operator start = circle::add(p.op, Operator{noise, circle::SmoothingKernel(dim, dim), 0.0, std::nullopt});
    return core::complete_projection<CircleAlgebra>(start, calc);
}

int compactness_cutoff(const Operator& r, int M, double tol) {
    const auto g = galerkin(r, M);
    // tail[c] = Frobenius mass of the columns with |n| > c
    std::vector<double> mass(M + 1, 0.0);
    for (int n = -M; n <= M; ++n) {
        double s = 0.0;
        for (int j = 0; j < g.block_cols; ++j) s += g.data.col(g.col_index(n, j)).squaredNorm();
        mass[std::abs(n)] += s;
    }
    double tail = 0.0;
    int cutoff = M;
    for (int c = M; c >= 0; --c) {
        // tail currently holds columns |n| > c
        if (std::sqrt(tail) > tol) break;
        cutoff = c;
        tail += mass[c];
    }
    return cutoff;
}

VerifyReport verify_suite(const circle::Element& t, const VerifyOptions& opt, const CalculusOptions& calc) {
    if (t.op.order() != 0) throw InputError("verify needs an order-0 element; reduce the order first");
    require_resolution(t.op, opt.M);
    VerifyReport report;
    report.checks.push_back(kernel_identity(t, opt, calc));
    report.checks.push_back(kernel_of_square(t, opt, calc));
    report.checks.push_back(adjoint_index(t, opt, calc));
    report.checks.push_back(compactness(t, opt, calc));
    report.checks.push_back(sigma_axioms(t, calc));
    report.checks.push_back(perturbation(t, opt, calc));
    return report;
}

}  // namespace toeplitz::lab
