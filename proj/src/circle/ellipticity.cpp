#include "toeplitz/circle/ellipticity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "toeplitz/circle/builtins.hpp"
#include "toeplitz/format.hpp"

namespace toeplitz::circle {

namespace {

double grid_theta(int g, int grid) { return 2.0 * std::numbers::pi * g / grid; }

std::string witness_text(double theta, int sign) {
    return "theta=" + format_number(theta) + ", branch=" + (sign > 0 ? "+" : "-");
}

double smallest_singular(const CMatrix& m) {
    if (m.size() == 0) return std::numeric_limits<double>::infinity();
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (m.rows() != m.cols()) return 0.0;
    return sv(sv.size() - 1);
}

const HomComponent& principal(const Operator& op) {
    if (op.symbol.comps.empty()) throw InputError("operator has no retained components");
    return op.symbol.comps[0];
}

int rank_of(const CMatrix& m) { return static_cast<int>(range_basis(m).cols()); }

}  // namespace

CMatrix range_basis(const CMatrix& m) {
    if (m.size() == 0) return CMatrix(m.rows(), 0);
    Eigen::ColPivHouseholderQR<CMatrix> qr(m);
    qr.setThreshold(1e-10);
    const auto r = qr.rank();
    CMatrix q = qr.householderQ() * CMatrix::Identity(m.rows(), r);
    return q;
}

CMatrix RestrictedSymbolData::restricted(int sign, double theta) const {
    const auto& b = branch(sign);
    const CMatrix q0 = range_basis(b.pi0(theta));
    const CMatrix q1 = range_basis(b.pi1(theta));
    return q1.adjoint() * b.sigma(theta) * q0;
}

RestrictedSymbolData principal_and_restricted(const Operator& a, const Operator& p0, const Operator& p1,
                                              int grid) {
    if (p0.order() != 0 || p1.order() != 0) throw InputError("projections must have order 0");
    if (a.cols() != p0.rows() || a.rows() != p1.rows()) {
        throw InputError("operator dimensions do not match the projections");
    }
    RestrictedSymbolData out;
    out.order = a.order();
    for (int idx = 0; idx < 2; ++idx) {
        const int sign = idx == 0 ? 1 : -1;
        BranchData b;
        b.sign = sign;
        b.sigma = principal(a).branch(sign);
        b.pi0 = principal(p0).branch(sign);
        b.pi1 = principal(p1).branch(sign);
        for (int g = 0; g < grid; ++g) {
            const double theta = grid_theta(g, grid);
            const int r0 = rank_of(b.pi0(theta));
            const int r1 = rank_of(b.pi1(theta));
            if (g == 0) {
                b.r0 = r0;
                b.r1 = r1;
            } else if (r0 != b.r0 || r1 != b.r1) {
                throw InputError("invalid projection symbol: rank changes at " + witness_text(theta, sign));
            }
        }
        out.branches[idx] = std::move(b);
    }
    return out;
}

Certificate check_ellipticity(const Element& t, int grid, double kappa) {
    Certificate cert;
    cert.grid = grid;
    cert.kappa = kappa;
    cert.bandwidth = std::max({principal(t.op).bandwidth(), principal(t.p0.op).bandwidth(),
                               principal(t.p1.op).bandwidth()});
    if (grid < 4 * (cert.bandwidth + 1)) {
        throw InputError("grid size " + std::to_string(grid) + " below 4(K+1) = " +
                         std::to_string(4 * (cert.bandwidth + 1)));
    }
    const auto data = principal_and_restricted(t.op, t.p0.op, t.p1.op, grid);
    double best = std::numeric_limits<double>::infinity();
    std::string best_witness;
    for (const auto& b : data.branches) {
        if (b.r0 != b.r1) {
            cert.elliptic = false;
            cert.min_singular = 0.0;
            cert.reason = "rank mismatch";
            cert.witness = std::string("branch=") + (b.sign > 0 ? "+" : "-") + ", rank " +
                           std::to_string(b.r0) + " -> " + std::to_string(b.r1);
            return cert;
        }
        if (b.r0 == 0) continue;
        for (int g = 0; g < grid; ++g) {
            const double theta = grid_theta(g, grid);
            const double s = smallest_singular(data.restricted(b.sign, theta));
            if (s < best) {
                best = s;
                best_witness = witness_text(theta, b.sign);
            }
        }
    }
    cert.min_singular = std::isfinite(best) ? best : 0.0;
    cert.elliptic = !std::isfinite(best) || best >= 1.0 / kappa;
    if (!cert.elliptic) {
        cert.reason = "restricted symbol singular";
        cert.witness = best_witness;
    }
    return cert;
}

Operator pointwise_candidate(const Element& t, const CalculusOptions& opt) {
    const int depth = std::min(opt.depth, t.op.depth());
    const int rows = t.op.cols();
    const int cols = t.op.rows();
    auto sym = ClassicalSymbol::zero(-t.op.order(), depth, rows, cols);
    for (int sign : {1, -1}) {
        const TrigPoly& sigma = principal(t.op).branch(sign);
        const TrigPoly& pi0 = principal(t.p0.op).branch(sign);
        const TrigPoly& pi1 = principal(t.p1.op).branch(sign);
        const TrigPoly a = pi1 * sigma * pi0;
        const TrigPoly q = TrigPoly::identity(rows) - pi0;
        const TrigPoly w = a.adjoint() * a + q.adjoint() * q;
        TrigPoly winv;
        try {
            winv = inverse(w);
        } catch (const NotElliptic& e) {
            throw NotElliptic("not elliptic (restricted symbol not bijective)",
                              e.witness() + (sign > 0 ? ", branch=+" : ", branch=-"));
        }
        TrigPoly c = winv * a.adjoint();
        c = c.pruned(0.0);
        (sign > 0 ? sym.comps[0].plus : sym.comps[0].minus) = c;
    }
    return {std::move(sym), SmoothingKernel(rows, cols), 0.0, std::nullopt};
}

Projection full_projection(int dim, int depth) { return {identity(dim, depth), 0, {std::nullopt}}; }

Projection certified(const Operator& p, const CalculusOptions& opt) {
    return core::certify_projection<CircleAlgebra>(p, opt);
}

Parametrix symbol_parametrix(const Element& t, const CalculusOptions& opt) {
    const Operator cand = pointwise_candidate(t, opt);
    return core::parametrix_bootstrap<CircleAlgebra>(t, cand, cand, core::CandidateKind::FullAlgebra, opt);
}

core::AmbientSolver<CircleAlgebra> ambient_solver(const CalculusOptions& opt, int grid, double kappa) {
    return [opt, grid, kappa](const Operator& w) {
        if (w.rows() != w.cols() || w.order() != 0) throw InputError("ambient solver needs a square order-0 operator");
        const int k = principal(w).bandwidth();
        const int g_eff = std::max(grid, 4 * (k + 1));
        for (int sign : {1, -1}) {
            const TrigPoly& s = principal(w).branch(sign);
            for (int g = 0; g < g_eff; ++g) {
                const double theta = grid_theta(g, g_eff);
                if (smallest_singular(s(theta)) < 1.0 / (kappa * kappa)) {
                    throw NotElliptic("not elliptic (restricted symbol not bijective)", witness_text(theta, sign));
                }
            }
        }
        const Projection id = full_projection(w.rows(), w.depth());
        const Element e{w, w, id, id};
        const Operator cand = pointwise_candidate(e, opt);
        return core::parametrix_bootstrap<CircleAlgebra>(e, cand, cand, core::CandidateKind::Toeplitz, opt).b.op;
    };
}

ReductionPair order_reduction(int mu, int dim, const CalculusOptions& opt) {
    ReductionPair out;
    out.forward = bracket_power(mu, dim, opt.depth);
    out.inverse = bracket_power(-mu, dim, opt.depth);
    const Operator id = identity(dim, opt.depth);
    out.left_level = leading_level(subtract(compose(out.forward, out.inverse, opt), id).symbol, opt.zero_tol);
    out.right_level = leading_level(subtract(compose(out.inverse, out.forward, opt), id).symbol, opt.zero_tol);
    return out;
}

core::ReductionFamily<CircleAlgebra> bracket_family(int depth) {
    return [depth](int mu, int dim) { return bracket_power(mu, dim, depth); };
}

core::ReductionFamily<CircleAlgebra> homogeneous_family(int depth) {
    return [depth](int mu, int dim) { return homogeneous_power(mu, dim, depth); };
}

}  // namespace toeplitz::circle
