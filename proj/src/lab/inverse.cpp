#include "toeplitz/lab/inverse.hpp"

#include <sstream>

#include "toeplitz/circle/builtins.hpp"
#include "toeplitz/format.hpp"
#include "toeplitz/lab/spectral.hpp"

namespace toeplitz::lab {

using circle::CircleAlgebra;
using circle::Operator;

SpectralInverse spectral_inverse(const circle::Element& a, const circle::Parametrix& b, const InverseOptions& opt,
                                 const CalculusOptions& calc) {
    require_resolution(a.op, opt.M);
    SpectralInverse out;
    const int M = opt.M;
    out.index = numerical_index(a, M, opt.tau);
    if (!out.index.stable) throw Unresolved("finite-section index is unresolved at M=" + std::to_string(M));
    if (out.index.coker > 0 && out.index.index != 0) {
        throw NotInvertible("no two-sided inverse exists (cokernel dimension " + std::to_string(out.index.coker) +
                            ")");
    }
    if (out.index.index != 0) {
        throw NotInvertible("no two-sided inverse exists (kernel dimension " + std::to_string(out.index.ker) + ")");
    }
    if (out.index.ker > 0) throw NotInvertible("not invertible at resolution M=" + std::to_string(M));

    const CMatrix ga = galerkin(a.op, M).data;
    const CMatrix v0 = spectral_range(galerkin(a.p0.op, M).data);
    const CMatrix v1 = spectral_range(galerkin(a.p1.op, M).data);
    if (v0.cols() != v1.cols()) {
        throw NotInvertible("finite sections are not square at resolution M=" + std::to_string(M));
    }
    const CMatrix am = v1.adjoint() * ga * v0;
    if (am.size() > 0) {
        Eigen::BDCSVD<CMatrix> svd(am);
        const auto& sv = svd.singularValues();
        out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                 : std::numeric_limits<double>::infinity();
        if (!(out.condition <= opt.cond)) {
            throw NotInvertible("not invertible at resolution M=" + std::to_string(M) + " (condition number " +
                                display_number(out.condition) + ")");
        }
    }
    const Eigen::Index r = am.rows();
    const CMatrix bm = v0.adjoint() * galerkin(b.b.op, M).data * v1;
    const CMatrix id = CMatrix::Identity(r, r);
    const CMatrix r0 = id - bm * am;
    const CMatrix r1 = id - am * bm;
    const CMatrix x = am.partialPivLu().inverse();
    const CMatrix inv = bm + r0 * bm + r0 * x * r1;
    const CMatrix g = v0 * inv * v1.adjoint();

    // symbol part of B + R0#B; the section at M is replaced by g through the kernel
    const Operator r0_op = circle::subtract(a.p0.op, circle::compose(b.b.op, a.op, calc));
    Operator result = circle::add(b.b.op, circle::compose(r0_op, b.b.op, calc));
    Operator symbol_only{result.symbol, circle::SmoothingKernel(result.rows(), result.cols()), 0.0, std::nullopt};
    const GalerkinMatrix gs = galerkin(symbol_only, M);
    circle::SmoothingKernel k(result.rows(), result.cols());
    const int br = result.rows();
    const int bc = result.cols();
    for (int n = -M; n <= M; ++n) {
        for (int m = -M; m <= M; ++m) {
            const CMatrix blk = g.block(gs.row_index(m), gs.col_index(n), br, bc) -
                                gs.data.block(gs.row_index(m), gs.col_index(n), br, bc);
            if (blk.cwiseAbs().maxCoeff() > 1e-15) k.add(m, n, blk);
        }
    }
    result.kernel = std::move(k);
    result.resolution = M;
    result.discarded_mass += b.b.op.discarded_mass;

    out.inverse = {result, result, a.p1, a.p0};
    const CMatrix gb = galerkin(result, M).data;
    out.left_residual = spectral_norm(gb * ga - galerkin(a.p0.op, M).data);
    out.right_residual = spectral_norm(ga * gb - galerkin(a.p1.op, M).data);
    return out;
}

ToeplitzReduction toeplitz_order_reduction(int mu, const circle::Projection& p, const InverseOptions& opt,
                                           const CalculusOptions& calc) {
    const auto& pc = p.op.symbol.comps.at(0);
    for (const auto* branch : {&pc.plus, &pc.minus}) {
        if ((branch->adjoint() - *branch).max_abs() > 1e-12) {
            throw InputError("positivity argument unavailable: projection is not orthogonal at principal level");
        }
    }
    const int dim = p.op.rows();
    const Operator s = circle::bracket_power(mu, dim, calc.depth);
    const Operator s_inv = circle::bracket_power(-mu, dim, calc.depth);
    ToeplitzReduction out;
    out.forward = core::toeplitz_compress<CircleAlgebra>(s, p, p, calc);

    const Operator q = circle::subtract(circle::identity(dim, calc.depth), p.op);
    const Operator split = circle::add(out.forward.op, circle::compose(circle::compose(q, s, calc), q, calc));
    const CMatrix gsplit = galerkin(split, opt.M).data;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gsplit + gsplit.adjoint()), Eigen::EigenvaluesOnly);
    out.positivity_margin = es.eigenvalues()(0);
    if (!(out.positivity_margin > 0.0)) {
        throw NotInvertible("order reduction is not positive at resolution M=" + std::to_string(opt.M));
    }

    const Operator cand = circle::compose(circle::compose(p.op, s_inv, calc), p.op, calc);
    const auto param =
        core::parametrix_bootstrap<CircleAlgebra>(out.forward, cand, cand, core::CandidateKind::Toeplitz, calc);
    out.bootstrap_level = param.diagnostics.left_residual_level;
    const auto inv = spectral_inverse(out.forward, param, opt, calc);
    out.inverse = inv.inverse;
    const CMatrix gp = galerkin(p.op, opt.M).data;
    out.pair_residual =
        spectral_norm(galerkin(out.forward.op, opt.M).data * galerkin(out.inverse.op, opt.M).data - gp);
    return out;
}

}  // namespace toeplitz::lab
