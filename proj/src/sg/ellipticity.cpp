#include "toeplitz/sg/ellipticity.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "toeplitz/format.hpp"

namespace toeplitz::sg {

namespace {

CMatrix range_basis(const CMatrix& m) {
    if (m.size() == 0) return CMatrix(m.rows(), 0);
    Eigen::ColPivHouseholderQR<CMatrix> qr(m);
    qr.setThreshold(1e-10);
    return qr.householderQ() * CMatrix::Identity(m.rows(), qr.rank());
}

const char* sign_text(int s) { return s == 0 ? "+" : "-"; }

struct GridScan {
    double min_singular = std::numeric_limits<double>::infinity();
    std::string witness;
    std::string mismatch;
};

/// Restricted singular values of σ(u) between range π0(u), range π1(u) over sample points.
template <class Eval>
void scan(const std::vector<double>& pts, Eval&& eval, const std::string& var, const std::string& branch,
          GridScan& out) {
    int r0_ref = -1;
    int r1_ref = -1;
    for (double u : pts) {
        auto [sigma, pi0, pi1] = eval(u);
        const CMatrix q0 = range_basis(pi0);
        const CMatrix q1 = range_basis(pi1);
        const int r0 = static_cast<int>(q0.cols());
        const int r1 = static_cast<int>(q1.cols());
        if (r0_ref < 0) {
            r0_ref = r0;
            r1_ref = r1;
        } else if (r0 != r0_ref || r1 != r1_ref) {
            throw InputError("invalid projection symbol: rank changes at " + var + "=" + format_number(u));
        }
        if (r0 != r1) {
            if (out.mismatch.empty()) out.mismatch = branch + ", rank " + std::to_string(r0) + " -> " + std::to_string(r1);
            return;
        }
        if (r0 == 0) continue;
        const CMatrix restricted = q1.adjoint() * sigma * q0;
        Eigen::JacobiSVD<CMatrix> svd(restricted);
        const double s = svd.singularValues()(svd.singularValues().size() - 1);
        if (s < out.min_singular) {
            out.min_singular = s;
            out.witness = var + "=" + format_number(u) + ", " + branch;
        }
    }
}

bool is_constant(const SGSymbol& p) {
    for (const auto& [k, c] : p.terms) {
        if (!(k.x.degree == 0 && k.x.parity == 0 && k.xi.degree == 0 && k.xi.parity == 0)) return false;
    }
    return true;
}

QMatrix constant_part(const SGSymbol& p) {
    QMatrix c(p.rows, p.cols);
    for (const auto& [k, m] : p.terms) c += m;
    return c;
}

}  // namespace

std::vector<double> compactified_grid(int grid) {
    if (grid < 1) throw InputError("grid size must be positive");
    if (grid % 2 == 0) ++grid;
    std::vector<double> pts(grid);
    const int half = grid / 2;
    for (int i = 0; i < grid; ++i) {
        const double t = double(i - half) / double(half + 1);
        pts[i] = (i == half) ? 0.0 : std::tan(std::numbers::pi * t / 2.0);
    }
    return pts;
}

SGCertificate check_ellipticity(const Element& t, int x_grid, int xi_grid, double kappa) {
    SGCertificate cert;
    cert.x_grid = x_grid;
    cert.xi_grid = xi_grid;
    cert.kappa = kappa;
    const auto sa = three_symbols(t.op);
    const auto s0 = three_symbols(t.p0.op);
    const auto s1 = three_symbols(t.p1.op);
    const int mu = t.op.order.mu;
    const int m = t.op.order.m;

    for (int sx = 0; sx < 2; ++sx) {
        for (int sxi = 0; sxi < 2; ++sxi) {
            const QMatrix& pi0 = s0.corners[sx][sxi];
            const QMatrix& pi1 = s1.corners[sx][sxi];
            const QMatrix restricted = pi1 * sa.corners[sx][sxi] * pi0;
            const int r0 = pi0.rank();
            const int r1 = pi1.rank();
            const int ra = restricted.rank();
            cert.corner_ranks[sx * 2 + sxi] = ra;
            const std::string where = std::string("corner x=") + sign_text(sx) + "inf, xi=" + sign_text(sxi) + "inf";
            if (r0 != r1) {
                cert.reason = "rank mismatch";
                cert.witness = where + ", rank " + std::to_string(r0) + " -> " + std::to_string(r1);
                return cert;
            }
            if (ra < r0) {
                cert.reason = "corner symbol singular";
                cert.witness = where;
                return cert;
            }
        }
    }

    GridScan g;
    const auto xs = compactified_grid(x_grid);
    const auto xis = compactified_grid(xi_grid);
    for (int s = 0; s < 2; ++s) {
        const std::string branch = std::string("xi-branch=") + sign_text(s);
        scan(xs, [&](double x) {
            const double w = std::pow(1.0 + x * x, -m / 2.0);
            return std::make_tuple(CMatrix(w * sa.xi_principal[s](x)), s0.xi_principal[s](x), s1.xi_principal[s](x));
        }, "x", branch, g);
        const std::string xbranch = std::string("x-branch=") + sign_text(s);
        scan(xis, [&](double xi) {
            const double w = std::pow(1.0 + xi * xi, -mu / 2.0);
            return std::make_tuple(CMatrix(w * sa.x_principal[s](xi)), s0.x_principal[s](xi), s1.x_principal[s](xi));
        }, "xi", xbranch, g);
    }
    if (!g.mismatch.empty()) {
        cert.reason = "rank mismatch";
        cert.witness = g.mismatch;
        return cert;
    }
    cert.min_singular = std::isfinite(g.min_singular) ? g.min_singular : 0.0;
    cert.elliptic = !std::isfinite(g.min_singular) || g.min_singular >= 1.0 / kappa;
    if (!cert.elliptic) {
        cert.reason = "restricted symbol singular";
        cert.witness = g.witness;
    }
    return cert;
}

Parametrix sg_parametrix(const Element& t, const SGSymbol& candidate, const CalculusOptions& opt) {
    return core::parametrix_bootstrap<SGAlgebra>(t, candidate, candidate, core::CandidateKind::FullAlgebra, opt);
}

Parametrix sg_parametrix(const Element& t, const CalculusOptions& opt) {
    const SGSymbol& a = t.op;
    const TermKey lead{{Rational(a.order.m), 0}, {Rational(a.order.mu), 0}};
    QMatrix lead_matrix;
    bool found = false;
    for (const auto& [k, c] : a.terms) {
        if (a.level(k) != 0) continue;
        if (!(k == lead)) throw InputError("candidate required: leading part is not of monomial type");
        lead_matrix = c;
        found = true;
    }
    if (!found) throw NotElliptic("not elliptic-certified", "principal part vanishes");
    if (!is_constant(t.p0.op) || !is_constant(t.p1.op)) {
        throw InputError("candidate required: projections are not constant");
    }
    const QMatrix pi0 = constant_part(t.p0.op);
    const QMatrix pi1 = constant_part(t.p1.op);
    const QMatrix r = pi1 * lead_matrix * pi0;
    const QMatrix q = QMatrix::identity(pi0.rows()) - pi0;
    QMatrix w_inv;
    try {
        w_inv = (r.adjoint() * r + q.adjoint() * q).inverse();
    } catch (const NotInvertible&) {
        throw NotElliptic("not elliptic (restricted symbol not bijective)", "leading coefficient matrix");
    }
    const QMatrix n = pi0 * w_inv * r.adjoint() * pi1;
    SGSymbol cand = SGSymbol::zero({-a.order.mu, -a.order.m}, a.depth, a.cols, a.rows);
    cand.add_term({Rational(-a.order.m), 0}, {Rational(-a.order.mu), 0}, n);
    return core::parametrix_bootstrap<SGAlgebra>(t, cand, cand, core::CandidateKind::Toeplitz, opt);
}

SGReductionPair sg_order_reduction(int mu, int m, int dim, const CalculusOptions& opt) {
    SGReductionPair out;
    out.forward = SGSymbol::weight(mu, m, dim, opt.depth);
    const SGSymbol cand = SGSymbol::weight(-mu, -m, dim, opt.depth);
    const SGSymbol id = SGAlgebra::identity(dim, opt.depth);
    out.level_before = leading_level(add(compose(out.forward, cand, opt), id, CQ(-1)));
    const Projection full = sg_full_projection(dim, opt.depth);
    const Element e{out.forward, out.forward, full, full};
    out.inverse = core::parametrix_bootstrap<SGAlgebra>(e, cand, cand, core::CandidateKind::Toeplitz, opt).b.op;
    out.level_after = leading_level(add(compose(out.forward, out.inverse, opt), id, CQ(-1)));
    return out;
}

Projection sg_full_projection(int dim, int depth) { return {SGAlgebra::identity(dim, depth), 0, {std::nullopt}}; }

Projection sg_constant_projection(const QMatrix& p, int depth) {
    if (!(p * p == p)) throw InputError("constant matrix is not a projection");
    return {SGSymbol::constant(p, depth), 0, {std::nullopt}};
}

}  // namespace toeplitz::sg
