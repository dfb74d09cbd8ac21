// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "helpers.hpp"
#include "sg_helpers.hpp"
#include "toeplitz/cli/run.hpp"
#include "toeplitz/lab/index.hpp"
#include "toeplitz/lab/inverse.hpp"
#include "toeplitz/lab/spectral.hpp"
#include "toeplitz/lab/verify.hpp"
#include "toeplitz/sg/ellipticity.hpp"

using namespace testing;
namespace fs = std::filesystem;
namespace lab = toeplitz::lab;
namespace sgc = toeplitz::sg;
using circle::CircleAlgebra;

namespace {

// pinned tolerances
constexpr int kDepth = 5;
constexpr double kTau = 1e-8;
constexpr int kIndexModes = 64;
constexpr double kIndexSeconds = 10.0;
constexpr double kMinDet = 0.1;
constexpr int kDetGrid = 256;
constexpr double kRouteGap = 1e-6;
constexpr int kRouteModes = 128;
constexpr double kInverseResidual = 1e-6;
constexpr int kInverseModes = 128;
constexpr int kKernelModes = 64;
constexpr int kSlopeDepth = 4;
constexpr double kSlopeSlack = 0.5;
constexpr double kSpectrumBand = 0.1;
constexpr int kSpectrumModes = 32;
constexpr double kPairResidual = 1e-6;
constexpr int kPairModes = 128;
constexpr double kDiagram = 1e-8;
constexpr int kDiagramModes = 64;

struct Outcome {
    bool pass = false;
    std::string detail;
};

CalculusOptions opts(int depth) {
    CalculusOptions o;
    o.depth = depth;
    return o;
}

circle::Projection hardy_handle(int dim, const CalculusOptions& o) { return circle::certified(circle::hardy(dim, o.depth), o); }

circle::Element compress(const Operator& a, const circle::Projection& p0, const circle::Projection& p1,
                         const CalculusOptions& o) {
    return core::toeplitz_compress<CircleAlgebra>(a, p0, p1, o);
}

bool all_zero(const circle::ClassicalSymbol& s) {
    for (const auto& c : s.comps) {
        if (c.plus.max_abs() != 0.0 || c.minus.max_abs() != 0.0) return false;
    }
    return true;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// 1. finite-section index against the winding of det f
Outcome index_winding() {
    const auto start = std::chrono::steady_clock::now();
    const auto o = opts(kDepth);
    std::vector<TrigPoly> loops;
    for (int k = -3; k <= 3; ++k) loops.push_back(exp_mode(k));
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> band(1, 3);
    int random_loops = 0;
    while (random_loops < 10) {
        const int dim = random_loops < 5 ? 1 : 2;
        TrigPoly f = random_real_trig(rng, dim, dim, band(rng));
        if (lab::min_abs_det(f, kDetGrid) <= kMinDet) continue;
        loops.push_back(f);
        ++random_loops;
    }
    int agree = 0;
    int unresolved = 0;
    std::string first_bad;
    for (const auto& f : loops) {
        const auto h = hardy_handle(f.rows(), o);
        const auto r = lab::numerical_index(compress(circle::multiplication(f, kDepth), h, h, o), kIndexModes, kTau);
        const int w = lab::winding_oracle(f, kDetGrid);
        if (r.stable && r.index == -w) {
            ++agree;
        } else if (!r.stable) {
            ++unresolved;
        }
        if (!(r.stable && r.index == -w) && first_bad.empty()) {
            first_bad = "; mismatch: index " + std::to_string(r.index) + " (" + r.verdict() + ") vs winding " +
                        std::to_string(w);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = agree == static_cast<int>(loops.size()) && secs < kIndexSeconds;
    return {pass, std::to_string(agree) + "/" + std::to_string(loops.size()) + " loops agree, " + std::to_string(unresolved) +
                      " unresolved, in " + fmt(secs) + " s" + first_bad};
}

/// Order-0 or order-1 Hardy Toeplitz element whose principal symbol is a dyadic monomial
/// matrix times e^{ikθ}, so pointwise inversion is exact in floating point.
circle::Element dyadic_instance(std::mt19937_64& rng, int trial, const CalculusOptions& o) {
    const int dim = 1 + trial % 2;
    const int order = trial % 3 == 2 ? 1 : 0;
    std::uniform_int_distribution<int> mode(-2, 2);
    std::uniform_int_distribution<int> expo(-2, 2);
    CMatrix lead = CMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) lead((i + trial) % dim, i) = std::ldexp(1.0, expo(rng)) * (trial % 4 == 1 ? -1.0 : 1.0);
    auto s = circle::ClassicalSymbol::zero(order, kDepth, dim, dim);
    s.comps[0].plus = TrigPoly::monomial(mode(rng), lead);
    s.comps[0].minus = random_integer_trig(rng, dim, dim, 1);
    for (int j = 1; j < kDepth; ++j) {
        s.comps[j].plus = 0.25 * random_integer_trig(rng, dim, dim, 1);
        s.comps[j].minus = 0.25 * random_integer_trig(rng, dim, dim, 1);
    }
    const Operator a{s, circle::SmoothingKernel(dim, dim), 0.0, std::nullopt};
    const auto h = hardy_handle(dim, o);
    return compress(a, h, h, o);
}

// 2. bootstrap from pointwise candidates, residuals exactly zero at retained levels
Outcome bootstrap_exact() {
    const auto o = opts(kDepth);
    std::mt19937_64 rng(202);
    int exact = 0;
    std::string note;
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = dyadic_instance(rng, trial, o);
        if (!circle::check_ellipticity(t, 64, 1e6).elliptic) {
            note = "; instance " + std::to_string(trial) + " not certified";
            continue;
        }
        try {
            const auto p = circle::symbol_parametrix(t, o);
            if (all_zero(p.left_residual.symbol) && all_zero(p.right_residual.symbol)) {
                ++exact;
            } else if (note.empty()) {
                note = "; instance " + std::to_string(trial) + " has a nonzero retained residual";
            }
        } catch (const toeplitz::Error& e) {
            if (note.empty()) note = "; instance " + std::to_string(trial) + ": " + e.what();
        }
    }
    return {exact == 10, std::to_string(exact) + "/10 residuals identically zero to order -" + std::to_string(kDepth - 1) +
                             note};
}

// 3. symbol route and witness route agree
Outcome route_equivalence() {
    const auto o = opts(kDepth);
    std::vector<circle::Element> cases;
    const auto h1 = hardy_handle(1, o);
    cases.push_back(compress(circle::multiplication(TrigPoly::constant(scalar(2.0)) + exp_mode(1), kDepth), h1, h1, o));
    cases.push_back(compress(circle::multiplication(exp_mode(1), kDepth), h1, h1, o));
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 10; trial += 3) cases.push_back(dyadic_instance(rng, trial, o));
    const auto h2 = hardy_handle(2, o);
    cases.push_back(compress(circle::multiplication(TrigPoly::identity(2) + 0.125 * random_integer_trig(rng, 2, 2, 1), kDepth),
                             h2, h2, o));
    double worst = 0.0;
    bool symbolic = true;
    int count = 0;
    for (const auto& t : cases) {
        if (t.op.order() != 0) continue;
        const auto b1 = circle::symbol_parametrix(t, o);
        const auto b2 = core::fredholm_parametrix<CircleAlgebra>(t, circle::ambient_solver(o, 64, 1e6), o);
        const auto diff = circle::subtract(b1.b.op, b2.b.op);
        symbolic = symbolic && !circle::leading_level(diff.symbol, o.zero_tol);
        worst = std::max(worst, lab::interior_norm(lab::galerkin(diff, kRouteModes)));
        ++count;
    }
    return {symbolic && worst <= kRouteGap && count >= 5,
            std::to_string(count) + " instances, difference order <= " + std::to_string(-kDepth) +
                (symbolic ? "" : " violated") + ", max interior gap " + fmt(worst) + " at M=" +
                std::to_string(kRouteModes)};
}

// 4. spectral inverse and refusal
Outcome spectral_invariance() {
    const auto o = opts(kDepth);
    const auto h = hardy_handle(1, o);
    const auto t = compress(circle::multiplication(TrigPoly::constant(scalar(2.0)) + exp_mode(1), kDepth), h, h, o);
    const auto inv = lab::spectral_inverse(t, circle::symbol_parametrix(t, o), {kInverseModes, kTau, 1e8}, o);
    bool refused = false;
    std::string reason;
    const auto s = compress(circle::multiplication(exp_mode(1), kDepth), h, h, o);
    try {
        lab::spectral_inverse(s, circle::symbol_parametrix(s, o), {kInverseModes, kTau, 1e8}, o);
    } catch (const toeplitz::NotInvertible& e) {
        reason = e.what();
        refused = reason.find("cokernel") != std::string::npos;
    }
    const bool pass = inv.left_residual <= kInverseResidual && inv.right_residual <= kInverseResidual && refused;
    return {pass, "residuals " + fmt(inv.left_residual) + ", " + fmt(inv.right_residual) + "; shift: " +
                      (refused ? reason : std::string("not refused"))};
}

// 5. kernel of the witness equals the kernel of the element, and for the adjoint
Outcome kernel_identity() {
    const auto o = opts(kDepth);
    const auto h = hardy_handle(1, o);
    const auto t = compress(circle::multiplication(exp_mode(1), kDepth), h, h, o);
    const Operator id = circle::identity(1, kDepth);
    const Operator w = lab::witness_operator(t, o);
    const int ker_w = lab::section_kernel(w, id, id, kKernelModes, kTau).dimension;
    const int ker_a = lab::section_kernel(t.op, h.op, h.op, kKernelModes, kTau).dimension;

    const Operator a_star = circle::adjoint(t.op, o);
    const auto t_star = compress(a_star, h, h, o);
    const Operator w_star = lab::witness_operator(t_star, o);
    const int ker_ws = lab::section_kernel(w_star, id, id, kKernelModes, kTau).dimension;
    const int ker_as = lab::section_kernel(a_star, h.op, h.op, kKernelModes, kTau).dimension;
    const bool pass = ker_w == ker_a && ker_w == 0 && ker_ws == ker_as && ker_ws == 1;
    return {pass, "ker W = " + std::to_string(ker_w) + ", ker A = " + std::to_string(ker_a) + "; adjoint: ker W = " +
                      std::to_string(ker_ws) + ", ker A* = " + std::to_string(ker_as)};
}

// 6. interior discrepancy of a#b against Gal(a)Gal(b) decays at the truncation order
Outcome composition_faithfulness() {
    const auto o = opts(kSlopeDepth);
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> ord(-1, 1);
    int good = 0;
    double worst_margin = -1e300;
    for (int trial = 0; trial < 20; ++trial) {
        const int mu = ord(rng);
        const int nu = ord(rng);
        const int dim = 1 + trial % 2;
        const auto a = random_symbol(rng, mu, kSlopeDepth, dim, dim, 2, false);
        const auto b = random_symbol(rng, nu, kSlopeDepth, dim, dim, 2, false);
        const auto c = circle::compose(a, b, o);
        std::vector<double> ms;
        std::vector<double> errs;
        for (int M : {32, 64, 128}) {
            const auto gc = lab::galerkin(c, M);
            const CMatrix prod = lab::galerkin(a, M).data * lab::galerkin(b, M).data;
            errs.push_back(interior_discrepancy(gc, gc.data - prod));
            ms.push_back(M);
        }
        const double bound = mu + nu - kSlopeDepth + kSlopeSlack;
        const double slope = loglog_slope(ms, errs);
        worst_margin = std::max(worst_margin, slope - bound);
        if (slope <= bound) ++good;
    }
    return {good == 20, std::to_string(good) + "/20 pairs within slope bound, worst slope - bound = " + fmt(worst_margin)};
}

// 7. Newton–Schulz completion and clustered section spectra
Outcome projection_machinery() {
    const auto o = opts(kDepth);
    const auto h = hardy_handle(1, o);
    const int max_iter = static_cast<int>(std::ceil(std::log2(double(kDepth))));
    int good = 0;
    int worst_iter = 0;
    double worst_spread = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto q = lab::perturbed_projection(h, seed, o);
        const double spread = lab::idempotency_spread(lab::galerkin(q.op, kSpectrumModes).data);
        worst_iter = std::max(worst_iter, q.iterations);
        worst_spread = std::max(worst_spread, spread);
        if (q.iterations <= max_iter && !q.history.back() && spread <= kSpectrumBand) ++good;
    }
    return {good == 10, std::to_string(good) + "/10 instances; max iterations " + std::to_string(worst_iter) + " (limit " +
                            std::to_string(max_iter) + "), max eigenvalue distance from {0,1} " + fmt(worst_spread)};
}

// 8. order reductions
Outcome order_reductions() {
    const auto o = opts(kDepth);
    bool plain = true;
    for (int mu : {1, 2, 3}) {
        const auto pr = circle::order_reduction(mu, 1, o);
        const Operator id = circle::identity(1, kDepth);
        plain = plain && all_zero(circle::subtract(circle::compose(pr.forward, pr.inverse, o), id).symbol) &&
                all_zero(circle::subtract(circle::compose(pr.inverse, pr.forward, o), id).symbol);
    }
    const auto h = hardy_handle(1, o);
    const auto tp = lab::toeplitz_order_reduction(1, h, {kPairModes, kTau, 1e8}, o);

    const auto full = circle::full_projection(1, kDepth);
    const auto e = compress(circle::add(circle::derivative(1, kDepth), circle::identity(1, kDepth)), full, full, o);
    const auto fam = circle::homogeneous_family(kDepth);
    const auto r = core::reduce_order<CircleAlgebra>(e, 1, 1, fam, o);
    const CMatrix lhs = lab::galerkin(r.element.op, kDiagramModes).data;
    const CMatrix rhs = lab::galerkin(fam(0, 1), kDiagramModes).data * lab::galerkin(e.op, kDiagramModes).data *
                        lab::galerkin(fam(-1, 1), kDiagramModes).data;
    const double diagram = lab::spectral_norm(lhs - rhs);
    const bool pass = plain && tp.pair_residual <= kPairResidual && diagram <= kDiagram && r.element.op.order() == 0;
    return {pass, std::string("plain pairs ") + (plain ? "exact" : "inexact") + "; Toeplitz pair residual " +
                      fmt(tp.pair_residual) + "; diagram discrepancy " + fmt(diagram)};
}

// 9. SG calculus
Outcome sg_calculus() {
    using namespace toeplitz::sg;
    const auto o = opts(kDepth);
    const auto one = [] {
        QMatrix m(1, 1);
        m(0, 0) = CQ(1);
        return m;
    }();
    const auto a = SGSymbol::weight(1, 1, 1, kDepth);
    const auto s = three_symbols(a);
    bool closed_form = true;
    for (int i = 0; i < 2; ++i) {
        for (const auto* p : {&s.xi_principal[i], &s.x_principal[i]}) {
            closed_form = closed_form && p->terms().size() == 1 && p->terms().begin()->first == key(1, 0) &&
                          p->terms().begin()->second == one;
        }
        for (int j = 0; j < 2; ++j) closed_form = closed_form && s.corners[i][j] == one;
    }
    const auto full = sg_full_projection(1, kDepth);
    const auto t = core::toeplitz_compress<SGAlgebra>(a, full, full, o);
    const auto p = sg_parametrix(t, o);
    const bool residual = !leading_level(p.left_residual) && !leading_level(p.right_residual) &&
                          p.left_residual.terms.empty() && p.right_residual.terms.empty();

    std::mt19937_64 rng(909);
    int mult = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = random_sg(rng, 1, trial % 2, 2, 4);
        const auto y = random_sg(rng, trial % 3 - 1, 1, 2, 4);
        const auto sx = three_symbols(x);
        const auto sy = three_symbols(y);
        const auto sc = three_symbols(compose(x, y, opts(4)));
        bool ok = true;
        for (int i = 0; i < 2; ++i) {
            ok = ok && sc.xi_principal[i] == sx.xi_principal[i] * sy.xi_principal[i];
            ok = ok && sc.x_principal[i] == sx.x_principal[i] * sy.x_principal[i];
            for (int j = 0; j < 2; ++j) ok = ok && sc.corners[i][j] == sx.corners[i][j] * sy.corners[i][j];
        }
        mult += ok;
    }
    return {closed_form && residual && mult == 10,
            std::string("three symbols of <x><xi> ") + (closed_form ? "match" : "differ") + "; parametrix residual " +
                std::string(residual ? "null" : "nonzero") + "; multiplicativity " + std::to_string(mult) + "/10"};
}

// 10. CLI reports reproduce the shipped goldens
Outcome cli_determinism() {
    const fs::path data = TOEPLITZ_DATA_DIR;
    std::ifstream mf(data / "golden" / "manifest.json");
    const auto manifest = toeplitz::cli::json::parse(mf);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    int identical = 0;
    std::string first_bad;
    for (const auto& entry : manifest) {
        const std::string name = entry["report"];
        std::string args = entry["command"].get<std::string>() + " " +
                           (data / "problems" / entry["problem"].get<std::string>()).string();
        for (const auto& a : entry["args"]) args += " " + a.get<std::string>();
        std::string runs[2];
        for (int k = 0; k < 2; ++k) {
            const fs::path out = fs::temp_directory_path() / ("toeplitz_acceptance_" + std::to_string(k) + "_" + name);
            const std::string cmd = std::string(TOEPLITZ_CLI) + " " + args + " --json " + out.string() + " > /dev/null 2>&1";
            std::system(cmd.c_str());
            runs[k] = slurp(out);
            fs::remove(out);
        }
        if (!runs[0].empty() && runs[0] == runs[1] && runs[0] == slurp(data / "golden" / name)) {
            ++identical;
        } else if (first_bad.empty()) {
            first_bad = "; differs: " + name;
        }
    }
    return {identical == static_cast<int>(manifest.size()) && identical > 0,
            std::to_string(identical) + "/" + std::to_string(manifest.size()) + " reports byte-identical" + first_bad};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"index equals minus winding of det f", index_winding},
        {"bootstrap residuals vanish at retained levels", bootstrap_exact},
        {"symbol and witness routes agree", route_equivalence},
        {"spectral inverse and refusal", spectral_invariance},
        {"witness kernel identity", kernel_identity},
        {"composition faithfulness slope", composition_faithfulness},
        {"projection completion and spectra", projection_machinery},
        {"order reductions", order_reductions},
        {"SG calculus", sg_calculus},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failed += !r.pass;
        std::cout << "AC" << i + 1 << " " << (r.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": " << r.detail
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
