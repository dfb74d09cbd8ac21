#include "toeplitz/cli/run.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "toeplitz/circle/builtins.hpp"
#include "toeplitz/cli/build.hpp"
#include "toeplitz/format.hpp"
#include "toeplitz/lab/inverse.hpp"
#include "toeplitz/lab/matrix_io.hpp"
#include "toeplitz/lab/verify.hpp"

namespace toeplitz::cli {

namespace {

using circle::CircleAlgebra;
using sg::SGAlgebra;

/// Acceptance bound for finite-section pair residuals (spectral norm).
constexpr double kPairTol = 1e-6;

json num(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

json level(std::optional<int> l) { return l ? json(*l) : json(nullptr); }

std::string show(double v) { return std::isfinite(v) ? display_number(v) : (v > 0 ? "inf" : "nan"); }

struct Context {
    Context(std::string cmd, const ProblemSpec& s) : command(std::move(cmd)), spec(s), p(s.parameters) {}

    std::string command;
    const ProblemSpec& spec;
    Parameters p;
    int depth = 5;
    CalculusOptions calc;
    json result = json::object();
    std::vector<std::pair<std::string, std::string>> rows;
    std::string verdict;
    std::string headline;
    int exit_code = 0;

    void row(const std::string& k, const std::string& v) { rows.emplace_back(k, v); }
};

Context make_context(const std::string& command, const ProblemSpec& spec, const Flags& f) {
    Context c(command, spec);
    if (f.modes) c.p.modes = *f.modes;
    if (f.tol) c.p.tol = *f.tol;
    if (f.cond) c.p.cond = *f.cond;
    if (f.grid) c.p.grid = *f.grid;
    if (f.seed) c.p.seed = *f.seed;
    if (f.shift) c.p.s = *f.shift;
    c.depth = f.depth ? *f.depth : spec.depth;
    if (c.p.modes < 1) throw InputError("--modes must be positive");
    if (c.depth < 1) throw InputError("--depth must be positive");
    if (c.p.grid < 1) throw InputError("--grid must be positive");
    if (!(c.p.tol > 0.0 && c.p.tol < 1.0)) throw InputError("--tol must lie in (0, 1)");
    if (!(c.p.cond >= 1.0)) throw InputError("--cond must be at least 1");
    c.calc.depth = c.depth;
    return c;
}

json parameters_json(const Parameters& p, int depth) {
    return {{"modes", p.modes}, {"depth", depth}, {"tol", p.tol}, {"cond", p.cond},
            {"grid", p.grid},   {"seed", p.seed}, {"s", p.s ? json(*p.s) : json(nullptr)}};
}

int default_shift(const Context& c, int order) {
    if (c.p.s) return *c.p.s;
    return order != 0 ? order : 1;
}

// ---- circle ----

circle::Certificate circle_certificate(Context& c, const circle::Element& t) {
    const auto cert = circle::check_ellipticity(t, c.p.grid, c.p.cond);
    c.result["ellipticity"] = {{"elliptic", cert.elliptic},     {"min_singular", num(cert.min_singular)},
                               {"witness", cert.witness},       {"reason", cert.reason},
                               {"grid", cert.grid},             {"kappa", cert.kappa},
                               {"bandwidth", cert.bandwidth}};
    c.row("elliptic", cert.elliptic ? "yes" : "no");
    c.row("min singular value", show(cert.min_singular));
    if (!cert.elliptic) c.row("witness", cert.witness);
    return cert;
}

void refuse_not_elliptic(Context& c, const circle::Certificate& cert) {
    c.exit_code = 1;
    c.verdict = "not elliptic";
    c.headline = "not elliptic at " + cert.witness;
}

void circle_ellipticity(Context& c, const circle::Element& t) {
    const auto cert = circle_certificate(c, t);
    if (!cert.elliptic) return refuse_not_elliptic(c, cert);
    c.verdict = "elliptic";
    c.headline = "elliptic, min singular value " + show(cert.min_singular);
}

json diagnostics_json(const core::ParametrixDiagnostics& d) {
    return {{"route", d.route},
            {"left_candidate_level", level(d.left_candidate_level)},
            {"right_candidate_level", level(d.right_candidate_level)},
            {"neumann_terms", d.neumann_terms}};
}

void circle_parametrix(Context& c, const circle::Element& t) {
    const auto cert = circle_certificate(c, t);
    if (!cert.elliptic) return refuse_not_elliptic(c, cert);
    circle::Parametrix b;
    if (c.spec.candidate) {
        const auto cand = build_circle(*c.spec.candidate, c.calc);
        b = core::parametrix_bootstrap<CircleAlgebra>(t, cand, cand, core::CandidateKind::FullAlgebra, c.calc);
    } else {
        b = circle::symbol_parametrix(t, c.calc);
    }
    const std::string left = core::describe_level<CircleAlgebra>(b.left_residual, c.calc);
    const std::string right = core::describe_level<CircleAlgebra>(b.right_residual, c.calc);
    json route = diagnostics_json(b.diagnostics);
    route["candidate"] = c.spec.candidate ? "user" : "pointwise";
    route["left_residual_order"] = left;
    route["right_residual_order"] = right;
    route["symbol"] = serialize_circle_symbol(b.b.op);
    c.result["bootstrap"] = route;
    c.row("candidate", c.spec.candidate ? "user" : "pointwise inverse");
    c.row("neumann terms", std::to_string(b.diagnostics.neumann_terms));
    c.row("residual order BA - P0", left);
    c.row("residual order AB - P1", right);

    if (t.op.order() == 0) {
        const auto w = core::fredholm_parametrix<CircleAlgebra>(
            t, circle::ambient_solver(c.calc, c.p.grid, c.p.cond), c.calc);
        const auto diff = circle::subtract(b.b.op, w.b.op);
        const std::string gap_order = core::describe_level<CircleAlgebra>(diff, c.calc);
        const double gap = lab::interior_norm(lab::galerkin(diff, c.p.modes));
        c.result["witness_route"] = {
            {"left_residual_order", core::describe_level<CircleAlgebra>(w.left_residual, c.calc)},
            {"right_residual_order", core::describe_level<CircleAlgebra>(w.right_residual, c.calc)},
            {"difference_order", gap_order},
            {"interior_section_gap", num(gap)}};
        c.row("witness route difference order", gap_order);
        c.row("witness route interior gap", show(gap));
    } else {
        c.result["witness_route"] = nullptr;
        c.row("witness route", "skipped (order " + std::to_string(t.op.order()) + ")");
    }
    c.verdict = "parametrix";
    c.headline = "parametrix with residual order " + left;
}

json index_json(const lab::IndexReport& r) {
    return {{"ker", r.ker},
            {"coker", r.coker},
            {"index", r.index},
            {"stable", r.stable},
            {"M", r.M},
            {"ker_2M", r.ker_2M},
            {"coker_2M", r.coker_2M},
            {"min_singular", num(r.min_singular)},
            {"threshold", num(r.threshold)},
            {"tau", r.tau},
            {"margin_ratio", num(r.margin_ratio)}};
}

void circle_index(Context& c, const circle::Element& t) {
    circle::Element e = t;
    const int order = t.op.order();
    if (order != 0) {
        const int s = default_shift(c, order);
        e = core::reduce_order<CircleAlgebra>(t, order, s, circle::homogeneous_family(c.depth), c.calc).element;
        c.result["reduction"] = {{"mu", order}, {"s", s}, {"family", "homogeneous"}};
        c.row("order reduction", "mu=" + std::to_string(order) + ", s=" + std::to_string(s));
    } else {
        c.result["reduction"] = nullptr;
    }
    const auto r = lab::numerical_index(e, c.p.modes, c.p.tol);
    c.result["index"] = index_json(r);
    c.row("M", std::to_string(r.M));
    c.row("dim ker", std::to_string(r.ker) + " (at 2M: " + std::to_string(r.ker_2M) + ")");
    c.row("dim coker", std::to_string(r.coker) + " (at 2M: " + std::to_string(r.coker_2M) + ")");
    c.row("index", std::to_string(r.index));
    c.row("smallest retained singular value", show(r.min_singular));
    c.row("margin ratio", show(r.margin_ratio));

    const auto& op = c.spec.op;
    if (op.kind == Expr::Kind::Multiplication && op.multiplier->rows() == op.multiplier->cols() &&
        c.spec.source.kind == "hardy" && c.spec.target.kind == "hardy") {
        try {
            const int w = lab::winding_oracle(*op.multiplier, std::max(256, c.p.grid));
            c.result["winding"] = {{"winding", w}, {"matches", r.stable && r.index == -w}};
            c.row("winding of det f", std::to_string(w));
        } catch (const Unresolved& err) {
            c.result["winding"] = {{"winding", nullptr}, {"matches", false}, {"reason", err.what()}};
            c.row("winding of det f", "undefined");
        }
    }
    c.verdict = r.verdict();
    c.exit_code = r.stable ? 0 : 3;
    c.headline = r.stable ? "index = " + std::to_string(r.index)
                          : "index unresolved (M=" + std::to_string(r.M) + " and 2M disagree or margin too small)";
}

void circle_invert(Context& c, const circle::Element& t) {
    if (t.op.order() != 0) throw InputError("invert needs an order-0 element; reduce the order first");
    const auto cert = circle_certificate(c, t);
    if (!cert.elliptic) return refuse_not_elliptic(c, cert);
    const auto b = circle::symbol_parametrix(t, c.calc);
    const auto inv = lab::spectral_inverse(t, b, {c.p.modes, c.p.tol, c.p.cond}, c.calc);
    c.result["index"] = index_json(inv.index);
    c.result["inverse"] = {{"condition", num(inv.condition)},
                           {"left_residual", num(inv.left_residual)},
                           {"right_residual", num(inv.right_residual)},
                           {"resolution", c.p.modes}};
    c.row("condition number", show(inv.condition));
    c.row("||Gal(B)Gal(A) - Gal(P0)||", show(inv.left_residual));
    c.row("||Gal(A)Gal(B) - Gal(P1)||", show(inv.right_residual));
    const bool ok = inv.left_residual <= kPairTol && inv.right_residual <= kPairTol;
    c.verdict = ok ? "invertible" : "unresolved";
    c.exit_code = ok ? 0 : 3;
    c.headline = ok ? "invertible, condition number " + show(inv.condition)
                    : "inverse residuals exceed " + show(kPairTol);
}

void circle_reduce(Context& c, const circle::Element& t) {
    const int mu = t.op.order();
    const int s = default_shift(c, mu);
    const int M = c.p.modes;
    const auto fam = circle::homogeneous_family(c.depth);
    lab::require_resolution(t.op, M);
    const auto r = core::reduce_order<CircleAlgebra>(t, mu, s, fam, c.calc);
    const CMatrix lhs = lab::galerkin(r.element.op, M).data;
    const CMatrix rhs = lab::galerkin(fam(s - mu, t.p1.op.rows()), M).data * lab::galerkin(t.op, M).data *
                        lab::galerkin(fam(-s, t.p0.op.rows()), M).data;
    const double diagram = lab::spectral_norm(lhs - rhs);
    const bool diagram_ok = diagram <= c.p.tol;
    c.result["conjugation"] = {{"mu", mu},
                               {"s", s},
                               {"reduced_order", r.element.op.order()},
                               {"diagram_discrepancy", num(diagram)},
                               {"commutes", diagram_ok}};
    c.row("shift s", std::to_string(s));
    c.row("reduced order", std::to_string(r.element.op.order()));
    c.row("diagram discrepancy", show(diagram));

    const auto plain = circle::order_reduction(s, t.p0.op.rows(), c.calc);
    const bool plain_ok = !plain.left_level && !plain.right_level;
    c.result["plain_pair"] = {{"order", s},
                              {"left_level", level(plain.left_level)},
                              {"right_level", level(plain.right_level)},
                              {"exact", plain_ok}};
    c.row("plain pair retained residual", plain_ok ? "zero" : "nonzero");

    bool toeplitz_ok = true;
    try {
        const auto tp = lab::toeplitz_order_reduction(s, t.p0, {M, c.p.tol, c.p.cond}, c.calc);
        toeplitz_ok = tp.pair_residual <= kPairTol;
        c.result["toeplitz_pair"] = {{"order", s},
                                     {"positivity_margin", num(tp.positivity_margin)},
                                     {"pair_residual", num(tp.pair_residual)},
                                     {"bootstrap_level", level(tp.bootstrap_level)},
                                     {"passed", toeplitz_ok}};
        c.row("Toeplitz pair residual", show(tp.pair_residual));
        c.row("positivity margin", show(tp.positivity_margin));
    } catch (const InputError& e) {
        c.result["toeplitz_pair"] = {{"skipped", e.what()}};
        c.row("Toeplitz pair", std::string("skipped: ") + e.what());
    }
    const bool ok = diagram_ok && plain_ok && toeplitz_ok;
    c.verdict = ok ? "reduced" : "failed";
    c.exit_code = ok ? 0 : 1;
    c.headline = ok ? "order reduced to 0 with s=" + std::to_string(s) : "order reduction checks failed";
}

void circle_verify(Context& c, const circle::Element& t) {
    lab::VerifyOptions vo;
    vo.M = c.p.modes;
    vo.tau = c.p.tol;
    vo.grid = c.p.grid;
    vo.kappa = c.p.cond;
    vo.seed = c.p.seed;
    const auto rep = lab::verify_suite(t, vo, c.calc);
    json checks = json::array();
    bool only_unresolved = true;
    for (const auto& ch : rep.checks) {
        checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
        c.row(ch.name, std::string(ch.passed ? "pass" : "FAIL") + "  " + ch.detail);
        if (!ch.passed && ch.detail.find("unresolved") == std::string::npos) only_unresolved = false;
    }
    c.result["checks"] = checks;
    if (rep.passed()) {
        c.verdict = "pass";
        c.headline = "all " + std::to_string(rep.checks.size()) + " checks passed";
    } else {
        c.verdict = only_unresolved ? "unresolved" : "fail";
        c.exit_code = only_unresolved ? 3 : 1;
        c.headline = "some checks failed";
    }
}

void run_circle(Context& c, const Flags& flags) {
    const auto t = build_circle_element(c.spec, c.calc);
    const auto [left, right] = core::element_defects<CircleAlgebra>(t, c.calc);
    c.result["element"] = {{"order", t.op.order()},
                           {"rows", t.op.rows()},
                           {"cols", t.op.cols()},
                           {"bandwidth", t.op.bandwidth()},
                           {"source_iterations", t.p0.iterations},
                           {"target_iterations", t.p1.iterations},
                           {"defects_vanish", !left && !right}};
    if (flags.export_matrix) {
        lab::require_resolution(t.op, c.p.modes);
        const auto g = lab::galerkin(t.op, c.p.modes, c.spec.name.empty() ? "operator" : c.spec.name);
        lab::export_matrix(*flags.export_matrix, g);
    }
    if (c.command == "ellipticity") return circle_ellipticity(c, t);
    if (c.command == "parametrix") return circle_parametrix(c, t);
    if (c.command == "index") return circle_index(c, t);
    if (c.command == "invert") return circle_invert(c, t);
    if (c.command == "reduce") return circle_reduce(c, t);
    if (c.command == "verify") return circle_verify(c, t);
}

// ---- sg ----

void sg_ellipticity(Context& c, const sg::Element& t, bool stop_on_failure) {
    const auto cert = sg::check_ellipticity(t, c.p.grid, c.p.grid, c.p.cond);
    c.result["ellipticity"] = {{"elliptic", cert.elliptic}, {"min_singular", num(cert.min_singular)},
                               {"witness", cert.witness},   {"reason", cert.reason},
                               {"x_grid", cert.x_grid},     {"xi_grid", cert.xi_grid},
                               {"kappa", cert.kappa},       {"corner_ranks", cert.corner_ranks}};
    c.row("elliptic", cert.elliptic ? "yes" : "no");
    c.row("min singular value", show(cert.min_singular));
    if (!cert.elliptic) {
        c.row("witness", cert.witness);
        c.exit_code = 1;
        c.verdict = "not elliptic";
        c.headline = "not elliptic at " + cert.witness;
    } else if (stop_on_failure) {
        c.verdict = "elliptic";
        c.headline = "elliptic, min singular value " + show(cert.min_singular);
    }
}

std::string sg_order_text(const sg::BiOrder& o) {
    return "(" + std::to_string(o.mu) + ", " + std::to_string(o.m) + ")";
}

void sg_parametrix(Context& c, const sg::Element& t) {
    sg_ellipticity(c, t, false);
    if (c.exit_code != 0) return;
    const auto b = c.spec.candidate ? sg::sg_parametrix(t, build_sg(*c.spec.candidate, c.calc), c.calc)
                                    : sg::sg_parametrix(t, c.calc);
    const std::string left = core::describe_level<SGAlgebra>(b.left_residual, c.calc);
    const std::string right = core::describe_level<SGAlgebra>(b.right_residual, c.calc);
    json route = diagnostics_json(b.diagnostics);
    route["candidate"] = c.spec.candidate ? "user" : "leading part";
    route["left_residual_order"] = left;
    route["right_residual_order"] = right;
    route["symbol"] = serialize_sg_symbol(b.b.op);
    c.result["bootstrap"] = route;
    c.row("parametrix order", sg_order_text(b.b.op.order));
    c.row("neumann terms", std::to_string(b.diagnostics.neumann_terms));
    c.row("residual order BA - P0", left);
    c.row("residual order AB - P1", right);
    c.verdict = "parametrix";
    c.headline = "parametrix with residual bi-order " + left;
}

void sg_reduce(Context& c, const sg::Element& t) {
    sg::BiOrder o = t.op.order;
    if (c.p.s) o = {*c.p.s, *c.p.s};
    if (o.mu == 0 && o.m == 0) o = {1, 1};
    const auto pair = sg::sg_order_reduction(o.mu, o.m, t.p0.op.rows, c.calc);
    const bool ok = !pair.level_after;
    c.result["sg_pair"] = {{"mu", o.mu},
                           {"m", o.m},
                           {"level_before", level(pair.level_before)},
                           {"level_after", level(pair.level_after)},
                           {"exact", ok},
                           {"inverse", serialize_sg_symbol(pair.inverse)}};
    c.row("pair order", sg_order_text(o));
    c.row("candidate residual level", pair.level_before ? std::to_string(*pair.level_before) : "none");
    c.row("bootstrapped residual", ok ? "zero at retained levels" : "nonzero");
    c.verdict = ok ? "reduced" : "failed";
    c.exit_code = ok ? 0 : 1;
    c.headline = ok ? "reduction pair of bi-order " + sg_order_text(o) + " composes to 1" : "reduction pair failed";
}

void run_sg(Context& c, const Flags& flags) {
    if (flags.export_matrix) throw InputError("--export-matrix is only available for algebra circle");
    static const std::vector<std::string> allowed{"ellipticity", "parametrix", "reduce"};
    if (std::find(allowed.begin(), allowed.end(), c.command) == allowed.end()) {
        throw InputError("command " + c.command + " not available for algebra sg");
    }
    const auto t = build_sg_element(c.spec, c.calc);
    c.result["element"] = {{"order", json::array({t.op.order.mu, t.op.order.m})},
                           {"rows", t.op.rows},
                           {"cols", t.op.cols}};
    if (c.command == "ellipticity") return sg_ellipticity(c, t, true);
    if (c.command == "parametrix") return sg_parametrix(c, t);
    if (c.command == "reduce") return sg_reduce(c, t);
}

std::string table(const std::string& title, const std::string& headline,
                  const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t w = 0;
    for (const auto& [k, v] : rows) w = std::max(w, k.size());
    std::ostringstream os;
    os << title << "\n" << headline << "\n";
    for (const auto& [k, v] : rows) os << "  " << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << "\n";
    return os.str();
}

RunResult failure(const std::string& command, const std::string& name, const std::string& algebra,
                  const json& params, int code, const std::string& verdict, const std::string& message,
                  const std::string& witness = "") {
    RunResult out;
    out.exit_code = code;
    out.report = {{"command", command}, {"problem", name},  {"algebra", algebra}, {"parameters", params},
                  {"verdict", verdict}, {"exit_code", code}, {"error", message}};
    if (!witness.empty()) out.report["witness"] = witness;
    std::vector<std::pair<std::string, std::string>> rows{{"error", message}};
    if (!witness.empty()) rows.emplace_back("witness", witness);
    out.text = table(command + ": " + (name.empty() ? "(unnamed)" : name), verdict, rows);
    return out;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"ellipticity", "parametrix", "index", "invert", "reduce", "verify"};
    return c;
}

RunResult run_command(const std::string& command, const ProblemSpec& spec, const Flags& flags) {
    json params = parameters_json(spec.parameters, flags.depth.value_or(spec.depth));
    try {
        if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
            throw InputError("unknown command \"" + command + "\"");
        }
        Context c = make_context(command, spec, flags);
        params = parameters_json(c.p, c.depth);
        if (spec.algebra == "sg") {
            run_sg(c, flags);
        } else {
            run_circle(c, flags);
        }
        RunResult out;
        out.exit_code = c.exit_code;
        out.report = {{"command", command},   {"problem", spec.name},       {"algebra", spec.algebra},
                      {"parameters", params}, {"verdict", c.verdict},       {"exit_code", c.exit_code},
                      {"summary", c.headline}, {"result", c.result}};
        out.text = table(command + ": " + (spec.name.empty() ? "(unnamed)" : spec.name), c.headline, c.rows);
        return out;
    } catch (const InputError& e) {
        return failure(command, spec.name, spec.algebra, params, 2, "invalid input", e.what());
    } catch (const NotElliptic& e) {
        return failure(command, spec.name, spec.algebra, params, 1, "not elliptic", e.what(), e.witness());
    } catch (const NotInvertible& e) {
        return failure(command, spec.name, spec.algebra, params, 1, "not invertible", e.what());
    } catch (const Unresolved& e) {
        return failure(command, spec.name, spec.algebra, params, 3, "unresolved", e.what());
    }
}

RunResult run_file(const std::string& command, const std::string& path, const Flags& flags) {
    ProblemSpec spec;
    try {
        spec = load_problem(path);
    } catch (const InputError& e) {
        Parameters p;
        return failure(command, "", "", parameters_json(p, flags.depth.value_or(5)), 2, "invalid input",
                       e.what());
    }
    return run_command(command, spec, flags);
}

std::string report_text(const json& report) { return report.dump(2) + "\n"; }

}  // namespace toeplitz::cli
