#include "toeplitz/cli/problem.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace toeplitz::cli {

namespace {

const std::vector<std::string> kTasks{"ellipticity", "parametrix", "index", "invert", "reduce", "verify"};
const std::vector<std::string> kSgTasks{"ellipticity", "parametrix", "reduce"};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InputError(path.empty() ? what : path + ": " + what);
}

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : j.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
            fail(at(path, k), "unknown field");
        }
    }
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    const auto v = j.get<long long>();
    if (v < -1000000 || v > 1000000) fail(path, "integer out of range");
    return static_cast<int>(v);
}

int positive(const json& j, const std::string& path) {
    const int v = integer(j, path);
    if (v < 1) fail(path, "expected a positive integer");
    return v;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

sg::Rational rational(const json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return sg::Rational(mpz_class(std::to_string(j.get<long long>()), 10));
        if (j.is_number()) return sg::rational_from_double(j.get<double>());
        if (j.is_string()) return sg::parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
        fail(path, e.what());
    }
    fail(path, "expected a rational (number or \"p/q\")");
}

json rational_json(const sg::Rational& q) {
    sg::Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1 && c.get_num().fits_slong_p()) return c.get_num().get_si();
    return sg::to_string(c);
}

circle::TrigPoly trig(const json& j, int rows, int cols, const std::string& path) {
    circle::TrigPoly p(rows, cols);
    array(j, path);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ep = at(path, i);
        const json& e = array(j[i], ep);
        if (e.size() != 5) fail(ep, "expected [mode, re, im, row, col]");
        const int mode = integer(e[0], at(ep, 0));
        const cplx v(number(e[1], at(ep, 1)), number(e[2], at(ep, 2)));
        const int r = integer(e[3], at(ep, 3));
        const int c = integer(e[4], at(ep, 4));
        if (r < 0 || r >= rows) fail(at(ep, 3), "row index outside 0.." + std::to_string(rows - 1));
        if (c < 0 || c >= cols) fail(at(ep, 4), "column index outside 0.." + std::to_string(cols - 1));
        CMatrix m = CMatrix::Zero(rows, cols);
        m(r, c) = v;
        p.add_coefficient(mode, m);
    }
    return p;
}

std::pair<int, int> dims_of(const json& j, const std::string& path) {
    object(j, path);
    const int rows = j.contains("rows") ? positive(j["rows"], at(path, "rows")) : 1;
    const int cols = j.contains("cols") ? positive(j["cols"], at(path, "cols")) : rows;
    return {rows, cols};
}

/// Circle symbol object; the handle's depth is the number of listed components.
circle::Operator circle_symbol(const json& j, const std::string& path, bool require_order_zero = false) {
    object(j, path);
    only_keys(j, path, {"order", "rows", "cols", "components", "kernel"});
    const auto [rows, cols] = dims_of(j, path);
    if (!j.contains("order")) fail(at(path, "order"), "missing");
    const int order = integer(j["order"], at(path, "order"));
    if (require_order_zero && order != 0) fail(at(path, "order"), "projection data must have order 0");
    if (!j.contains("components")) fail(at(path, "components"), "missing");
    const json& comps = array(j["components"], at(path, "components"));
    if (comps.empty()) fail(at(path, "components"), "at least one component is required");
    auto sym = circle::ClassicalSymbol::zero(order, static_cast<int>(comps.size()), rows, cols);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string cp = at(at(path, "components"), i);
        object(comps[i], cp);
        only_keys(comps[i], cp, {"degree", "plus", "minus"});
        if (!comps[i].contains("degree")) fail(at(cp, "degree"), "missing");
        const int degree = integer(comps[i]["degree"], at(cp, "degree"));
        const int expected = order - static_cast<int>(i);
        if (degree != expected) {
            fail(at(cp, "degree"), "expected " + std::to_string(expected) + ", got " + std::to_string(degree) +
                                       " (degrees decrease by 1; list zero components to fill gaps)");
        }
        if (comps[i].contains("plus")) sym.comps[i].plus = trig(comps[i]["plus"], rows, cols, at(cp, "plus"));
        if (comps[i].contains("minus")) sym.comps[i].minus = trig(comps[i]["minus"], rows, cols, at(cp, "minus"));
    }
    circle::SmoothingKernel kernel(rows, cols);
    if (j.contains("kernel")) {
        const std::string kp = at(path, "kernel");
        const json& k = array(j["kernel"], kp);
        for (std::size_t i = 0; i < k.size(); ++i) {
            const std::string ep = at(kp, i);
            const json& e = array(k[i], ep);
            if (e.size() != 6) fail(ep, "expected [m, n, re, im, row, col]");
            const int m = integer(e[0], at(ep, 0));
            const int n = integer(e[1], at(ep, 1));
            const cplx v(number(e[2], at(ep, 2)), number(e[3], at(ep, 3)));
            const int r = integer(e[4], at(ep, 4));
            const int c = integer(e[5], at(ep, 5));
            if (r < 0 || r >= rows || c < 0 || c >= cols) fail(ep, "block index out of range");
            CMatrix b = CMatrix::Zero(rows, cols);
            b(r, c) = v;
            kernel.add(m, n, b);
        }
    }
    return {std::move(sym), std::move(kernel), 0.0, std::nullopt};
}

sg::CQ complex_rational(const json& j, const std::string& path) {
    if (j.is_array()) {
        if (j.size() != 2) fail(path, "expected [re, im]");
        return {rational(j[0], at(path, 0)), rational(j[1], at(path, 1))};
    }
    return {rational(j, path), 0};
}

sg::QMatrix rational_matrix(const json& j, const std::string& path) {
    array(j, path);
    if (j.empty()) fail(path, "empty matrix");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(array(j[0], at(path, 0)).size());
    if (cols == 0) fail(at(path, 0), "empty matrix row");
    sg::QMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const std::string rp = at(path, r);
        if (array(j[r], rp).size() != static_cast<std::size_t>(cols)) fail(rp, "ragged matrix");
        for (int c = 0; c < cols; ++c) m(r, c) = complex_rational(j[r][c], at(rp, c));
    }
    return m;
}

json rational_matrix_json(const sg::QMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) {
            const auto& v = m(r, c);
            if (v.im == 0) {
                row.push_back(rational_json(v.re));
            } else {
                row.push_back(json::array({rational_json(v.re), rational_json(v.im)}));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::pair<sg::BasisKey, sg::CQ>> one_var_terms(const json& j, const std::string& path) {
    array(j, path);
    if (j.empty()) fail(path, "at least one entry is required");
    std::vector<std::pair<sg::BasisKey, sg::CQ>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ep = at(path, i);
        const json& e = array(j[i], ep);
        if (e.size() != 4) fail(ep, "expected [r, parity, re, im]");
        const sg::Rational r = rational(e[0], at(ep, 0));
        const int parity = integer(e[1], at(ep, 1));
        if (parity != 0 && parity != 1) fail(at(ep, 1), "parity must be 0 or 1");
        out.emplace_back(sg::BasisKey{r, parity}, sg::CQ(rational(e[2], at(ep, 2)), rational(e[3], at(ep, 3))));
    }
    return out;
}

sg::SGSymbol sg_symbol(const json& j, int depth, const std::string& path) {
    object(j, path);
    only_keys(j, path, {"order", "rows", "cols", "terms"});
    const auto [rows, cols] = dims_of(j, path);
    if (!j.contains("order")) fail(at(path, "order"), "missing");
    const json& o = array(j["order"], at(path, "order"));
    if (o.size() != 2) fail(at(path, "order"), "expected [mu, m]");
    const sg::BiOrder order{integer(o[0], at(at(path, "order"), 0)), integer(o[1], at(at(path, "order"), 1))};
    auto s = sg::SGSymbol::zero(order, depth, rows, cols);
    if (!j.contains("terms")) fail(at(path, "terms"), "missing");
    const json& terms = array(j["terms"], at(path, "terms"));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tp = at(at(path, "terms"), i);
        object(terms[i], tp);
        only_keys(terms[i], tp, {"matrix", "p-terms", "q-terms"});
        sg::QMatrix m = sg::QMatrix::identity(rows);
        if (terms[i].contains("matrix")) m = rational_matrix(terms[i]["matrix"], at(tp, "matrix"));
        if (m.rows() != rows || m.cols() != cols) {
            fail(at(tp, "matrix"), "shape differs from " + std::to_string(rows) + "x" + std::to_string(cols));
        }
        const auto p = terms[i].contains("p-terms") ? one_var_terms(terms[i]["p-terms"], at(tp, "p-terms"))
                                                   : std::vector<std::pair<sg::BasisKey, sg::CQ>>{{{0, 0}, sg::CQ(1)}};
        const auto q = terms[i].contains("q-terms") ? one_var_terms(terms[i]["q-terms"], at(tp, "q-terms"))
                                                   : std::vector<std::pair<sg::BasisKey, sg::CQ>>{{{0, 0}, sg::CQ(1)}};
        for (const auto& [kx, cx] : p) {
            if (kx.degree > order.m) fail(at(tp, "p-terms"), "degree " + sg::to_string(kx.degree) + " exceeds m = " + std::to_string(order.m));
            for (const auto& [kxi, cxi] : q) {
                if (kxi.degree > order.mu) {
                    fail(at(tp, "q-terms"), "degree " + sg::to_string(kxi.degree) + " exceeds mu = " + std::to_string(order.mu));
                }
                s.add_term(kx, kxi, (cx * cxi) * m);
            }
        }
    }
    return s;
}

Expr expr(const json& j, const std::string& algebra, int depth, const std::string& path) {
    object(j, path);
    Expr e;
    const bool sg = algebra == "sg";
    if (j.contains("builtin")) {
        only_keys(j, path, {"builtin", "dim", "mu", "m"});
        e.kind = Expr::Kind::Builtin;
        e.builtin = text(j["builtin"], at(path, "builtin"));
        if (j.contains("dim")) e.dim = positive(j["dim"], at(path, "dim"));
        if (j.contains("mu")) e.mu = integer(j["mu"], at(path, "mu"));
        if (j.contains("m")) e.m = integer(j["m"], at(path, "m"));
        static const std::set<std::string> circle_names{"identity", "derivative", "hardy", "twisted-line",
                                                        "bracket-power", "homogeneous-power"};
        static const std::set<std::string> sg_names{"identity", "weight"};
        const auto& names = sg ? sg_names : circle_names;
        if (!names.contains(e.builtin)) fail(at(path, "builtin"), "unknown builtin \"" + e.builtin + "\" for algebra " + algebra);
        if (e.builtin == "twisted-line" && e.dim != 2) fail(at(path, "dim"), "twisted-line acts on C^2");
        if (e.builtin == "twisted-line") e.dim = 2;
        return e;
    }
    if (j.contains("multiplication")) {
        if (sg) fail(at(path, "multiplication"), "not available for algebra sg; use a symbol");
        only_keys(j, path, {"multiplication", "rows", "cols"});
        e.kind = Expr::Kind::Multiplication;
        const auto [rows, cols] = dims_of(j, path);
        e.multiplier = trig(j["multiplication"], rows, cols, at(path, "multiplication"));
        return e;
    }
    if (j.contains("symbol")) {
        only_keys(j, path, {"symbol"});
        e.kind = Expr::Kind::Symbol;
        if (sg) {
            e.sg_symbol = sg_symbol(j["symbol"], depth, at(path, "symbol"));
        } else {
            e.circle_symbol = circle_symbol(j["symbol"], at(path, "symbol"));
        }
        return e;
    }
    for (const char* key : {"sum", "product"}) {
        if (!j.contains(key)) continue;
        only_keys(j, path, {key});
        e.kind = std::string(key) == "sum" ? Expr::Kind::Sum : Expr::Kind::Product;
        const json& a = array(j[key], at(path, key));
        if (a.empty()) fail(at(path, key), "at least one operand is required");
        for (std::size_t i = 0; i < a.size(); ++i) e.args.push_back(expr(a[i], algebra, depth, at(at(path, key), i)));
        return e;
    }
    if (j.contains("scale")) {
        only_keys(j, path, {"scale", "of"});
        e.kind = Expr::Kind::Scale;
        const json& f = j["scale"];
        if (f.is_array()) {
            if (f.size() != 2) fail(at(path, "scale"), "expected a number or [re, im]");
            e.factor = {number(f[0], at(at(path, "scale"), 0)), number(f[1], at(at(path, "scale"), 1))};
        } else {
            e.factor = number(f, at(path, "scale"));
        }
        if (!j.contains("of")) fail(at(path, "of"), "missing");
        e.args.push_back(expr(j["of"], algebra, depth, at(path, "of")));
        return e;
    }
    fail(path, "expected one of builtin, multiplication, symbol, sum, product, scale");
}

std::pair<int, int> shape_checked(const Expr& e, const std::string& path) {
    switch (e.kind) {
        case Expr::Kind::Builtin: return {e.dim, e.dim};
        case Expr::Kind::Multiplication: return {e.multiplier->rows(), e.multiplier->cols()};
        case Expr::Kind::Symbol:
            if (e.sg_symbol) return {e.sg_symbol->rows, e.sg_symbol->cols};
            return {e.circle_symbol->rows(), e.circle_symbol->cols()};
        case Expr::Kind::Scale: return shape_checked(e.args[0], at(path, "of"));
        case Expr::Kind::Sum: {
            const auto first = shape_checked(e.args[0], at(at(path, "sum"), 0));
            for (std::size_t i = 1; i < e.args.size(); ++i) {
                const auto s = shape_checked(e.args[i], at(at(path, "sum"), i));
                if (s != first) {
                    fail(at(at(path, "sum"), i), "shape " + std::to_string(s.first) + "x" + std::to_string(s.second) +
                                                     " differs from " + std::to_string(first.first) + "x" +
                                                     std::to_string(first.second));
                }
            }
            return first;
        }
        case Expr::Kind::Product: {
            auto acc = shape_checked(e.args[0], at(at(path, "product"), 0));
            for (std::size_t i = 1; i < e.args.size(); ++i) {
                const auto s = shape_checked(e.args[i], at(at(path, "product"), i));
                if (s.first != acc.second) {
                    fail(at(at(path, "product"), i), "has " + std::to_string(s.first) + " rows but the left factor has " +
                                                         std::to_string(acc.second) + " columns");
                }
                acc.second = s.second;
            }
            return acc;
        }
    }
    return {1, 1};
}

ProjectionSpec projection(const json& j, const std::string& algebra, const std::string& path) {
    ProjectionSpec p;
    const bool sg = algebra == "sg";
    auto named = [&](const std::string& name, const std::string& where) {
        static const std::set<std::string> circle_names{"full", "hardy", "twisted-line"};
        if (sg && name != "full") {
            if (circle_names.contains(name)) fail(where, "projection not available for algebra sg");
            fail(where, "unknown projection \"" + name + "\"");
        }
        if (!circle_names.contains(name)) fail(where, "unknown projection \"" + name + "\"");
        p.kind = name;
        if (name == "twisted-line") p.dim = 2;
    };
    if (j.is_string()) {
        named(j.get<std::string>(), path);
        return p;
    }
    object(j, path);
    if (j.contains("builtin")) {
        only_keys(j, path, {"builtin", "dim"});
        named(text(j["builtin"], at(path, "builtin")), at(path, "builtin"));
        if (j.contains("dim")) {
            const int d = positive(j["dim"], at(path, "dim"));
            if (p.kind == "twisted-line" && d != 2) fail(at(path, "dim"), "twisted-line acts on C^2");
            p.dim = d;
        }
        return p;
    }
    if (j.contains("constant-matrix")) {
        only_keys(j, path, {"constant-matrix"});
        p.kind = "constant-matrix";
        const sg::QMatrix m = rational_matrix(j["constant-matrix"], at(path, "constant-matrix"));
        if (m.rows() != m.cols()) fail(at(path, "constant-matrix"), "projection matrix must be square");
        if (!(m * m == m)) fail(at(path, "constant-matrix"), "matrix is not idempotent");
        p.dim = m.rows();
        if (sg) {
            p.sg_matrix = m;
        } else {
            p.matrix = circle::TrigPoly::constant(m.to_complex());
        }
        return p;
    }
    if (j.contains("complete")) {
        if (sg) fail(at(path, "complete"), "projection not available for algebra sg");
        only_keys(j, path, {"complete"});
        p.kind = "complete";
        p.start = circle_symbol(j["complete"], at(path, "complete"), true);
        if (p.start->rows() != p.start->cols()) fail(at(path, "complete"), "projection data must be square");
        p.dim = p.start->rows();
        return p;
    }
    fail(path, "expected a projection name or one of builtin, constant-matrix, complete");
}

json projection_json(const ProjectionSpec& p) {
    if (p.kind == "constant-matrix") {
        return {{"constant-matrix", p.sg_matrix ? rational_matrix_json(*p.sg_matrix)
                                                : rational_matrix_json(sg::QMatrix::from_complex(p.matrix->coefficient(0)))}};
    }
    if (p.kind == "complete") return {{"complete", serialize_circle_symbol(*p.start)}};
    json j = {{"builtin", p.kind}};
    if (p.dim > 0) j["dim"] = p.dim;
    return j;
}

json expr_json(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Builtin: {
            json j = {{"builtin", e.builtin}, {"dim", e.dim}};
            if (e.mu != 0) j["mu"] = e.mu;
            if (e.m != 0) j["m"] = e.m;
            return j;
        }
        case Expr::Kind::Multiplication:
            return {{"multiplication", serialize_trig(*e.multiplier)},
                    {"rows", e.multiplier->rows()},
                    {"cols", e.multiplier->cols()}};
        case Expr::Kind::Symbol:
            return {{"symbol", e.sg_symbol ? serialize_sg_symbol(*e.sg_symbol) : serialize_circle_symbol(*e.circle_symbol)}};
        case Expr::Kind::Scale:
            return {{"scale", json::array({e.factor.real(), e.factor.imag()})}, {"of", expr_json(e.args[0])}};
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            json a = json::array();
            for (const auto& x : e.args) a.push_back(expr_json(x));
            return {{e.kind == Expr::Kind::Sum ? "sum" : "product", a}};
        }
    }
    return {};
}

void check_projection_dim(ProjectionSpec& p, int dim, const std::string& path) {
    if (p.dim == 0) {
        p.dim = dim;
    } else if (p.dim != dim) {
        fail(path, "acts on C^" + std::to_string(p.dim) + " but the operator needs C^" + std::to_string(dim));
    }
}

}  // namespace

std::pair<int, int> expr_shape(const Expr& e) { return shape_checked(e, "operator"); }

ProblemSpec parse_problem(const json& doc) {
    object(doc, "");
    only_keys(doc, "", {"name", "description", "algebra", "depth", "operator", "projections", "tasks", "parameters",
                        "candidate"});
    ProblemSpec spec;
    if (doc.contains("name")) spec.name = text(doc["name"], "name");
    if (doc.contains("description")) spec.description = text(doc["description"], "description");
    if (!doc.contains("algebra")) fail("algebra", "missing");
    spec.algebra = text(doc["algebra"], "algebra");
    if (spec.algebra != "circle" && spec.algebra != "sg") fail("algebra", "expected \"circle\" or \"sg\"");
    if (doc.contains("depth")) spec.depth = positive(doc["depth"], "depth");
    if (!doc.contains("operator")) fail("operator", "missing");
    spec.op = expr(doc["operator"], spec.algebra, spec.depth, "operator");
    const auto [rows, cols] = shape_checked(spec.op, "operator");

    if (doc.contains("projections")) {
        const json& p = object(doc["projections"], "projections");
        only_keys(p, "projections", {"source", "target"});
        if (p.contains("source")) spec.source = projection(p["source"], spec.algebra, "projections.source");
        if (p.contains("target")) spec.target = projection(p["target"], spec.algebra, "projections.target");
    }
    check_projection_dim(spec.source, cols, "projections.source");
    check_projection_dim(spec.target, rows, "projections.target");

    if (doc.contains("tasks")) {
        const json& t = array(doc["tasks"], "tasks");
        const auto& allowed = spec.algebra == "sg" ? kSgTasks : kTasks;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string name = text(t[i], at("tasks", i));
            if (std::find(kTasks.begin(), kTasks.end(), name) == kTasks.end()) fail(at("tasks", i), "unknown task \"" + name + "\"");
            if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
                fail(at("tasks", i), "task \"" + name + "\" not available for algebra " + spec.algebra);
            }
            spec.tasks.push_back(name);
        }
    }

    if (doc.contains("parameters")) {
        const json& p = object(doc["parameters"], "parameters");
        only_keys(p, "parameters", {"modes", "tol", "cond", "grid", "seed", "s"});
        auto& q = spec.parameters;
        if (p.contains("modes")) q.modes = positive(p["modes"], "parameters.modes");
        if (p.contains("tol")) {
            q.tol = number(p["tol"], "parameters.tol");
            if (!(q.tol > 0.0 && q.tol < 1.0)) fail("parameters.tol", "expected 0 < tol < 1");
        }
        if (p.contains("cond")) {
            q.cond = number(p["cond"], "parameters.cond");
            if (!(q.cond >= 1.0)) fail("parameters.cond", "expected cond >= 1");
        }
        if (p.contains("grid")) q.grid = positive(p["grid"], "parameters.grid");
        if (p.contains("seed")) {
            const json& seed = p["seed"];
            if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
                fail("parameters.seed", "expected a nonnegative integer");
            }
            q.seed = p["seed"].get<std::uint64_t>();
        }
        if (p.contains("s") && !p["s"].is_null()) q.s = integer(p["s"], "parameters.s");
    }

    if (doc.contains("candidate")) {
        spec.candidate = expr(doc["candidate"], spec.algebra, spec.depth, "candidate");
        const auto [cr, cc] = shape_checked(*spec.candidate, "candidate");
        if (cr != cols || cc != rows) fail("candidate", "candidate must map the target back to the source");
    }
    return spec;
}

ProblemSpec parse_problem_text(const std::string& source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return parse_problem(doc);
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open problem file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_problem_text(ss.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

json serialize_trig(const circle::TrigPoly& p) {
    json out = json::array();
    for (const auto& [n, c] : p.coefficients()) {
        for (Eigen::Index r = 0; r < c.rows(); ++r) {
            for (Eigen::Index k = 0; k < c.cols(); ++k) {
                if (c(r, k) == cplx{}) continue;
                out.push_back(json::array({n, c(r, k).real(), c(r, k).imag(), r, k}));
            }
        }
    }
    return out;
}

json serialize_circle_symbol(const circle::Operator& op) {
    json comps = json::array();
    for (const auto& c : op.symbol.comps) {
        comps.push_back({{"degree", c.degree}, {"plus", serialize_trig(c.plus)}, {"minus", serialize_trig(c.minus)}});
    }
    json j = {{"order", op.order()}, {"rows", op.rows()}, {"cols", op.cols()}, {"components", comps}};
    if (!op.kernel.empty()) {
        json k = json::array();
        for (const auto& [n, col] : op.kernel.columns()) {
            for (const auto& [m, b] : col) {
                for (Eigen::Index r = 0; r < b.rows(); ++r) {
                    for (Eigen::Index c = 0; c < b.cols(); ++c) {
                        if (b(r, c) == cplx{}) continue;
                        k.push_back(json::array({m, n, b(r, c).real(), b(r, c).imag(), r, c}));
                    }
                }
            }
        }
        j["kernel"] = k;
    }
    return j;
}

json serialize_sg_symbol(const sg::SGSymbol& s) {
    json terms = json::array();
    for (const auto& [k, m] : s.terms) {
        terms.push_back({{"matrix", rational_matrix_json(m)},
                         {"p-terms", json::array({json::array({rational_json(k.x.degree), k.x.parity, 1, 0})})},
                         {"q-terms", json::array({json::array({rational_json(k.xi.degree), k.xi.parity, 1, 0})})}});
    }
    return {{"order", json::array({s.order.mu, s.order.m})}, {"rows", s.rows}, {"cols", s.cols}, {"terms", terms}};
}

json serialize_problem(const ProblemSpec& spec) {
    json j;
    if (!spec.name.empty()) j["name"] = spec.name;
    if (!spec.description.empty()) j["description"] = spec.description;
    j["algebra"] = spec.algebra;
    j["depth"] = spec.depth;
    j["operator"] = expr_json(spec.op);
    j["projections"] = {{"source", projection_json(spec.source)}, {"target", projection_json(spec.target)}};
    j["tasks"] = spec.tasks;
    const auto& p = spec.parameters;
    j["parameters"] = {{"modes", p.modes}, {"tol", p.tol}, {"cond", p.cond}, {"grid", p.grid}, {"seed", p.seed}};
    j["parameters"]["s"] = p.s ? json(*p.s) : json(nullptr);
    if (spec.candidate) j["candidate"] = expr_json(*spec.candidate);
    return j;
}

}  // namespace toeplitz::cli
