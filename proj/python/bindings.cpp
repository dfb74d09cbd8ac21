#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toeplitz/circle/builtins.hpp"
#include "toeplitz/cli/build.hpp"
#include "toeplitz/cli/run.hpp"
#include "toeplitz/lab/galerkin.hpp"
#include "toeplitz/lab/index.hpp"

namespace py = pybind11;
using namespace toeplitz;

namespace {

circle::TrigPoly trig_from(const std::map<int, CMatrix>& coeffs) {
    if (coeffs.empty()) throw InputError("empty coefficient map");
    const auto& first = coeffs.begin()->second;
    circle::TrigPoly f(static_cast<int>(first.rows()), static_cast<int>(first.cols()));
    for (const auto& [mode, c] : coeffs) {
        if (c.rows() != first.rows() || c.cols() != first.cols()) throw InputError("coefficient shapes differ");
        f.add_coefficient(mode, c);
    }
    return f;
}

py::tuple run(const std::string& command, const std::string& path, std::optional<int> modes, std::optional<int> depth,
              std::optional<double> tol, std::optional<std::uint64_t> seed, std::optional<int> shift) {
    cli::Flags f;
    f.modes = modes;
    f.depth = depth;
    f.tol = tol;
    f.seed = seed;
    f.shift = shift;
    const auto r = cli::run_file(command, path, f);
    return py::make_tuple(r.exit_code, cli::report_text(r.report));
}

py::dict hardy_toeplitz_index(const std::map<int, CMatrix>& coeffs, int modes, double tau, int depth) {
    const auto f = trig_from(coeffs);
    CalculusOptions calc;
    calc.depth = depth;
    const auto h = circle::certified(circle::hardy(f.rows(), depth), calc);
    const auto t = core::toeplitz_compress<circle::CircleAlgebra>(circle::multiplication(f, depth), h, h, calc);
    const auto r = lab::numerical_index(t, modes, tau);
    py::dict d;
    d["index"] = r.index;
    d["kernel"] = r.ker;
    d["cokernel"] = r.coker;
    d["stable"] = r.stable;
    d["margin_ratio"] = r.margin_ratio;
    d["min_singular"] = r.min_singular;
    return d;
}

CMatrix galerkin_matrix(const std::string& text, int modes, int depth) {
    const auto spec = cli::parse_problem_text(text);
    if (spec.algebra != "circle") throw InputError("galerkin sections need a circle problem");
    CalculusOptions calc;
    calc.depth = depth;
    const auto t = cli::build_circle_element(spec, calc);
    lab::require_resolution(t.op, modes);
    return lab::galerkin(t.op, modes).data;
}

}  // namespace

PYBIND11_MODULE(_toeplitz_calc, m) {
    // translators run in reverse order of registration: the base class goes first
    py::register_exception<Error>(m, "ToeplitzError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    m.def("commands", &cli::commands);
    m.def("run", &run, py::arg("command"), py::arg("path"), py::arg("modes") = py::none(),
          py::arg("depth") = py::none(), py::arg("tol") = py::none(), py::arg("seed") = py::none(),
          py::arg("shift") = py::none(), "Run a CLI command on a problem file; returns (exit_code, report_json).");
    m.def("canonical_problem", [](const std::string& text) {
        return cli::serialize_problem(cli::parse_problem_text(text)).dump(2);
    });
    m.def("winding_number", [](const std::map<int, CMatrix>& coeffs, int grid) {
        return lab::winding_oracle(trig_from(coeffs), grid);
    }, py::arg("coeffs"), py::arg("grid") = 256);
    m.def("min_abs_det", [](const std::map<int, CMatrix>& coeffs, int grid) {
        return lab::min_abs_det(trig_from(coeffs), grid);
    }, py::arg("coeffs"), py::arg("grid") = 256);
    m.def("hardy_toeplitz_index", &hardy_toeplitz_index, py::arg("coeffs"), py::arg("modes") = 64,
          py::arg("tau") = 1e-8, py::arg("depth") = 5);
    m.def("galerkin_matrix", &galerkin_matrix, py::arg("problem_text"), py::arg("modes"), py::arg("depth") = 5);
}
