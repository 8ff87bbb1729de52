#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kslab/cli.hpp"

namespace py = pybind11;
using namespace kslab;

namespace {

// Results cross the boundary as plain Python objects via their JSON form.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) { return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

Field field_of(const std::string& s) { return field_from_string(s); }

Frame make_frame(const Matrix& synthesis, const std::string& field) { return Frame(synthesis, field_of(field)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-dimensional frame, paving and decomposition toolkit";
  m.attr("__version__") = kVersion;

  static py::exception<BudgetExceeded> budget_exc(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetExceeded& e) {
      budget_exc(e.what());
    } catch (const ContractViolation& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line in-process; returns (exit_code, stdout, stderr).");

  m.def(
      "verify",
      [](const py::object& report) {
        const VerifyOutcome v = verify_report(from_py(report));
        py::dict d;
        d["verified"] = v.ok;
        d["reasons"] = v.reasons;
        return d;
      },
      py::arg("report"));

  m.def("sym_eigenvalues", [](const Matrix& H) { return sym_eigenvalues(H); }, py::arg("matrix"));
  m.def("operator_norm", &operator_norm, py::arg("matrix"));

  m.def("harmonic_frame", [](int n, int M) { return gen_harmonic_frame(n, M).synthesis; }, py::arg("n"), py::arg("M"));
  m.def(
      "random_unit_frame",
      [](int n, int M, std::uint64_t seed, const std::string& field) {
        return gen_random_unit_frame(n, M, seed, field_of(field)).synthesis;
      },
      py::arg("n"), py::arg("M"), py::arg("seed") = 0, py::arg("field") = "complex");

  m.def(
      "spectral_summary",
      [](const Matrix& F, const std::string& field) { return to_py(to_json(spectral_summary(make_frame(F, field)))); },
      py::arg("synthesis"), py::arg("field") = "complex");
  m.def(
      "parseval_normalize",
      [](const Matrix& F, const std::string& field) { return parseval_normalize(make_frame(F, field)).synthesis; },
      py::arg("synthesis"), py::arg("field") = "complex");

  m.def(
      "naimark_dilate",
      [](const Matrix& F, const std::string& field) { return to_py(to_json(naimark_dilate(make_frame(F, field)))); },
      py::arg("synthesis"), py::arg("field") = "complex");
  m.def(
      "dilate_operator", [](const Matrix& T) { return to_py(to_json(dilate_operator(T))); }, py::arg("T"));

  m.def(
      "pave",
      [](const Matrix& T, int r_max, double epsilon) { return to_py(to_json(pave_exhaustive(T, r_max, epsilon))); },
      py::arg("T"), py::arg("r_max"), py::arg("epsilon"));

  m.def(
      "tp1_partition",
      [](const Matrix& F, int S, double delta, std::uint64_t seed, const std::string& field) {
        return to_py(to_json(tp1_partition(make_frame(F, field), S, delta, std::nullopt, 64, seed)));
      },
      py::arg("synthesis"), py::arg("S"), py::arg("delta"), py::arg("seed") = 0, py::arg("field") = "complex");

  m.def(
      "erasure_robustness",
      [](const Matrix& F, int k, const std::string& field) {
        return to_py(to_json(erasure_robustness(make_frame(F, field), k)));
      },
      py::arg("synthesis"), py::arg("k"), py::arg("field") = "complex");

  m.def(
      "kadec_bounds",
      [](double A, double B, double gamma, double delta) { return to_py(to_json(kadec_bounds(A, B, gamma, delta))); },
      py::arg("A"), py::arg("B"), py::arg("gamma"), py::arg("delta"));

  m.def("mixed_norm", &mixed_norm, py::arg("x"));
  m.def("mixed_norm_counterexample", &mixed_norm_counterexample, py::arg("n"));
}
