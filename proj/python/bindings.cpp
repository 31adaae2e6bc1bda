// Python entry points. Results cross the boundary as JSON text; the package
// wrapper decodes them so multiprecision values stay decimal strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "simdiag/bench.hpp"
#include "simdiag/errors.hpp"

namespace py = pybind11;
using namespace simdiag;

namespace {

RunConfig make_config(std::size_t n, int perturb_exp, const std::string& field, std::uint64_t seed,
                      Precision prec, int iters) {
  RunConfig cfg;
  cfg.n = n;
  cfg.perturb_exp = perturb_exp;
  cfg.field = parse_field(field);
  cfg.seed = seed;
  cfg.precision_bits = prec;
  cfg.iters = iters;
  validate(cfg);
  return cfg;
}

std::string run_json(const TestRun& run) {
  nlohmann::json j = to_json(run.trace, false);
  j["status"] = std::string(to_string(run.status));
  j["certified"] = run.certified;
  j["resample_offset"] = run.resample_offset;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multiprecision Newton refinement for eigenproblems and simultaneous diagonalization";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "SimdiagError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "test1_json",
      [](std::size_t n, int perturb_exp, const std::string& field, std::uint64_t seed, Precision prec, int iters) {
        return run_json(run_test1(make_config(n, perturb_exp, field, seed, prec, iters)));
      },
      py::arg("n"), py::arg("perturb_exp"), py::arg("field"), py::arg("seed"), py::arg("prec"), py::arg("iters"));

  m.def(
      "test2_json",
      [](std::size_t n, int perturb_exp, const std::string& field, std::uint64_t seed, Precision prec, int iters) {
        return run_json(run_test2(make_config(n, perturb_exp, field, seed, prec, iters)));
      },
      py::arg("n"), py::arg("perturb_exp"), py::arg("field"), py::arg("seed"), py::arg("prec"), py::arg("iters"));

  m.def(
      "wilkinson_json",
      [](std::size_t n, Precision prec, int iters, const std::string& route) {
        std::ostringstream out;
        write_roots(out, run_wilkinson({n, prec, iters, parse_route(route)}), OutputFormat::json, false);
        return out.str();
      },
      py::arg("n"), py::arg("prec"), py::arg("iters"), py::arg("route") = "arrowhead");

  m.def(
      "qr_compare",
      [](std::size_t min_n, std::size_t max_n, int trials, std::uint64_t seed, double threshold) {
        QRCompareConfig cfg;
        cfg.min_n = min_n;
        cfg.max_n = max_n;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.threshold = threshold;
        std::vector<std::tuple<std::size_t, int, int, int>> rows;
        for (const auto& r : run_qr_compare(cfg)) rows.emplace_back(r.n, r.trial, r.iters_alg1, r.iters_alg3);
        return rows;
      },
      py::arg("min_n"), py::arg("max_n"), py::arg("trials"), py::arg("seed"), py::arg("threshold") = 1e-6);
}
