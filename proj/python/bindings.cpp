#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "carleson/cli.hpp"
#include "carleson/errors.hpp"
#include "carleson/fock_space.hpp"
#include "carleson/operator_classifiers.hpp"
#include "carleson/oracle_suite.hpp"
#include "carleson/spec_language.hpp"

namespace py = pybind11;
using namespace carleson;

PYBIND11_MODULE(carleson, m) {
  m.doc() = "Summing-operator diagnostics for weighted Fock spaces";

  // Translators run newest first, so the base is registered before the leaves.
  const auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());

  py::class_<Window>(m, "Window")
      .def(py::init<int>(), py::arg("n_max") = GridSpec::kDefaultWindow)
      .def_property_readonly("n_max", &Window::n_max)
      .def_property_readonly("cell_count", &Window::cell_count);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def(py::init([](double step, double radius, int n_max) { return GridSpec(step, radius, Window(n_max)); }),
           py::arg("step") = GridSpec::kDefaultStep, py::arg("radius") = GridSpec::kDefaultRadius,
           py::arg("window") = GridSpec::kDefaultWindow)
      .def_property_readonly("step", &GridSpec::step)
      .def_property_readonly("radius", &GridSpec::radius)
      .def_property_readonly("window", &GridSpec::window);

  py::class_<Weight>(m, "Weight")
      .def_static("constant", &Weight::constant)
      .def_static("radial_power", &Weight::radial_power)
      .def_static("gaussian_growth", &Weight::gaussian_growth)
      .def_static("parse", [](const std::string& s) { return parse_weight(s); })
      .def("__call__", [](const Weight& w, Complex z) { return w(z); })
      .def_property_readonly("label", &Weight::label);

  py::class_<Atom>(m, "Atom")
      .def(py::init<Complex, double>(), py::arg("location"), py::arg("mass"))
      .def_readonly("location", &Atom::location)
      .def_readonly("mass", &Atom::mass);

  py::class_<Measure>(m, "Measure")
      .def_static("zero", &Measure::zero)
      .def_static("lebesgue", &Measure::lebesgue)
      .def_static("gaussian", &Measure::gaussian)
      .def_static("from_atoms", [](std::vector<Atom> a) { return Measure::from_atoms(std::move(a)); })
      .def_static("parse", [](const std::string& s, double p, double alpha) { return parse_measure(s, p, alpha); },
                  py::arg("spec"), py::arg("p"), py::arg("alpha") = 1.0)
      .def("scaled", &Measure::scaled)
      .def("mass_on_disk",
           [](const Measure& mu, Complex z, double r, const GridSpec& g) { return mass_on_disk(mu, z, r, g).mass; },
           py::arg("z"), py::arg("r"), py::arg("grid") = GridSpec())
      .def_property_readonly("label", &Measure::label)
      .def("__add__", [](const Measure& a, const Measure& b) { return a + b; });

  m.def("pullback_measure", [](Complex a, Complex b, double p, double alpha) {
    return pullback_measure(AffineSymbol{a, b}, p, alpha);
  }, py::arg("a"), py::arg("b"), py::arg("p"), py::arg("alpha") = 1.0);
  m.def("volterra_measure", [](std::vector<Complex> c, double p) { return volterra_measure(PolynomialSymbol(c), p); });

  m.def("target_exponent", [](double p, double r) {
    const auto e = target_exponent(p, r);
    return py::make_tuple(to_string(e.regime), e.s);
  });

  py::class_<SummingVerdict>(m, "SummingVerdict")
      .def_readonly("p", &SummingVerdict::p)
      .def_readonly("r", &SummingVerdict::r)
      .def_readonly("alpha", &SummingVerdict::alpha)
      .def_property_readonly("regime", [](const SummingVerdict& v) { return to_string(v.regime); })
      .def_readonly("s", &SummingVerdict::s)
      .def_readonly("lattice_norm", &SummingVerdict::lattice_norm)
      .def_readonly("integral_norm", &SummingVerdict::integral_norm)
      .def_readonly("tail_certificate", &SummingVerdict::tail_certificate)
      .def_readonly("pi_low", &SummingVerdict::pi_low)
      .def_readonly("pi_high", &SummingVerdict::pi_high)
      .def_property_readonly("classification", [](const SummingVerdict& v) { return to_string(v.classification); })
      .def_readonly("basis", &SummingVerdict::basis);

  m.def("classify_embedding",
        [](double p, double r, double alpha, const Weight& w, const Measure& mu, const GridSpec& g) {
          return classify_embedding(p, r, alpha, w, mu, g);
        },
        py::arg("p"), py::arg("r"), py::arg("alpha"), py::arg("weight"), py::arg("measure"),
        py::arg("grid") = GridSpec());

  py::class_<OperatorReport>(m, "OperatorReport")
      .def_property_readonly("verdict", [](const OperatorReport& r) { return to_string(r.verdict); })
      .def_readonly("bounded", &OperatorReport::bounded)
      .def_readonly("agrees", &OperatorReport::agrees)
      .def_readonly("reason", &OperatorReport::reason);

  m.def("classify_composition",
        [](Complex a, Complex b, double p, double r, double alpha, const GridSpec& g) {
          return classify_composition(AffineSymbol{a, b}, p, r, alpha, g);
        },
        py::arg("a"), py::arg("b"), py::arg("p"), py::arg("r"), py::arg("alpha") = 1.0, py::arg("grid") = GridSpec());
  m.def("classify_volterra",
        [](std::vector<Complex> g, double p, double r, double alpha, const GridSpec& grid) {
          return classify_volterra(PolynomialSymbol(g), p, r, alpha, grid);
        },
        py::arg("g"), py::arg("p"), py::arg("r"), py::arg("alpha") = 1.0, py::arg("grid") = GridSpec());

  m.def("kernel_norm",
        [](Complex u, double p, double alpha, const Weight& w, const GridSpec& g) {
          const KernelNorm k = kernel_norm(u, p, alpha, w, g);
          return py::make_tuple(k.log_direct, k.log_proxy);
        },
        py::arg("u"), py::arg("p"), py::arg("alpha"), py::arg("weight"), py::arg("grid") = GridSpec());

  m.def("apr_constant",
        [](const Weight& w, double p, double t, const GridSpec& g) {
          const ConstantReport r = apr_constant_report(w, p, t, g);
          return py::make_tuple(r.value, to_string(r.membership));
        },
        py::arg("weight"), py::arg("p"), py::arg("t") = 1.0, py::arg("grid") = GridSpec());

  m.def("run_suite",
        [](const std::string& name, std::uint64_t seed, const GridSpec& g) {
          std::vector<py::tuple> out;
          for (const auto& l : run_suite(name, seed, g)) out.push_back(py::make_tuple(l.name, l.pass, l.detail));
          return out;
        },
        py::arg("name"), py::arg("seed") = 1, py::arg("grid") = GridSpec());

  // (exit code, stdout, stderr)
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });
}
