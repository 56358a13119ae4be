#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "interp_lab/compactness.hpp"
#include "interp_lab/fourier.hpp"
#include "interp_lab/harness.hpp"
#include "interp_lab/interpolation.hpp"

namespace py = pybind11;
using namespace interp;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
Json from_py(const py::object& o) {
  return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::dict decomposition_dict(const Decomposition& d) {
  py::dict out;
  out["part0"] = d.part0;
  out["part1"] = d.part1;
  out["value"] = d.objective;
  out["lower_bound"] = d.lower_bound;
  out["converged"] = d.status.converged;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical complex interpolation of weighted sequence spaces";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<WeightedSpace>(m, "WeightedSpace")
      .def(py::init([](double p, const RVector& w) { return WeightedSpace(Exponent(p), w); }), py::arg("p"),
           py::arg("weights"))
      .def_static("lp", [](Eigen::Index dim, double p) { return WeightedSpace::lp(dim, Exponent(p)); })
      .def_property_readonly("p", [](const WeightedSpace& s) { return s.exponent().value(); })
      .def_property_readonly("dim", &WeightedSpace::dim)
      .def_property_readonly("weights", &WeightedSpace::weights)
      .def("norm", &WeightedSpace::norm)
      .def("dual_norm", &WeightedSpace::dual_norm)
      .def("to_json", [](const WeightedSpace& s) { return to_py(to_json(s)); });

  py::class_<Couple>(m, "Couple")
      .def(py::init<WeightedSpace, WeightedSpace>())
      .def_property_readonly("X0", &Couple::space0)
      .def_property_readonly("X1", &Couple::space1)
      .def_static("from_json", [](const py::object& o) { return couple_from_json(from_py(o)); })
      .def("to_json", [](const Couple& c) { return to_py(to_json(c)); });

  m.def("identity_norm", &identity_norm);
  m.def(
      "k_functional",
      [](const Couple& c, const CVector& x, double t) { return decomposition_dict(k_functional(c, x, t)); },
      py::arg("couple"), py::arg("x"), py::arg("t"));
  m.def("calderon_exponent", [](double theta, double p0, double p1) {
    return calderon_exponent(theta, Exponent(p0), Exponent(p1)).value();
  });
  m.def("closed_form_norm", [](const Couple& c, double theta, const CVector& x) {
    return closed_form_norm(InterpolationRequest(c, theta), x);
  });
  m.def(
      "interpolated_norm",
      [](const Couple& c, double theta, const CVector& x, int degree, int grid) {
        NumericNormOptions opts;
        opts.minimize.degree = degree;
        opts.minimize.grid.samples = grid;
        const InterpolatedNorm n = interpolated_norm(InterpolationRequest(c, theta), x, NormMode::kBoth, opts);
        py::dict out;
        out["lower"] = n.estimate.lower;
        out["upper"] = n.estimate.upper;
        out["closed_form"] = n.closed_form ? py::cast(*n.closed_form) : py::none();
        out["converged"] = n.status.converged;
        return out;
      },
      py::arg("couple"), py::arg("theta"), py::arg("x"), py::arg("degree") = 16, py::arg("grid") = 128);
  m.def("lions_peetre", [](const Couple& c, double theta, const CVector& x, double t) {
    const LionsPeetreReport r = lions_peetre_decompose(InterpolationRequest(c, theta), x, t);
    py::dict out = decomposition_dict(r.decomposition);
    out["constant0"] = r.constant0;
    out["constant1"] = r.constant1;
    return out;
  });

  m.def("random_polynomial_value", [](int degree, const CVector& x, int q, std::uint64_t seed) {
    Rng rng(seed);
    const HomPolynomial p(SymMultilinearMap::random(degree, static_cast<int>(x.size()), q, rng));
    return p(x);
  });
  m.def("martin_constant", &martin_constant);

  m.def("fourier_coefficients", [](const CMatrix& samples) { return coefficients(CircleFunction(samples)).coefficients(); });
  m.def("synthesize", [](const CMatrix& table) { return synthesize(CoefficientTable(table)).samples(); });
  m.def("vallee_poussin_window", &vallee_poussin_window);

  m.def("list_suites", [] {
    py::list out;
    for (const auto& s : list_suites()) out.append(py::make_tuple(s.name, s.description));
    return out;
  });
  m.def(
      "run_suite",
      [](const py::object& config) {
        const ExperimentConfig cfg = ExperimentConfig::from_json(from_py(config));
        const SuiteReport r = [&] {
          py::gil_scoped_release release;
          return run_suite(cfg);
        }();
        return to_py(r.to_json());
      },
      py::arg("config"));
}
