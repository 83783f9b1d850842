#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fmt/format.h>

#include "bcml/bicomplex.hpp"
#include "bcml/distribution.hpp"
#include "bcml/gamma.hpp"
#include "bcml/json_io.hpp"
#include "bcml/mittag_leffler.hpp"
#include "bcml/oracles.hpp"
#include "bcml/verify.hpp"

namespace py = pybind11;
using namespace bcml;

namespace {

// Python-side arguments may be a Bicomplex or a plain real number.
MLDistParams make_params(const Bicomplex& a, const Bicomplex& alpha) { return MLDistParams::make(a, alpha); }

py::tuple idempotent_tuple(const Bicomplex& x) {
  const IdempotentPair p = x.idempotent();
  return py::make_tuple(p.first, p.second);
}

SeriesOptions series_options(double tol, int max_terms) { return {tol, max_terms}; }

}  // namespace

PYBIND11_MODULE(bcml, m) {
  m.doc() = "Bicomplex Mittag-Leffler distribution";

  static py::exception<Error> error_type(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(fmt::format("{}: {}", to_string(e.code()), e.what()));
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Bicomplex>(m, "Bicomplex")
      .def(py::init<>())
      .def(py::init<double>(), py::arg("x0"))
      .def(py::init([](double x0, double x1, double x2, double x3) { return Bicomplex::make(x0, x1, x2, x3); }),
           py::arg("x0"), py::arg("x1"), py::arg("x2"), py::arg("x3"))
      .def_static("from_z", [](Complex z1, Complex z2) { return Bicomplex(z1, z2); })
      .def_static("from_idempotent", [](Complex xi1, Complex xi2) { return from_idempotent(xi1, xi2); })
      .def_property_readonly("x0", &Bicomplex::x0)
      .def_property_readonly("x1", &Bicomplex::x1)
      .def_property_readonly("x2", &Bicomplex::x2)
      .def_property_readonly("x3", &Bicomplex::x3)
      .def_property_readonly("z1", &Bicomplex::z1)
      .def_property_readonly("z2", &Bicomplex::z2)
      .def("idempotent", &idempotent_tuple)
      .def("components", [](const Bicomplex& x) { return py::make_tuple(x.x0(), x.x1(), x.x2(), x.x3()); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(py::self + double())
      .def(py::self * double())
      .def(double() + py::self)
      .def(double() * py::self)
      .def(-py::self)
      .def("__pow__", [](const Bicomplex& b, const Bicomplex& e) { return pow(b, e); })
      .def("__pow__", [](const Bicomplex& b, double e) { return pow(b, Bicomplex(e)); })
      .def("__abs__", [](const Bicomplex& x) { return norm(x); })
      .def("__repr__", [](const Bicomplex& x) {
        return fmt::format("Bicomplex({}, {}, {}, {})", x.x0(), x.x1(), x.x2(), x.x3());
      });
  py::implicitly_convertible<double, Bicomplex>();
  py::implicitly_convertible<int, Bicomplex>();

  m.attr("e1") = kE1;
  m.attr("e2") = kE2;
  m.def("is_null_cone", &is_null_cone, py::arg("x"), py::arg("tol") = kNullConeTol);
  m.def("exp", py::overload_cast<const Bicomplex&>(&bcml::exp));
  m.def("log", py::overload_cast<const Bicomplex&>(&bcml::log));
  m.def("norm", &norm);

  m.def("gamma", &bcml::gamma, py::arg("z"));
  m.def("log_gamma", &bcml::log_gamma, py::arg("z"));

  py::class_<ComplexEvalResult>(m, "ComplexEvalResult")
      .def_readonly("value", &ComplexEvalResult::value)
      .def_readonly("terms_used", &ComplexEvalResult::terms_used)
      .def_readonly("error_estimate", &ComplexEvalResult::error_estimate)
      .def_readonly("converged", &ComplexEvalResult::converged);
  py::class_<EvalResult>(m, "EvalResult")
      .def_readonly("value", &EvalResult::value)
      .def_readonly("terms_used", &EvalResult::terms_used)
      .def_readonly("error_estimate", &EvalResult::error_estimate)
      .def_readonly("converged", &EvalResult::converged);

  m.def(
      "mittag_leffler_complex",
      [](Complex alpha, Complex z, double tol, int max_terms) {
        return mittag_leffler(alpha, z, series_options(tol, max_terms));
      },
      py::arg("alpha"), py::arg("z"), py::arg("tol") = kDefaultSeriesTol, py::arg("max_terms") = kDefaultMaxTerms);
  m.def(
      "mittag_leffler",
      [](const Bicomplex& alpha, const Bicomplex& xi, double tol, int max_terms) {
        return mittag_leffler(AlphaParam::make(alpha), xi, series_options(tol, max_terms));
      },
      py::arg("alpha"), py::arg("xi"), py::arg("tol") = kDefaultSeriesTol, py::arg("max_terms") = kDefaultMaxTerms);
  m.def("validate_alpha", [](const Bicomplex& alpha) {
    const AlphaValidation v = validate_alpha(alpha);
    return py::make_tuple(v.valid, v.diagnostic);
  });

  py::class_<MLDistParams>(m, "Params")
      .def(py::init(&make_params), py::arg("a"), py::arg("alpha"))
      .def_property_readonly("a", &MLDistParams::a)
      .def_property_readonly("alpha", &MLDistParams::alpha)
      .def("has_real_components", &MLDistParams::has_real_components);

  py::class_<MgfResult>(m, "MgfResult")
      .def_readonly("value", &MgfResult::value)
      .def_readonly("in_series_region", &MgfResult::in_series_region)
      .def_readonly("analytic_continuation", &MgfResult::analytic_continuation);

  m.def(
      "pdf",
      [](const Bicomplex& xi, const MLDistParams& p, double tol, int max_terms) {
        return pdf(xi, p, series_options(tol, max_terms));
      },
      py::arg("xi"), py::arg("params"), py::arg("tol") = kDefaultSeriesTol, py::arg("max_terms") = kDefaultMaxTerms);
  m.def("mgf", &mgf, py::arg("t"), py::arg("params"));
  m.def("moment", &moment, py::arg("r"), py::arg("params"));
  m.def("mean", &mean, py::arg("params"));
  m.def("variance", &variance, py::arg("params"));

  py::class_<QuadratureResult>(m, "QuadratureResult")
      .def_readonly("value", &QuadratureResult::value)
      .def_readonly("error_estimate", &QuadratureResult::error_estimate)
      .def_readonly("upper_limit", &QuadratureResult::upper_limit)
      .def_readonly("converged", &QuadratureResult::converged);

  m.def("moment_series_oracle", &moment_series_oracle, py::arg("r"), py::arg("params"), py::arg("tol") = 1e-15,
        py::arg("max_terms") = 200000);
  m.def("moment_quadrature_oracle", &moment_quadrature_oracle, py::arg("r"), py::arg("params"),
        py::arg("tol") = 1e-9);
  m.def("mgf_oracle", &mgf_oracle, py::arg("t"), py::arg("params"), py::arg("tol") = 1e-9);
  m.def("finite_difference_moments", &finite_difference_moments, py::arg("params"), py::arg("h") = 1e-3);

  py::class_<GridPoint>(m, "GridPoint")
      .def(py::init([](std::string label, const Bicomplex& a, const Bicomplex& alpha) {
             return GridPoint{std::move(label), a, alpha};
           }),
           py::arg("label"), py::arg("a"), py::arg("alpha"))
      .def_readonly("label", &GridPoint::label)
      .def_readonly("a", &GridPoint::a)
      .def_readonly("alpha", &GridPoint::alpha);
  m.def("default_grid", &default_grid);
  m.def("default_real_grid", &default_real_grid);
  m.def(
      "verify",
      [](const std::vector<GridPoint>& grid, unsigned threads) {
        VerifyConfig cfg;
        cfg.threads = threads;
        const VerificationReport report = verify_all(grid, cfg);
        py::module_ json = py::module_::import("json");
        return json.attr("loads")(report_to_json(report).dump());
      },
      py::arg("grid"), py::arg("threads") = 0, "Runs the verification suite and returns the JSON report as a dict.");
}
