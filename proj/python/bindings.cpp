#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "specrad/aluthge.hpp"
#include "specrad/ensemble.hpp"
#include "specrad/error.hpp"
#include "specrad/estimators.hpp"
#include "specrad/matkernel.hpp"
#include "specrad/normaloid.hpp"
#include "specrad/numrange.hpp"
#include "specrad/orbitopt.hpp"
#include "specrad/serialize.hpp"

namespace py = pybind11;
using namespace specrad;

namespace {

ComplexMatrix to_matrix(const CMat& m) { return ComplexMatrix(m); }

// Results cross the boundary as plain dicts, built from the JSON form.
py::object as_dict(const ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::optional<Angle> to_angle(std::optional<double> theta) {
  if (!theta) return std::nullopt;
  return Angle(*theta);
}

ObjectiveKind parse_objective(const std::string& name) {
  for (ObjectiveKind k : {ObjectiveKind::delta_norm, ObjectiveKind::delta_numrad,
                          ObjectiveKind::rotated_realpart_norm,
                          ObjectiveKind::rotated_realpart_numrad, ObjectiveKind::plain_norm}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown objective '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral radius via Aluthge iterates, power limits and similarity orbits.";

  auto base = py::register_exception<Error>(m, "SpecradError", PyExc_ValueError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<NotPsdError>(m, "NotPsdError", base.ptr());

  m.def("spectral_radius", [](const CMat& t) { return spectral_radius_oracle(to_matrix(t)); },
        py::arg("t"), "Max eigenvalue modulus.");
  m.def("operator_norm", [](const CMat& t) { return operator_norm(to_matrix(t)); },
        py::arg("t"));
  m.def("eigenvalues", [](const CMat& t) { return eigenvalues(to_matrix(t)); }, py::arg("t"),
        "Eigenvalues sorted by descending modulus.");

  m.def(
      "polar",
      [](const CMat& t) {
        const PolarFactors pf = polar_decompose(to_matrix(t));
        return py::make_tuple(pf.U.data(), pf.P.data());
      },
      py::arg("t"), "Polar factors (U, P) with T = U P.");
  m.def(
      "aluthge",
      [](const CMat& t, double lambda, std::size_t n) {
        return aluthge_iterate(to_matrix(t), AluthgeConfig{lambda, std::nullopt}, n).data();
      },
      py::arg("t"), py::arg("lambda_") = 0.5, py::arg("n") = 1,
      "n-th iterate of the lambda-Aluthge transform.");
  m.def(
      "iterate_trace",
      [](const CMat& t, std::size_t iters, double lambda, bool with_numrad) {
        return as_dict(to_json(
            iterate_trace(to_matrix(t), AluthgeConfig{lambda, std::nullopt}, iters, with_numrad)));
      },
      py::arg("t"), py::arg("iters") = 100, py::arg("lambda_") = 0.5,
      py::arg("with_numrad") = false);

  m.def(
      "numerical_radius",
      [](const CMat& t, std::optional<double> tol) {
        NumericalRadiusOptions opts;
        opts.tol = tol;
        return numerical_radius(to_matrix(t), opts).w;
      },
      py::arg("t"), py::arg("tol") = py::none());
  m.def("fov_boundary", [](const CMat& t, std::size_t samples) {
    return fov_boundary(to_matrix(t), samples);
  }, py::arg("t"), py::arg("samples") = 256);

  m.def(
      "estimate",
      [](const CMat& t, const std::string& method, double lambda, std::size_t n,
         std::size_t k_max, double rtol, std::size_t max_iters) {
        const ComplexMatrix tm = to_matrix(t);
        const AluthgeConfig cfg{lambda, std::nullopt};
        ToleranceConfig tol;
        tol.rtol = rtol;
        tol.max_iterations = max_iters;
        const PowerSchedule s = PowerSchedule::doubling(k_max);
        SpectralEstimate e;
        if (method == "gelfand") {
          e = estimate_gelfand(tm, s, tol);
        } else if (method == "aluthge_iterate") {
          e = estimate_aluthge_iterate(tm, cfg, tol);
        } else if (method == "aluthge_power") {
          e = estimate_aluthge_power(tm, cfg, n, s, tol);
        } else if (method == "numrad_power") {
          e = estimate_numrad_power(tm, cfg, n, s, tol);
        } else {
          throw InvalidArgument("unknown method '" + method + "'");
        }
        return as_dict(to_json(e));
      },
      py::arg("t"), py::arg("method"), py::arg("lambda_") = 0.5, py::arg("n") = 1,
      py::arg("k_max") = 1024, py::arg("rtol") = 1e-6, py::arg("max_iters") = 1000);

  m.def(
      "minimize_orbit",
      [](const CMat& t, const std::string& objective, double lambda, std::size_t n,
         std::optional<double> theta, std::size_t budget, double radius, std::uint64_t seed) {
        const OrbitObjective obj{parse_objective(objective), lambda, n, to_angle(theta)};
        return as_dict(to_json(minimize_orbit(to_matrix(t), obj, budget, radius, seed)));
      },
      py::arg("t"), py::arg("objective") = "delta_norm", py::arg("lambda_") = 0.5,
      py::arg("n") = 1, py::arg("theta") = py::none(), py::arg("budget") = 5000,
      py::arg("radius") = 8.0, py::arg("seed") = 1);
  m.def("peripheral_angle", [](const CMat& t) { return peripheral_angle(to_matrix(t)).radians(); },
        py::arg("t"));

  m.def(
      "normaloid",
      [](const CMat& t, bool verify, std::size_t budget, std::uint64_t seed) {
        const ComplexMatrix tm = to_matrix(t);
        return as_dict(to_json(verify ? verify_characterizations(tm, budget, seed)
                                      : normaloid_check(tm)));
      },
      py::arg("t"), py::arg("verify") = false, py::arg("budget") = 5000, py::arg("seed") = 1);

  m.def(
      "generate",
      [](const std::string& kind, Eigen::Index dim, std::uint64_t seed,
         std::vector<double> params) {
        const auto k = parse_ensemble_kind(kind);
        if (!k) throw InvalidArgument("unknown ensemble kind '" + kind + "'");
        return generate(EnsembleSpec{*k, dim, seed, std::move(params)}).data();
      },
      py::arg("kind"), py::arg("dim"), py::arg("seed") = 0,
      py::arg("params") = std::vector<double>{});
}
