#include "specrad/aluthge.hpp"

#include <cmath>

#include "specrad/error.hpp"
#include "specrad/numrange.hpp"

namespace specrad {

namespace {

double power_or_zero(double sigma, double exponent, bool kept) {
  if (!kept) return exponent == 0.0 ? 1.0 : 0.0;
  return exponent == 0.0 ? 1.0 : std::pow(sigma, exponent);
}

}  // namespace

void AluthgeConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidArgument("Aluthge lambda must lie in [0, 1]");
  }
  if (rank_tolerance && !(*rank_tolerance >= 0.0 && std::isfinite(*rank_tolerance))) {
    throw InvalidArgument("rank tolerance override must be finite and >= 0");
  }
}

PolarFactors polar_decompose(const ComplexMatrix& t, std::optional<double> rank_tol) {
  const SvdFactors f = svd(t);
  const Eigen::Index n = t.dim();
  const double tol = rank_tolerance(f.singular_values, n, rank_tol);
  RVec keep(n);
  for (Eigen::Index i = 0; i < n; ++i) keep(i) = f.singular_values(i) > tol ? 1.0 : 0.0;
  CMat u = f.U * keep.asDiagonal() * f.V.adjoint();
  CMat p = f.V * f.singular_values.asDiagonal() * f.V.adjoint();
  return PolarFactors{ComplexMatrix(std::move(u)), HermitianMatrix(p)};
}

ComplexMatrix aluthge(const ComplexMatrix& t, const AluthgeConfig& cfg) {
  cfg.validate();
  // With T = L S R*, both |T|^a = R S^a R* and U = L D R* share the right
  // singular basis R, so
  //   Delta(T) = R S^lambda (R* L) D S^(1 - lambda) R*
  // needs a single SVD.
  const SvdFactors f = svd(t);
  const Eigen::Index n = t.dim();
  const double tol = rank_tolerance(f.singular_values, n, cfg.rank_tolerance);
  RVec left(n);
  RVec right(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = f.singular_values(i);
    const bool kept = s > tol;
    left(i) = power_or_zero(s, cfg.lambda, kept);
    right(i) = kept ? power_or_zero(s, 1.0 - cfg.lambda, true) : 0.0;
  }
  const CMat core = left.asDiagonal() * (f.V.adjoint() * f.U) * right.asDiagonal();
  CMat out = f.V * core * f.V.adjoint();
  require_finite(out, "Aluthge transform");
  return ComplexMatrix(std::move(out));
}

ComplexMatrix aluthge_iterate(const ComplexMatrix& t, const AluthgeConfig& cfg,
                              std::size_t n) {
  cfg.validate();
  ComplexMatrix current = t;
  for (std::size_t k = 0; k < n; ++k) current = aluthge(current, cfg);
  return current;
}

IterateTrace iterate_trace(const ComplexMatrix& t, const AluthgeConfig& cfg,
                           std::size_t n_max, bool record_w) {
  cfg.validate();
  if (n_max < 1) throw InvalidArgument("iterate trace needs n_max >= 1");
  IterateTrace trace;
  trace.norms.reserve(n_max + 1);
  trace.spectra_drift.reserve(n_max + 1);
  if (record_w) trace.numerical_radii.emplace();

  const auto base_spectrum = eigenvalues(t);
  ComplexMatrix current = t;
  for (std::size_t k = 0;; ++k) {
    trace.norms.push_back(operator_norm(current));
    if (record_w) trace.numerical_radii->push_back(numerical_radius(current).w);
    if (k == 0) {
      trace.spectra_drift.push_back(0.0);
    } else {
      const auto spectrum = eigenvalues(current);
      trace.spectra_drift.push_back(hausdorff_distance(spectrum, base_spectrum));
    }
    if (k == n_max) break;
    current = aluthge(current, cfg);
  }
  trace.iterates_recorded = n_max;
  return trace;
}

}  // namespace specrad
