#include "specrad/orbitopt.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "specrad/aluthge.hpp"
#include "specrad/error.hpp"
#include "specrad/nelder_mead.hpp"
#include "specrad/rng.hpp"

namespace specrad {

namespace {

constexpr double kBoundaryFraction = 0.99;

}  // namespace

std::string_view to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::delta_norm:
      return "delta_norm";
    case ObjectiveKind::delta_numrad:
      return "delta_numrad";
    case ObjectiveKind::rotated_realpart_norm:
      return "rotated_realpart_norm";
    case ObjectiveKind::rotated_realpart_numrad:
      return "rotated_realpart_numrad";
    case ObjectiveKind::plain_norm:
      return "plain_norm";
  }
  return "unknown";
}

bool is_rotated(ObjectiveKind k) {
  return k == ObjectiveKind::rotated_realpart_norm ||
         k == ObjectiveKind::rotated_realpart_numrad;
}

void OrbitObjective::validate() const {
  AluthgeConfig{lambda, std::nullopt}.validate();
  if (is_rotated(kind) != theta.has_value()) {
    throw InvalidArgument(std::string("objective ") + std::string(to_string(kind)) +
                          (is_rotated(kind) ? " requires" : " does not take") +
                          " a rotation angle");
  }
}

HermitianParams::HermitianParams(Eigen::Index dim)
    : HermitianParams(dim, Eigen::VectorXd::Zero(dim * dim)) {}

HermitianParams::HermitianParams(Eigen::Index dim, Eigen::VectorXd coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1 || dim_ > kMaxDim) throw InvalidArgument("generator dimension out of range");
  if (coords_.size() != dim_ * dim_) {
    throw InvalidArgument("generator needs " + std::to_string(dim_ * dim_) +
                          " coordinates, got " + std::to_string(coords_.size()));
  }
  if (!coords_.allFinite()) throw InvalidArgument("generator coordinates must be finite");
}

HermitianParams HermitianParams::from_matrix(const HermitianMatrix& a) {
  const Eigen::Index n = a.dim();
  Eigen::VectorXd c(n * n);
  Eigen::Index pos = 0;
  for (Eigen::Index i = 0; i < n; ++i) c(pos++) = a(i, i).real();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      c(pos++) = a(i, j).real();
      c(pos++) = a(i, j).imag();
    }
  }
  return HermitianParams(n, std::move(c));
}

HermitianMatrix HermitianParams::materialize() const {
  const Eigen::Index n = dim_;
  CMat upper = CMat::Zero(n, n);
  Eigen::Index pos = 0;
  for (Eigen::Index i = 0; i < n; ++i) upper(i, i) = coords_(pos++);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      upper(i, j) = Complex(coords_(pos), coords_(pos + 1));
      pos += 2;
    }
  }
  return HermitianMatrix(upper);
}

double hermitian_coords_norm(const Eigen::VectorXd& coords, Eigen::Index dim) {
  const double diag = coords.head(dim).squaredNorm();
  const double off = coords.tail(coords.size() - dim).squaredNorm();
  return std::sqrt(diag + 2.0 * off);
}

double HermitianParams::frobenius_norm() const { return hermitian_coords_norm(coords_, dim_); }

double evaluate_objective(const ComplexMatrix& t, const OrbitObjective& obj,
                          const HermitianParams& a) {
  if (a.dim() != t.dim()) throw InvalidArgument("generator and matrix dimensions differ");
  const auto [e_plus, e_minus] = matrix_exp_pair(a.materialize());
  CMat s = e_plus * t.data() * e_minus;
  if (obj.theta) s *= obj.theta->phase();
  require_finite(s, "similarity conjugation");
  if (obj.kind == ObjectiveKind::plain_norm) return operator_norm(s);

  const ComplexMatrix iterate =
      aluthge_iterate(ComplexMatrix(std::move(s)), AluthgeConfig{obj.lambda, std::nullopt}, obj.n);
  switch (obj.kind) {
    case ObjectiveKind::delta_norm:
      return operator_norm(iterate);
    case ObjectiveKind::delta_numrad:
      return numerical_radius(iterate).w;
    case ObjectiveKind::rotated_realpart_norm:
      return hermitian_abs_max(real_part(iterate));
    case ObjectiveKind::rotated_realpart_numrad:
      // W of a Hermitian matrix is [lambda_min, lambda_max].
      return hermitian_abs_max(real_part(iterate));
    case ObjectiveKind::plain_norm:
      break;
  }
  return operator_norm(iterate);
}

OrbitResult minimize_orbit(const ComplexMatrix& t, const OrbitObjective& obj,
                           const OrbitSearchOptions& opts) {
  obj.validate();
  if (opts.budget < 1) throw InvalidArgument("orbit budget must be >= 1");
  if (!(opts.radius > 0.0) || !std::isfinite(opts.radius)) {
    throw InvalidArgument("orbit radius must be positive and finite");
  }

  const Eigen::Index n = t.dim();
  const Eigen::Index d = n * n;
  const double step = opts.radius / 10.0;

#ifndef NDEBUG
  const bool bounded_below = !is_rotated(obj.kind);
  const double r_oracle = spectral_radius_oracle(t);
#endif

  OrbitResult res;
  res.best_value = std::numeric_limits<double>::infinity();
  res.best_A = HermitianParams(n);

  auto objective = [&](const Eigen::VectorXd& x) {
    HermitianParams a(n, x);
    const double v = evaluate_objective(t, obj, a);
    ++res.evaluations;
#ifndef NDEBUG
    assert(!bounded_below || v >= r_oracle - 1e-6);
#endif
    if (opts.observer) opts.observer(res.evaluations, v);
    if (v < res.best_value) {
      res.best_value = v;
      res.best_A = std::move(a);
      res.history.emplace_back(res.evaluations, v);
    }
    return v;
  };
  auto project = [&](Eigen::VectorXd& x) {
    const double norm = hermitian_coords_norm(x, n);
    if (norm > opts.radius) x *= opts.radius / norm;
  };

  // Starting points are drawn up front so the stream does not depend on how
  // the budget is spent.
  Rng rng(opts.seed);
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Zero(d));
  for (std::size_t s = 0; s < opts.restarts; ++s) {
    Eigen::VectorXd x(d);
    for (Eigen::Index i = 0; i < d; ++i) x(i) = step * rng.normal();
    project(x);
    starts.push_back(std::move(x));
  }

  auto remaining = [&] { return opts.budget - res.evaluations; };

  // Repeated Nelder-Mead from x, restarting at each optimum while it improves.
  auto descend = [&](Eigen::VectorXd x, std::size_t allowance) {
    double previous = std::numeric_limits<double>::infinity();
    while (allowance > 0) {
      NelderMeadOptions nm;
      nm.max_evaluations = allowance;
      nm.initial_step = step;
      const NelderMeadResult r = nelder_mead(objective, x, nm, project);
      allowance -= std::min(allowance, r.evaluations);
      if (!(r.value < previous - 1e-12 * std::abs(previous))) break;
      previous = r.value;
      x = r.x;
    }
  };

  for (std::size_t s = 0; s < starts.size() && remaining() > 0; ++s) {
    const std::size_t share = std::max<std::size_t>(1, remaining() / (starts.size() - s));
    descend(starts[s], share);
  }
  // Unused budget goes to further refinement of the incumbent.
  if (remaining() > static_cast<std::size_t>(d) + 1) {
    descend(res.best_A.coords(), remaining());
  }

  res.boundary_hit = res.best_A.frobenius_norm() >= kBoundaryFraction * opts.radius;
  return res;
}

OrbitResult minimize_orbit(const ComplexMatrix& t, const OrbitObjective& obj,
                           std::size_t budget, double radius, std::uint64_t seed) {
  OrbitSearchOptions opts;
  opts.budget = budget;
  opts.radius = radius;
  opts.seed = seed;
  return minimize_orbit(t, obj, opts);
}

double orbit_gap(const ComplexMatrix& t, const OrbitObjective& obj, std::size_t budget,
                 double radius, std::uint64_t seed) {
  const OrbitResult r = minimize_orbit(t, obj, budget, radius, seed);
  return std::max(0.0, r.best_value - spectral_radius_oracle(t));
}

}  // namespace specrad
