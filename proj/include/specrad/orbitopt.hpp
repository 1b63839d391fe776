#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "specrad/matkernel.hpp"
#include "specrad/numrange.hpp"

namespace specrad {

enum class ObjectiveKind {
  delta_norm,               // ||Delta^n(e^A T e^-A)||
  delta_numrad,             // w(Delta^n(e^A T e^-A))
  rotated_realpart_norm,    // ||Re(Delta^n(e^{i theta} e^A T e^-A))||
  rotated_realpart_numrad,  // w(Re(Delta^n(e^{i theta} e^A T e^-A)))
  plain_norm,               // ||e^A T e^-A||
};

std::string_view to_string(ObjectiveKind k);
bool is_rotated(ObjectiveKind k);

struct OrbitObjective {
  ObjectiveKind kind = ObjectiveKind::delta_norm;
  double lambda = 0.5;
  std::size_t n = 1;
  /// Required exactly for the rotated kinds.
  std::optional<Angle> theta;

  void validate() const;
};

/// Real coordinates of a Hermitian generator: the n diagonal entries, then
/// (re, im) for each strict-upper entry in row-major order. n^2 reals total.
class HermitianParams {
 public:
  explicit HermitianParams(Eigen::Index dim);
  HermitianParams(Eigen::Index dim, Eigen::VectorXd coords);

  static HermitianParams from_matrix(const HermitianMatrix& a);

  Eigen::Index dim() const noexcept { return dim_; }
  const Eigen::VectorXd& coords() const noexcept { return coords_; }

  HermitianMatrix materialize() const;
  /// Frobenius norm of the materialized matrix (off-diagonal pairs count twice).
  double frobenius_norm() const;

 private:
  Eigen::Index dim_;
  Eigen::VectorXd coords_;
};

/// Frobenius norm of the Hermitian matrix encoded by raw coordinates.
double hermitian_coords_norm(const Eigen::VectorXd& coords, Eigen::Index dim);

struct OrbitResult {
  double best_value = 0.0;
  HermitianParams best_A{1};
  std::size_t evaluations = 0;
  bool boundary_hit = false;  // ||best_A||_F within 1% of the radius bound
  std::vector<std::pair<std::size_t, double>> history;  // (evaluation, best so far)
};

struct OrbitSearchOptions {
  std::size_t budget = 5000;
  double radius = 8.0;
  std::uint64_t seed = 1;
  std::size_t restarts = 4;  // random starts in addition to A = 0
  /// Called with (evaluation index, value) for every objective evaluation.
  std::function<void(std::size_t, double)> observer;
};

/// Objective value at generator A: Delta^n of the conjugate e^A T e^-A (after
/// the optional rotation), then the norm or numerical radius that `kind` asks for.
double evaluate_objective(const ComplexMatrix& t, const OrbitObjective& obj,
                          const HermitianParams& a);

/// Minimizes the objective over Hermitian A with ||A||_F <= radius.
///
/// Runs Nelder-Mead from A = 0 and from `restarts` Gaussian starting points
/// (scale radius / 10, seeded). Each start gets an equal share of what is left
/// of the budget and restarts its simplex at its own optimum while that keeps
/// improving. Trial points outside the ball are scaled back onto it.
OrbitResult minimize_orbit(const ComplexMatrix& t, const OrbitObjective& obj,
                           const OrbitSearchOptions& opts);
OrbitResult minimize_orbit(const ComplexMatrix& t, const OrbitObjective& obj,
                           std::size_t budget, double radius, std::uint64_t seed);

/// max(0, best_value - r(T)).
double orbit_gap(const ComplexMatrix& t, const OrbitObjective& obj, std::size_t budget,
                 double radius, std::uint64_t seed);

}  // namespace specrad
