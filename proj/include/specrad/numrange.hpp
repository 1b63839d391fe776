#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "specrad/matkernel.hpp"

namespace specrad {

/// Angle in radians, normalized into [0, 2pi).
class Angle {
 public:
  Angle() = default;
  explicit Angle(double radians);

  double radians() const noexcept { return theta_; }
  Complex phase() const;  // e^{i theta}

 private:
  double theta_ = 0.0;
};

struct NumericalRadiusResult {
  double w = 0.0;
  double argmax_angle = 0.0;  // in [0, 2pi)
  std::optional<std::vector<Complex>> boundary_samples;
};

struct NumericalRadiusOptions {
  /// Absolute accuracy target; defaults to 1e-10 * max(1, ||T||).
  std::optional<double> tol;
  std::size_t grid_points = 720;
  /// When nonzero, also fill boundary_samples with this many points.
  std::size_t boundary_samples = 0;
};

/// (S + S*) / 2.
HermitianMatrix real_part(const ComplexMatrix& s);

/// lambda_max(Re(e^{i theta} T)): the support function of W(T) in direction
/// -theta. Its maximum over theta is the numerical radius.
double support_value(const CMat& t, double theta);

/// w(T) = max over theta of lambda_max(Re(e^{i theta} T)).
///
/// A uniform grid locates candidate maxima; every grid local maximum that
/// could still beat the grid best (given the ||T|| Lipschitz bound of the
/// support function) is refined by golden-section search until its bracket is
/// narrower than tol / max(1, ||T||).
NumericalRadiusResult numerical_radius(const ComplexMatrix& t,
                                       const NumericalRadiusOptions& opts = {});
NumericalRadiusResult numerical_radius(const ComplexMatrix& t, double tol);

/// Points x*Tx for the top eigenvector x of Re(e^{i theta_j} T) on a uniform
/// angle grid. They lie on the boundary of W(T) and their convex hull is an
/// inner approximation of W(T).
std::vector<Complex> fov_boundary(const ComplexMatrix& t, std::size_t samples);

/// theta = -arg(z) for a peripheral eigenvalue z (|z| = r(T)); among several,
/// the one with the smallest argument in [0, 2pi). Zero for r(T) = 0.
Angle peripheral_angle(const ComplexMatrix& t);

/// ||Re(e^{i theta} T)||.
double rotated_realpart_norm(const ComplexMatrix& t, Angle theta);
double rotated_realpart_norm(const CMat& t, Angle theta);

}  // namespace specrad
