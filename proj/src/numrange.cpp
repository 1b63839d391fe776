#include "specrad/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specrad/error.hpp"

namespace specrad {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
constexpr double kPeripheralRtol = 1e-9;

struct Sample {
  double theta;
  double value;
};

// Golden-section maximization of the support function on [lo, hi].
Sample golden_maximize(const CMat& t, double lo, double hi, double width_tol) {
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = support_value(t, x1);
  double f2 = support_value(t, x2);
  for (int iter = 0; iter < 200 && (b - a) > width_tol; ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = support_value(t, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = support_value(t, x1);
    }
  }
  return f1 >= f2 ? Sample{x1, f1} : Sample{x2, f2};
}

}  // namespace

Angle::Angle(double radians) {
  if (!std::isfinite(radians)) throw InvalidArgument("angle must be finite");
  double t = std::fmod(radians, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  theta_ = t;
}

Complex Angle::phase() const { return std::polar(1.0, theta_); }

HermitianMatrix real_part(const ComplexMatrix& s) {
  return HermitianMatrix::average_with_adjoint(s.data());
}

double support_value(const CMat& t, double theta) {
  const CMat rotated = t * std::polar(1.0, theta);
  return lambda_max(HermitianMatrix::average_with_adjoint(rotated));
}

NumericalRadiusResult numerical_radius(const ComplexMatrix& t,
                                       const NumericalRadiusOptions& opts) {
  const double norm = operator_norm(t);
  const double scale = std::max(1.0, norm);
  const double tol = opts.tol ? *opts.tol : 1e-10 * scale;
  if (!(tol > 0.0)) throw InvalidArgument("numerical radius tolerance must be > 0");
  if (opts.grid_points < 3) throw InvalidArgument("numerical radius grid needs >= 3 points");

  const std::size_t m = opts.grid_points;
  const double h = kTwoPi / static_cast<double>(m);
  std::vector<double> grid(m);
  for (std::size_t i = 0; i < m; ++i) {
    grid[i] = support_value(t.data(), h * static_cast<double>(i));
  }
  Sample best{0.0, grid[0]};
  for (std::size_t i = 1; i < m; ++i) {
    if (grid[i] > best.value) best = {h * static_cast<double>(i), grid[i]};
  }

  // Within a bracket the support function rises at most norm * h / 2 above
  // its best grid value, so brackets below this cut cannot hold the maximum.
  const double cut = best.value - norm * h;
  const double width_tol = tol / scale;
  for (std::size_t i = 0; i < m; ++i) {
    const double prev = grid[(i + m - 1) % m];
    const double next = grid[(i + 1) % m];
    if (grid[i] < prev || grid[i] < next || grid[i] < cut) continue;
    const double center = h * static_cast<double>(i);
    const Sample s = golden_maximize(t.data(), center - h, center + h, width_tol);
    if (s.value > best.value) best = s;
  }

  NumericalRadiusResult out;
  out.argmax_angle = Angle(best.theta).radians();
  out.w = support_value(t.data(), out.argmax_angle);
  if (opts.boundary_samples > 0) out.boundary_samples = fov_boundary(t, opts.boundary_samples);
  return out;
}

NumericalRadiusResult numerical_radius(const ComplexMatrix& t, double tol) {
  NumericalRadiusOptions opts;
  opts.tol = tol;
  return numerical_radius(t, opts);
}

std::vector<Complex> fov_boundary(const ComplexMatrix& t, std::size_t samples) {
  if (samples < 3) throw InvalidArgument("fov boundary needs at least 3 samples");
  std::vector<Complex> points;
  points.reserve(samples);
  const double h = kTwoPi / static_cast<double>(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const CMat rotated = t.data() * std::polar(1.0, h * static_cast<double>(j));
    const auto eig = hermitian_eig(HermitianMatrix::average_with_adjoint(rotated));
    const Eigen::VectorXcd x = eig.eigenvectors->col(0);
    points.push_back(x.dot(t.data() * x));  // dot conjugates its left operand
  }
  return points;
}

Angle peripheral_angle(const ComplexMatrix& t) {
  const auto values = eigenvalues(t);
  const double r = std::abs(values.front());
  if (r == 0.0) return Angle(0.0);
  const Complex* pick = nullptr;
  double pick_arg = 0.0;
  for (const Complex& z : values) {
    if (std::abs(z) < r * (1.0 - kPeripheralRtol)) continue;
    const double a = Angle(std::arg(z)).radians();
    if (pick == nullptr || a < pick_arg) {
      pick = &z;
      pick_arg = a;
    }
  }
  return Angle(-pick_arg);
}

double rotated_realpart_norm(const CMat& t, Angle theta) {
  return hermitian_abs_max(HermitianMatrix::average_with_adjoint(t * theta.phase()));
}

double rotated_realpart_norm(const ComplexMatrix& t, Angle theta) {
  return rotated_realpart_norm(t.data(), theta);
}

}  // namespace specrad
