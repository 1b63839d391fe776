#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace specrad {

struct NelderMeadOptions {
  std::size_t max_evaluations = 1000;
  double initial_step = 1.0;
  /// Stop once the simplex values agree to f_tol * (|best| + 1e-300) and
  /// the vertices to x_tol (max-norm distance from the best vertex).
  double f_tol = 1e-13;
  double x_tol = 1e-10;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex minimization with dimension-adaptive coefficients
/// (reflection 1, expansion 1 + 2/d, contraction 3/4 - 1/(2d),
/// shrink 1 - 1/d). `project`, when given, maps every trial point back into
/// the feasible set before it is evaluated. The objective is called at most
/// max_evaluations times.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opts,
                             const std::function<void(Eigen::VectorXd&)>& project = {});

}  // namespace specrad
