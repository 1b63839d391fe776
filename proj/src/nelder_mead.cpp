#include "specrad/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "specrad/error.hpp"

namespace specrad {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opts,
                             const std::function<void(Eigen::VectorXd&)>& project) {
  const Eigen::Index d = x0.size();
  if (d < 1) throw InvalidArgument("Nelder-Mead needs at least one coordinate");
  if (opts.max_evaluations < 1) throw InvalidArgument("Nelder-Mead needs a positive budget");

  const double dd = static_cast<double>(d);
  const double alpha = 1.0;
  const double gamma = d > 1 ? 1.0 + 2.0 / dd : 2.0;
  const double rho = d > 1 ? 0.75 - 0.5 / dd : 0.5;
  const double sigma = d > 1 ? 1.0 - 1.0 / dd : 0.5;

  NelderMeadResult res;
  auto eval = [&](Eigen::VectorXd& x) {
    if (project) project(x);
    ++res.evaluations;
    return f(x);
  };
  auto out_of_budget = [&] { return res.evaluations >= opts.max_evaluations; };

  std::vector<Eigen::VectorXd> pts;
  std::vector<double> vals;
  pts.reserve(static_cast<std::size_t>(d) + 1);
  pts.push_back(x0);
  vals.push_back(eval(pts.back()));
  for (Eigen::Index i = 0; i < d && !out_of_budget(); ++i) {
    Eigen::VectorXd x = x0;
    x(i) += opts.initial_step;
    vals.push_back(eval(x));
    pts.push_back(std::move(x));
  }

  std::vector<std::size_t> order(pts.size());
  auto sort_simplex = [&] {
    order.resize(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  };

  while (!out_of_budget() && pts.size() == static_cast<std::size_t>(d) + 1) {
    sort_simplex();
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double f_spread = 0.0;
    double x_spread = 0.0;
    for (std::size_t i : order) {
      f_spread = std::max(f_spread, std::abs(vals[i] - vals[best]));
      x_spread = std::max(x_spread, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
    }
    if (f_spread <= opts.f_tol * (std::abs(vals[best]) + 1e-300) &&
        x_spread <= opts.x_tol) {
      res.converged = true;
      break;
    }
    if (x_spread == 0.0) {  // collapsed simplex
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= dd;

    Eigen::VectorXd reflected = centroid + alpha * (centroid - pts[worst]);
    const double f_reflected = eval(reflected);

    if (f_reflected < vals[best]) {
      if (out_of_budget()) {
        pts[worst] = std::move(reflected);
        vals[worst] = f_reflected;
        break;
      }
      Eigen::VectorXd expanded = centroid + gamma * (reflected - centroid);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        pts[worst] = std::move(expanded);
        vals[worst] = f_expanded;
      } else {
        pts[worst] = std::move(reflected);
        vals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < vals[second_worst]) {
      pts[worst] = std::move(reflected);
      vals[worst] = f_reflected;
      continue;
    }
    if (out_of_budget()) break;

    const bool outside = f_reflected < vals[worst];
    Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + rho * (reflected - centroid))
                : Eigen::VectorXd(centroid + rho * (pts[worst] - centroid));
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(f_reflected, vals[worst])) {
      pts[worst] = std::move(contracted);
      vals[worst] = f_contracted;
      continue;
    }
    if (outside && f_reflected < vals[worst]) {
      pts[worst] = std::move(reflected);
      vals[worst] = f_reflected;
    }

    // shrink toward the best vertex
    for (std::size_t i = 0; i < pts.size() && !out_of_budget(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + sigma * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  res.x = pts[best];
  res.value = vals[best];
  return res;
}

}  // namespace specrad
