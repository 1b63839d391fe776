#include "specrad/estimators.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "specrad/error.hpp"
#include "specrad/numrange.hpp"

namespace specrad {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Products performed by one Aluthge transform after its SVD.
constexpr std::size_t kProductsPerTransform = 3;

struct Normalized {
  CMat unit;
  double log_norm;
  bool zero;
};

Normalized normalize(CMat m) {
  require_finite(m, "matrix power");
  const double norm = operator_norm(m);
  if (norm == 0.0) return {std::move(m), kNegInf, true};
  m /= norm;
  return {std::move(m), std::log(norm), false};
}

// Unit-norm product: (a.unit * b.unit) renormalized, logs added.
Normalized multiply(const Normalized& a, const Normalized& b, Budget* budget) {
  if (a.zero || b.zero) {
    return {CMat::Zero(a.unit.rows(), a.unit.cols()), kNegInf, true};
  }
  if (budget) ++budget->matrix_products;
  Normalized prod = normalize(a.unit * b.unit);
  if (!prod.zero) prod.log_norm += a.log_norm + b.log_norm;
  return prod;
}

Normalized binary_power(const Normalized& base, std::size_t k, Budget* budget) {
  Normalized result{};
  bool have_result = false;
  Normalized square = base;
  while (k > 0) {
    if (k & 1u) {
      result = have_result ? multiply(result, square, budget) : square;
      have_result = true;
    }
    k >>= 1u;
    if (k > 0) square = multiply(square, square, budget);
  }
  return result;
}

double root_of_log(double log_value, std::size_t k) {
  if (log_value == kNegInf) return 0.0;
  return std::exp(log_value / static_cast<double>(k));
}

double log_or_neg_inf(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

bool cauchy_converged(const std::vector<TraceEntry>& trace, const ToleranceConfig& tol) {
  if (trace.size() < 2) return false;
  const double last = trace.back().value;
  const double prev = trace[trace.size() - 2].value;
  return std::abs(last - prev) <= tol.rtol * std::abs(last) + tol.atol;
}

void finish(SpectralEstimate& est, const ToleranceConfig& tol) {
  est.value = est.trace.back().value;
  est.converged = cauchy_converged(est.trace, tol);
  est.budget.iterations = est.trace.size();
}

// Shared driver for the power-based estimators: `inner` maps a unit-norm
// power to log of its functional (norm, numerical radius, ...).
template <class Inner>
SpectralEstimate power_estimate(const ComplexMatrix& t, EstimatorMethod method,
                                const PowerSchedule& schedule,
                                const ToleranceConfig& tol, Inner&& inner) {
  tol.validate();
  SpectralEstimate est;
  est.method = method;
  const auto powers = scaled_powers(t, schedule, &est.budget);
  est.trace.reserve(powers.size());
  for (const ScaledPower& p : powers) {
    double log_value = kNegInf;
    if (!p.zero) log_value = inner(p, est.budget) + p.log_norm;
    est.trace.push_back({p.k, root_of_log(log_value, p.k)});
  }
  finish(est, tol);
  return est;
}

}  // namespace

std::string_view to_string(EstimatorMethod m) {
  switch (m) {
    case EstimatorMethod::gelfand:
      return "gelfand";
    case EstimatorMethod::aluthge_iterate:
      return "aluthge_iterate";
    case EstimatorMethod::aluthge_power:
      return "aluthge_power";
    case EstimatorMethod::numrad_power:
      return "numrad_power";
  }
  return "unknown";
}

PowerSchedule::PowerSchedule(std::vector<std::size_t> k_values) : k_(std::move(k_values)) {
  if (k_.empty()) throw InvalidArgument("power schedule must not be empty");
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (k_[i] < 1) throw InvalidArgument("power schedule entries must be positive");
    if (k_[i] > kMaxPower) {
      throw InvalidArgument("power schedule entry " + std::to_string(k_[i]) +
                            " exceeds " + std::to_string(kMaxPower));
    }
    if (i > 0 && k_[i] <= k_[i - 1]) {
      throw InvalidArgument("power schedule must be strictly increasing");
    }
  }
}

PowerSchedule PowerSchedule::doubling(std::size_t k_max) {
  if (k_max < 1 || k_max > kMaxPower) {
    throw InvalidArgument("k_max must lie in [1, " + std::to_string(kMaxPower) + "]");
  }
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k <= k_max; k *= 2) ks.push_back(k);
  return PowerSchedule(std::move(ks));
}

void ToleranceConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) {
    throw InvalidArgument("rtol and atol must be positive");
  }
}

std::vector<ScaledPower> scaled_powers(const ComplexMatrix& t,
                                       const PowerSchedule& schedule, Budget* budget) {
  const Normalized base = normalize(t.data());
  std::vector<ScaledPower> out;
  out.reserve(schedule.k_values().size());
  Normalized current = base;
  std::size_t current_k = 1;
  for (std::size_t k : schedule.k_values()) {
    if (k == current_k) {
      // already there (k == 1 at the start)
    } else if (k == 2 * current_k) {
      current = multiply(current, current, budget);
    } else {
      current = binary_power(base, k, budget);
    }
    current_k = k;
    out.push_back({k, current.unit, current.log_norm, current.zero});
  }
  return out;
}

SpectralEstimate estimate_gelfand(const ComplexMatrix& t, const PowerSchedule& schedule,
                                  const ToleranceConfig& tol) {
  return power_estimate(t, EstimatorMethod::gelfand, schedule, tol,
                        [](const ScaledPower&, Budget&) { return 0.0; });
}

SpectralEstimate estimate_aluthge_iterate(const ComplexMatrix& t, const AluthgeConfig& cfg,
                                          const ToleranceConfig& tol) {
  cfg.validate();
  tol.validate();
  SpectralEstimate est;
  est.method = EstimatorMethod::aluthge_iterate;
  ComplexMatrix current = t;
  est.trace.push_back({0, operator_norm(current)});
  for (std::size_t n = 1; n <= tol.max_iterations; ++n) {
    current = aluthge(current, cfg);
    est.budget.matrix_products += kProductsPerTransform;
    est.trace.push_back({n, operator_norm(current)});
    // The zero matrix is an exact fixed point.
    if (est.trace.back().value == 0.0 || cauchy_converged(est.trace, tol)) break;
  }
  finish(est, tol);
  if (est.value == 0.0) est.converged = true;
  return est;
}

SpectralEstimate estimate_aluthge_power(const ComplexMatrix& t, const AluthgeConfig& cfg,
                                        std::size_t n, const PowerSchedule& schedule,
                                        const ToleranceConfig& tol) {
  cfg.validate();
  return power_estimate(
      t, EstimatorMethod::aluthge_power, schedule, tol,
      [&](const ScaledPower& p, Budget& budget) {
        if (n == 0) return 0.0;  // the unit power has norm one by construction
        const ComplexMatrix iterate = aluthge_iterate(ComplexMatrix(p.unit), cfg, n);
        budget.matrix_products += kProductsPerTransform * n;
        return log_or_neg_inf(operator_norm(iterate));
      });
}

SpectralEstimate estimate_numrad_power(const ComplexMatrix& t, const AluthgeConfig& cfg,
                                       std::size_t n, const PowerSchedule& schedule,
                                       const ToleranceConfig& tol) {
  cfg.validate();
  return power_estimate(
      t, EstimatorMethod::numrad_power, schedule, tol,
      [&](const ScaledPower& p, Budget& budget) {
        const ComplexMatrix iterate = aluthge_iterate(ComplexMatrix(p.unit), cfg, n);
        budget.matrix_products += kProductsPerTransform * n;
        return log_or_neg_inf(numerical_radius(iterate).w);
      });
}

ComplexMatrix rota_scaled(const ComplexMatrix& t, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be a positive finite number");
  }
  return ComplexMatrix(t.data() / (spectral_radius_oracle(t) + epsilon));
}

}  // namespace specrad
