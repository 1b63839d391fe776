#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "specrad/aluthge.hpp"
#include "specrad/matkernel.hpp"

namespace specrad {

enum class EstimatorMethod { gelfand, aluthge_iterate, aluthge_power, numrad_power };

std::string_view to_string(EstimatorMethod m);

struct Budget {
  std::size_t iterations = 0;
  std::size_t matrix_products = 0;
};

struct TraceEntry {
  std::size_t index = 0;  // k for power methods, n for the iterate method
  double value = 0.0;
};

struct SpectralEstimate {
  double value = 0.0;  // always trace.back().value
  EstimatorMethod method = EstimatorMethod::gelfand;
  std::vector<TraceEntry> trace;
  bool converged = false;
  Budget budget;
};

/// Strictly increasing positive exponents, none above kMaxPower.
class PowerSchedule {
 public:
  static constexpr std::size_t kMaxPower = 4096;

  explicit PowerSchedule(std::vector<std::size_t> k_values);

  /// 1, 2, 4, ..., largest power of two not above k_max.
  static PowerSchedule doubling(std::size_t k_max = 1024);

  const std::vector<std::size_t>& k_values() const noexcept { return k_; }

 private:
  std::vector<std::size_t> k_;
};

struct ToleranceConfig {
  double rtol = 1e-6;
  double atol = 1e-12;
  std::size_t max_iterations = 1000;

  void validate() const;
};

/// T^k stored as a unit-norm direction plus log ||T^k||, so high powers of
/// matrices with ||T|| > 1 never overflow.
struct ScaledPower {
  std::size_t k = 0;
  CMat unit;              // T^k / ||T^k||; zero matrix if T^k == 0
  double log_norm = 0.0;  // log ||T^k||; -inf if T^k == 0
  bool zero = false;
};

/// Scaled powers of t for every k in the schedule. Consecutive doublings reuse
/// the previous power (one squaring); other steps use binary exponentiation.
std::vector<ScaledPower> scaled_powers(const ComplexMatrix& t,
                                       const PowerSchedule& schedule,
                                       Budget* budget = nullptr);

/// Trace (k, ||T^k||^{1/k}).
SpectralEstimate estimate_gelfand(const ComplexMatrix& t,
                                  const PowerSchedule& schedule = PowerSchedule::doubling(),
                                  const ToleranceConfig& tol = {});

/// Trace (n, ||Delta^n(T)||), stopped on a Cauchy-style test or max_iterations.
SpectralEstimate estimate_aluthge_iterate(const ComplexMatrix& t,
                                          const AluthgeConfig& cfg = {},
                                          const ToleranceConfig& tol = {});

/// Trace (k, ||Delta^n(T^k)||^{1/k}). Delta^n is applied to the unit-norm
/// power and the log-norm added back, since Delta(cS) = c Delta(S) for c > 0.
SpectralEstimate estimate_aluthge_power(const ComplexMatrix& t, const AluthgeConfig& cfg,
                                        std::size_t n,
                                        const PowerSchedule& schedule = PowerSchedule::doubling(),
                                        const ToleranceConfig& tol = {});

/// Trace (k, w(Delta^n(T^k))^{1/k}), with the same positive-scaling trick.
SpectralEstimate estimate_numrad_power(const ComplexMatrix& t, const AluthgeConfig& cfg,
                                       std::size_t n,
                                       const PowerSchedule& schedule = PowerSchedule::doubling(),
                                       const ToleranceConfig& tol = {});

/// T / (r(T) + epsilon); spectral radius strictly below one.
ComplexMatrix rota_scaled(const ComplexMatrix& t, double epsilon);

}  // namespace specrad
