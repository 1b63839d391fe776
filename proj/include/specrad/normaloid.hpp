#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "specrad/matkernel.hpp"

namespace specrad {

enum class Characterization {
  cor22_aluthge_orbit,     // ||T|| <= ||Delta(X T X^-1)|| for all invertible X
  cor23_plain_orbit,       // ||T|| <= ||X T X^-1|| for all invertible X
  cor24_power_norm,        // ||T||^k = ||Delta(T^k)|| for all k
  cor31_rotated_realpart,  // ||T|| <= w(Re(Delta^n(e^{i theta} X T X^-1)))
};

std::string_view to_string(Characterization c);

struct CharacterizationCheck {
  Characterization which = Characterization::cor22_aluthge_orbit;
  /// The empirical test agrees with the oracle verdict.
  bool holds = false;
  /// A witness was found showing the characterization's inequality/equality
  /// fails, i.e. evidence that T is not normaloid.
  bool refuted = false;
  /// Orbit checks: the smallest objective value found. cor24: ||Delta(T^k)||
  /// at the reported k.
  double evidence = 0.0;
  /// The value the evidence is compared against (||T|| or ||T||^k).
  double reference = 0.0;
  /// cor24 only: the first power k where the equality fails, or the k with the
  /// largest deviation when none fails.
  std::optional<std::size_t> witness_k;
};

struct NormaloidVerdict {
  bool is_normaloid = false;
  double r = 0.0;
  double norm = 0.0;
  double relative_gap = 0.0;  // (norm - r) / max(norm, tiny)
  std::vector<CharacterizationCheck> witnesses;
};

struct CharacterizationOptions {
  std::size_t budget = 5000;  // per orbit-based check
  std::uint64_t seed = 1;
  double radius = 8.0;
  double decision_rtol = 1e-8;
  double lambda = 0.5;
  std::size_t n = 1;
  /// Powers tested by the cor24 check. k = 1 is left out: it is the X = I
  /// instance of the cor22 check.
  std::vector<std::size_t> powers = {2, 4, 8, 16, 32};
};

/// Oracle classification: r(T) against ||T|| at relative tolerance decision_rtol.
NormaloidVerdict normaloid_check(const ComplexMatrix& t, double decision_rtol = 1e-8);

/// normaloid_check plus the four empirical characterization tests.
///
/// The orbit-based checks are one-sided: finding a similarity that pushes the
/// objective below ||T|| refutes normaloidity, while failing to find one
/// within the budget is only consistent with it.
NormaloidVerdict verify_characterizations(const ComplexMatrix& t,
                                          const CharacterizationOptions& opts = {});
NormaloidVerdict verify_characterizations(const ComplexMatrix& t, std::size_t budget,
                                          std::uint64_t seed);

}  // namespace specrad
