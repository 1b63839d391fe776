#include "specrad/normaloid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specrad/aluthge.hpp"
#include "specrad/error.hpp"
#include "specrad/estimators.hpp"
#include "specrad/numrange.hpp"
#include "specrad/orbitopt.hpp"

namespace specrad {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

CharacterizationCheck orbit_check(const ComplexMatrix& t, Characterization which,
                                  const OrbitObjective& obj, const NormaloidVerdict& base,
                                  const CharacterizationOptions& opts) {
  OrbitSearchOptions search;
  search.budget = opts.budget;
  search.radius = opts.radius;
  search.seed = opts.seed;
  const OrbitResult found = minimize_orbit(t, obj, search);

  CharacterizationCheck check;
  check.which = which;
  check.evidence = found.best_value;
  check.reference = base.norm;
  check.refuted = found.best_value < base.norm * (1.0 - opts.decision_rtol);
  check.holds = check.refuted != base.is_normaloid;
  return check;
}

CharacterizationCheck power_norm_check(const ComplexMatrix& t, const NormaloidVerdict& base,
                                       const CharacterizationOptions& opts) {
  struct Sample {
    std::size_t k;
    double log_value;
    double log_reference;
    double deviation;
  };
  const AluthgeConfig cfg{opts.lambda, std::nullopt};
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double log_norm = base.norm > 0.0 ? std::log(base.norm) : neg_inf;

  std::optional<Sample> first_failure;
  std::optional<Sample> largest;
  for (const ScaledPower& p : scaled_powers(t, PowerSchedule(opts.powers))) {
    Sample s{p.k, neg_inf, static_cast<double>(p.k) * log_norm, 0.0};
    if (!p.zero) {
      const double unit_norm =
          operator_norm(aluthge_iterate(ComplexMatrix(p.unit), cfg, opts.n));
      if (unit_norm > 0.0) s.log_value = std::log(unit_norm) + p.log_norm;
    }
    const bool both_zero = s.log_value == neg_inf && s.log_reference == neg_inf;
    s.deviation = both_zero ? 0.0 : std::abs(std::expm1(s.log_value - s.log_reference));
    if (s.deviation > opts.decision_rtol && !first_failure) first_failure = s;
    if (!largest || s.deviation > largest->deviation) largest = s;
  }

  const Sample& report = first_failure ? *first_failure : *largest;
  CharacterizationCheck check;
  check.which = Characterization::cor24_power_norm;
  check.refuted = first_failure.has_value();
  check.holds = check.refuted != base.is_normaloid;
  check.witness_k = report.k;
  check.evidence = std::exp(report.log_value);
  check.reference = std::exp(report.log_reference);
  if (!std::isfinite(check.evidence) || !std::isfinite(check.reference)) {
    // ||T||^k overflows: report the ratio instead
    check.evidence = std::exp(report.log_value - report.log_reference);
    check.reference = 1.0;
  }
  return check;
}

}  // namespace

std::string_view to_string(Characterization c) {
  switch (c) {
    case Characterization::cor22_aluthge_orbit:
      return "cor22_aluthge_orbit";
    case Characterization::cor23_plain_orbit:
      return "cor23_plain_orbit";
    case Characterization::cor24_power_norm:
      return "cor24_power_norm";
    case Characterization::cor31_rotated_realpart:
      return "cor31_rotated_realpart";
  }
  return "unknown";
}

NormaloidVerdict normaloid_check(const ComplexMatrix& t, double decision_rtol) {
  if (!(decision_rtol > 0.0)) throw InvalidArgument("decision tolerance must be > 0");
  NormaloidVerdict v;
  v.r = spectral_radius_oracle(t);
  v.norm = operator_norm(t);
  v.relative_gap = std::max(0.0, v.norm - v.r) / std::max(v.norm, kTiny);
  v.is_normaloid = v.relative_gap <= decision_rtol;
  return v;
}

NormaloidVerdict verify_characterizations(const ComplexMatrix& t,
                                          const CharacterizationOptions& opts) {
  if (opts.budget < 1) throw InvalidArgument("characterization budget must be >= 1");
  NormaloidVerdict v = normaloid_check(t, opts.decision_rtol);

  OrbitObjective delta{ObjectiveKind::delta_norm, opts.lambda, 1, std::nullopt};
  v.witnesses.push_back(
      orbit_check(t, Characterization::cor22_aluthge_orbit, delta, v, opts));

  OrbitObjective plain{ObjectiveKind::plain_norm, opts.lambda, 0, std::nullopt};
  v.witnesses.push_back(orbit_check(t, Characterization::cor23_plain_orbit, plain, v, opts));

  v.witnesses.push_back(power_norm_check(t, v, opts));

  OrbitObjective rotated{ObjectiveKind::rotated_realpart_numrad, opts.lambda, opts.n,
                         peripheral_angle(t)};
  v.witnesses.push_back(
      orbit_check(t, Characterization::cor31_rotated_realpart, rotated, v, opts));
  return v;
}

NormaloidVerdict verify_characterizations(const ComplexMatrix& t, std::size_t budget,
                                          std::uint64_t seed) {
  CharacterizationOptions opts;
  opts.budget = budget;
  opts.seed = seed;
  return verify_characterizations(t, opts);
}

}  // namespace specrad
