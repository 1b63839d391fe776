// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails. argv[1], if given, is the path of the specrad executable
// used by the determinism check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "specrad/aluthge.hpp"
#include "specrad/cli.hpp"
#include "specrad/estimators.hpp"
#include "specrad/normaloid.hpp"
#include "specrad/numrange.hpp"
#include "specrad/orbitopt.hpp"
#include "test_support.hpp"

using namespace specrad;
using namespace specrad::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const Outcome& o) {
  std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// 200 Ginibre matrices, n = 2..8.
const std::vector<ComplexMatrix>& ensemble() {
  static const std::vector<ComplexMatrix> e = [] {
    std::vector<ComplexMatrix> out;
    for (int i = 0; i < 200; ++i) out.push_back(ginibre(2 + i % 7, 1000 + i));
    return out;
  }();
  return e;
}

std::vector<ComplexMatrix> normal_fixtures() {
  std::vector<ComplexMatrix> out;
  for (int i = 0; i < 4; ++i) out.push_back(normal_random(2 + i, 50 + i));
  for (int i = 0; i < 3; ++i) out.push_back(haar(2 + i, 60 + i));
  out.push_back(random_hermitian(4, 70).as_complex());
  const std::vector<Complex> d = {Complex(2, 1), -1.5, Complex(0, 0.5)};
  out.push_back(ComplexMatrix::diagonal(d));
  return out;
}

// Rank-one nilpotents x y* with y orthogonal to x: the Aluthge transform
// sends them to zero in one step.
std::vector<ComplexMatrix> nilpotent_fixtures() {
  std::vector<ComplexMatrix> out;
  out.push_back(jordan2());
  out.push_back(jordan2().scaled(5.0));
  const CMat q = haar(2, 80).data();
  out.push_back(ComplexMatrix(q * jordan2().data() * q.adjoint()));
  Rng rng(81);
  Eigen::VectorXcd x(4), y(4);
  for (int i = 0; i < 4; ++i) {
    x(i) = Complex(rng.normal(), rng.normal());
    y(i) = Complex(rng.normal(), rng.normal());
  }
  y -= x * (x.dot(y) / x.squaredNorm());
  out.push_back(ComplexMatrix(x * y.adjoint()));
  return out;
}

Outcome spectrum_invariance() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const ComplexMatrix& t : ensemble()) {
    const auto ev = eigenvalues(t);
    for (double lambda : {0.25, 0.5, 0.75}) {
      const ComplexMatrix d = aluthge(t, AluthgeConfig{lambda, std::nullopt});
      worst = std::max(worst, multiset_distance(ev, eigenvalues(d)));
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-6 && secs < 10.0,
          fmt("max eigenvalue mismatch %.3g (tol 1e-6), %.2f s (limit 10 s)", worst, secs)};
}

Outcome norm_monotonicity() {
  double worst_rise = 0.0, worst_below = 0.0;
  for (const ComplexMatrix& t : ensemble()) {
    const double r = spectral_radius_oracle(t);
    for (double lambda : {0.25, 0.5, 0.75}) {
      const IterateTrace tr = iterate_trace(t, AluthgeConfig{lambda, std::nullopt}, 100);
      for (std::size_t k = 0; k < tr.norms.size(); ++k) {
        if (k > 0) worst_rise = std::max(worst_rise, tr.norms[k] - tr.norms[k - 1]);
        worst_below = std::max(worst_below, r - tr.norms[k]);
      }
    }
  }
  return {worst_rise <= 1e-9 && worst_below <= 1e-9,
          fmt("max rise %.3g, max shortfall below r %.3g (tol 1e-9)", worst_rise, worst_below)};
}

Outcome iterate_limit() {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const ComplexMatrix t = ginibre(2 + i % 5, 3000 + i);
    const double r = spectral_radius_oracle(t);
    const IterateTrace tr = iterate_trace(t, {}, 300);
    worst = std::max(worst, (tr.norms[300] - r) / std::max(r, 0.1));
  }
  double worst_fixture = 0.0;
  std::vector<ComplexMatrix> fixtures = normal_fixtures();
  for (const ComplexMatrix& t : nilpotent_fixtures()) fixtures.push_back(t);
  for (const ComplexMatrix& t : fixtures) {
    const IterateTrace tr = iterate_trace(t, {}, 1);
    worst_fixture = std::max(worst_fixture, tr.norms[1] - spectral_radius_oracle(t));
  }
  return {worst <= 0.05 && worst_fixture <= 1e-8,
          fmt("max relative gap at n=300 %.3g (tol 0.05), fixture gap at n=1 %.3g (tol 1e-8)",
              worst, worst_fixture)};
}

Outcome power_sandwich() {
  const PowerSchedule s = PowerSchedule::doubling(1024);
  double worst_low = 0.0, worst_high = 0.0, worst_gelfand = 0.0;
  for (const ComplexMatrix& t : ensemble()) {
    const double r = spectral_radius_oracle(t);
    const SpectralEstimate g = estimate_gelfand(t, s);
    for (std::size_t n : {1, 2}) {
      const SpectralEstimate a = estimate_aluthge_power(t, {}, n, s);
      for (std::size_t i = 0; i < a.trace.size(); ++i) {
        worst_low = std::max(worst_low, r - a.trace[i].value);
        worst_high = std::max(worst_high, a.trace[i].value - g.trace[i].value);
      }
    }
    if (r >= 0.1) worst_gelfand = std::max(worst_gelfand, std::abs(g.value - r) / r);
  }
  return {worst_low <= 1e-9 && worst_high <= 1e-9 && worst_gelfand <= 0.05,
          fmt("max below r %.3g, max above Gelfand %.3g (tol 1e-9), k=1024 Gelfand rel err "
              "%.3g (tol 0.05)",
              worst_low, worst_high, worst_gelfand)};
}

Outcome numrad_chain() {
  const PowerSchedule s = PowerSchedule::doubling(1024);
  double worst_low = 0.0, worst_high = 0.0;
  const auto& e = ensemble();
  for (std::size_t m = 0; m < e.size(); m += 4) {  // every 4th matrix: 50 matrices
    const double r = spectral_radius_oracle(e[m]);
    for (std::size_t n : {1, 2}) {
      const SpectralEstimate a = estimate_aluthge_power(e[m], {}, n, s);
      const SpectralEstimate w = estimate_numrad_power(e[m], {}, n, s);
      for (std::size_t i = 0; i < w.trace.size(); ++i) {
        worst_low = std::max(worst_low, r - w.trace[i].value);
        worst_high = std::max(worst_high, w.trace[i].value - a.trace[i].value);
      }
    }
  }
  const double wj = numerical_radius(jordan2()).w;
  double worst_herm = 0.0;
  for (int i = 0; i < 20; ++i) {
    const HermitianMatrix h = random_hermitian(2 + i % 7, 4000 + i);
    worst_herm = std::max(worst_herm,
                          std::abs(numerical_radius(h.as_complex()).w - hermitian_abs_max(h)));
  }
  const bool ok = worst_low <= 1e-9 && worst_high <= 1e-9 && std::abs(wj - 0.5) <= 1e-8 &&
                  worst_herm <= 1e-9;
  return {ok, fmt("chain violations %.3g / %.3g (tol 1e-9), ", worst_low, worst_high) +
                  fmt("|w(J2) - 0.5| = %.3g (tol 1e-8), Hermitian |w - rho| %.3g (tol 1e-9)",
                      std::abs(wj - 0.5), worst_herm)};
}

// Runs minimize_orbit and tracks the smallest value seen by the observer.
OrbitResult observed(const ComplexMatrix& t, const OrbitObjective& obj, std::size_t budget,
                     double& lowest) {
  OrbitSearchOptions opts;
  opts.budget = budget;
  opts.observer = [&](std::size_t, double v) { lowest = std::min(lowest, v); };
  return minimize_orbit(t, obj, opts);
}

Outcome orbit_bounds() {
  const auto t0 = Clock::now();
  const OrbitObjective obj{};
  double worst_below = 0.0;
  for (const ComplexMatrix& t : ensemble()) {
    double lowest = 1e300;
    observed(t, obj, 1000, lowest);
    worst_below = std::max(worst_below, spectral_radius_oracle(t) - lowest);
  }
  double worst_normal = 0.0;
  for (const ComplexMatrix& t : normal_fixtures()) {
    double lowest = 1e300;
    const OrbitResult res = observed(t, obj, 5000, lowest);
    const double r = spectral_radius_oracle(t);
    worst_below = std::max(worst_below, r - lowest);
    worst_normal = std::max(worst_normal, std::abs(res.best_value - r));
  }
  double worst_reach = 0.0;
  for (const ComplexMatrix& t : {jordan2(), unipotent2()}) {
    double lowest = 1e300;
    const OrbitResult res = observed(t, obj, 5000, lowest);
    const double r = spectral_radius_oracle(t);
    worst_below = std::max(worst_below, r - lowest);
    worst_reach = std::max(worst_reach, res.best_value - r);
  }
  const double secs = seconds_since(t0);
  const bool ok =
      worst_below <= 1e-6 && worst_normal <= 1e-6 && worst_reach <= 0.05 && secs < 60.0;
  return {ok, fmt("max shortfall below r %.3g (tol 1e-6), normal |best - r| %.3g (tol 1e-6), ",
                  worst_below, worst_normal) +
                  fmt("J2/unipotent best - r %.3g (tol 0.05), %.1f s (limit 60 s)", worst_reach,
                      secs)};
}

Outcome rota() {
  const OrbitObjective obj{ObjectiveKind::plain_norm, 0.5, 1, std::nullopt};
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix t = rota_scaled(ginibre(2 + i % 7, 5000 + i), 0.1);
    worst = std::max(worst, minimize_orbit(t, obj, 5000, 8.0, 1).best_value);
  }
  return {worst <= 1.05, fmt("max best_value %.4f (limit 1.05)", worst)};
}

Outcome rotated_objective() {
  double worst_below = 0.0;
  for (const ComplexMatrix& t : ensemble()) {
    const OrbitObjective obj{ObjectiveKind::rotated_realpart_norm, 0.5, 1, peripheral_angle(t)};
    double lowest = 1e300;
    observed(t, obj, 200, lowest);
    worst_below = std::max(worst_below, spectral_radius_oracle(t) - lowest);
  }
  double worst_normal = 0.0;
  for (const ComplexMatrix& t : normal_fixtures()) {
    const OrbitObjective obj{ObjectiveKind::rotated_realpart_norm, 0.5, 1, peripheral_angle(t)};
    double lowest = 1e300;
    const OrbitResult res = observed(t, obj, 5000, lowest);
    const double r = spectral_radius_oracle(t);
    worst_below = std::max(worst_below, r - lowest);
    worst_normal = std::max(worst_normal, res.best_value - r);
  }
  // Dominance at random generators, pairwise against the unrotated norm.
  double worst_dom = -1e300;
  Rng rng(7);
  for (std::size_t m = 0; m < ensemble().size(); ++m) {
    const ComplexMatrix& t = ensemble()[m];
    const Angle theta = peripheral_angle(t);
    for (int j = 0; j < 5; ++j) {
      Eigen::VectorXd c(t.dim() * t.dim());
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = 0.5 * rng.normal();
      const HermitianParams a(t.dim(), c);
      const double re =
          evaluate_objective(t, {ObjectiveKind::rotated_realpart_norm, 0.5, 1, theta}, a);
      const double full = evaluate_objective(t, {ObjectiveKind::delta_norm, 0.5, 1, std::nullopt}, a);
      worst_dom = std::max(worst_dom, re - full);
    }
  }
  const bool ok = worst_below <= 1e-6 && worst_normal <= 0.05 && worst_dom <= 1e-9;
  return {ok, fmt("max shortfall below r %.3g (tol 1e-6), normal best - r %.3g (tol 0.05), "
                  "max ||Re|| - ||.|| %.3g (tol 1e-9)",
                  worst_below, worst_normal, worst_dom)};
}

Outcome normaloid_suite() {
  int wrong_class = 0, disagree = 0;
  for (const ComplexMatrix& t : normal_fixtures()) {
    const NormaloidVerdict v = verify_characterizations(t);
    if (!v.is_normaloid) ++wrong_class;
    for (const auto& w : v.witnesses) disagree += w.holds ? 0 : 1;
  }
  std::vector<ComplexMatrix> non = nilpotent_fixtures();
  non.push_back(unipotent2());
  non.push_back(generate({EnsembleKind::jordan, 3, 0, {0.5, 0.5}}));
  non.push_back(generate({EnsembleKind::nilpotent_shift, 4, 0, {}}));
  non.push_back(generate({EnsembleKind::unipotent, 3, 0, {1.0}}));
  for (const ComplexMatrix& t : non) {
    const NormaloidVerdict v = verify_characterizations(t);
    if (v.is_normaloid) ++wrong_class;
    for (const auto& w : v.witnesses) disagree += w.holds ? 0 : 1;
  }
  const NormaloidVerdict j = verify_characterizations(jordan2());
  bool witness_ok = false;
  for (const auto& w : j.witnesses) {
    if (w.which == Characterization::cor24_power_norm) {
      witness_ok = w.witness_k == std::size_t{2} && w.evidence == 0.0 &&
                   std::abs(w.reference - 1.0) <= 1e-12;
    }
  }
  return {wrong_class == 0 && disagree == 0 && witness_ok,
          fmt("misclassified %.0f, disagreeing checks %.0f, J2 power witness k=2 ", wrong_class,
              disagree) +
              (witness_ok ? "ok" : "wrong")};
}

Outcome equivariance() {
  double worst_unitary = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index n = 2 + i % 7;
    const ComplexMatrix t = ginibre(n, 6000 + i);
    const CMat q = haar(n, 7000 + i).data();
    const CMat lhs = aluthge(ComplexMatrix(q * t.data() * q.adjoint())).data();
    const CMat rhs = q * aluthge(t).data() * q.adjoint();
    worst_unitary = std::max(worst_unitary, max_abs_diff(lhs, rhs));
  }
  ToleranceConfig fixed;
  fixed.rtol = 1e-300;
  fixed.atol = 1e-300;
  fixed.max_iterations = 60;
  const PowerSchedule s = PowerSchedule::doubling(256);
  double worst_scale = 0.0;
  const auto diff = [](double got, double want) {
    return want == 0.0 ? std::abs(got) : std::abs(got - want) / want;
  };
  // The iterate estimator may stop at different n once consecutive norms
  // coincide exactly, so compare the common prefix and the final values.
  const auto rel = [&](const SpectralEstimate& base, const SpectralEstimate& scaled, double c) {
    for (std::size_t i = 0; i < std::min(base.trace.size(), scaled.trace.size()); ++i) {
      worst_scale = std::max(worst_scale, diff(scaled.trace[i].value, c * base.trace[i].value));
    }
    worst_scale = std::max(worst_scale, diff(scaled.value, c * base.value));
  };
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix t = ginibre(2 + i % 5, 8000 + i);
    for (double c : {0.37, 2.5, 1000.0}) {
      const ComplexMatrix ct = t.scaled(c);
      rel(estimate_gelfand(t, s), estimate_gelfand(ct, s), c);
      rel(estimate_aluthge_iterate(t, {}, fixed), estimate_aluthge_iterate(ct, {}, fixed), c);
      rel(estimate_aluthge_power(t, {}, 1, s), estimate_aluthge_power(ct, {}, 1, s), c);
      rel(estimate_numrad_power(t, {}, 1, s), estimate_numrad_power(ct, {}, 1, s), c);
    }
  }
  return {worst_unitary <= 1e-9 && worst_scale <= 1e-9,
          fmt("unitary max abs diff %.3g (tol 1e-9), scaling max rel diff %.3g (tol 1e-9)",
              worst_unitary, worst_scale)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism(const char* exe) {
  const std::string args =
      " ensemble --kind ginibre --dim 4 --count 24 --seed 42 --run compare --k-max 64";
  std::vector<std::string> outputs;
  if (exe != nullptr) {
    const auto dir = std::filesystem::temp_directory_path();
    for (int run = 0; run < 2; ++run) {
      const auto path = dir / ("specrad_acceptance_det_" + std::to_string(run) + ".csv");
      const std::string cmd = std::string("\"") + exe + "\"" + args + " > \"" + path.string() + "\"";
      if (std::system(cmd.c_str()) != 0) return {false, "CLI run failed: " + cmd};
      outputs.push_back(slurp(path));
    }
  } else {
    std::vector<std::string> argv = {"specrad"};
    std::istringstream is(args);
    for (std::string w; is >> w;) argv.push_back(w);
    for (int run = 0; run < 2; ++run) {
      std::ostringstream out, err;
      if (run_cli(argv, out, err) != 0) return {false, "in-process CLI run failed"};
      outputs.push_back(out.str());
    }
  }
  const bool same = outputs[0] == outputs[1] && !outputs[0].empty();
  return {same, fmt("%.0f bytes per run, ", static_cast<double>(outputs[0].size())) +
                    (same ? "byte-identical" : "outputs differ") +
                    (exe ? " (separate processes)" : " (in-process)")};
}

}  // namespace

int main(int argc, char** argv) {
  const char* exe = argc > 1 ? argv[1] : nullptr;
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, spectrum_invariance}, {2, norm_monotonicity}, {3, iterate_limit},
      {4, power_sandwich},      {5, numrad_chain},      {6, orbit_bounds},
      {7, rota},                {8, rotated_objective}, {9, normaloid_suite},
      {10, equivariance},       {11, [exe] { return determinism(exe); }},
  };
  for (const auto& [id, fn] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    o.detail += fmt(" [%.1f s]", seconds_since(t0));
    report(id, o);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
