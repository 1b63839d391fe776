#include "specrad/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string_view>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "specrad/aluthge.hpp"
#include "specrad/ensemble.hpp"
#include "specrad/error.hpp"
#include "specrad/estimators.hpp"
#include "specrad/matrix_io.hpp"
#include "specrad/normaloid.hpp"
#include "specrad/numrange.hpp"
#include "specrad/orbitopt.hpp"
#include "specrad/serialize.hpp"

namespace specrad {

namespace {

struct Options {
  std::string command;
  std::string matrix;
  // estimate / compare
  std::string method;
  double lambda = 0.5;
  std::size_t n = 1;
  std::size_t k_max = 1024;
  double rtol = 1e-6;
  std::size_t max_iters = 1000;
  bool json = false;
  bool csv = false;
  // orbit
  std::string objective;
  std::string theta = "auto";
  std::size_t budget = 5000;
  double radius = 8.0;
  std::uint64_t seed = 1;
  // trace
  std::size_t iters = 100;
  bool with_numrad = false;
  // normaloid
  bool verify = false;
  // fov
  std::size_t samples = 256;
  // ensemble
  std::string kind;
  long long dim = 2;
  std::size_t count = 1;
  std::vector<double> params;
};

const std::map<std::string, EstimatorMethod> kMethods{
    {"gelfand", EstimatorMethod::gelfand},
    {"aluthge-iterate", EstimatorMethod::aluthge_iterate},
    {"aluthge-power", EstimatorMethod::aluthge_power},
    {"numrad-power", EstimatorMethod::numrad_power},
};

const std::map<std::string, ObjectiveKind> kObjectives{
    {"delta-norm", ObjectiveKind::delta_norm},
    {"delta-numrad", ObjectiveKind::delta_numrad},
    {"rotated-realpart-norm", ObjectiveKind::rotated_realpart_norm},
    {"rotated-realpart-numrad", ObjectiveKind::rotated_realpart_numrad},
    {"plain-norm", ObjectiveKind::plain_norm},
};

std::vector<std::string> keys_of(const auto& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

// Builds the parser. Inside `ensemble --run` the matrix comes from the
// generator, so --matrix is not accepted there.
std::unique_ptr<CLI::App> build_app(Options& o, bool with_matrix) {
  auto app = std::make_unique<CLI::App>(
      "Spectral-radius estimators built on the Aluthge transform, numerical radius, "
      "and similarity-orbit minimization",
      "specrad");
  app->require_subcommand(1);
  app->fallthrough(false);

  auto add_matrix = [&](CLI::App* sub) {
    if (with_matrix) {
      sub->add_option("--matrix", o.matrix, "Matrix file (JSON or plain text)")->required();
    }
  };
  auto add_lambda = [&](CLI::App* sub) {
    sub->add_option("--lambda", o.lambda, "Aluthge parameter in [0, 1]")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  };

  auto* estimate = app->add_subcommand("estimate", "Run one limit-based estimator");
  add_matrix(estimate);
  estimate->add_option("--method", o.method, "Estimator")
      ->required()
      ->check(CLI::IsMember(keys_of(kMethods)));
  add_lambda(estimate);
  estimate->add_option("--n", o.n, "Aluthge iterations applied to each power")
      ->capture_default_str();
  estimate->add_option("--k-max", o.k_max, "Largest power in the doubling schedule")
      ->check(CLI::Range(std::size_t{1}, PowerSchedule::kMaxPower))
      ->capture_default_str();
  estimate->add_option("--rtol", o.rtol, "Relative convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  estimate->add_option("--max-iters", o.max_iters, "Iteration cap for aluthge-iterate")
      ->capture_default_str();
  auto* json_flag = estimate->add_flag("--json", o.json, "JSON output (default)");
  estimate->add_flag("--csv", o.csv, "Trace as CSV")->excludes(json_flag);

  auto* orbit = app->add_subcommand("orbit", "Minimize an objective over the similarity orbit");
  add_matrix(orbit);
  orbit->add_option("--objective", o.objective, "Orbit objective")
      ->required()
      ->check(CLI::IsMember(keys_of(kObjectives)));
  add_lambda(orbit);
  orbit->add_option("--n", o.n, "Aluthge iterations")->capture_default_str();
  orbit->add_option("--theta", o.theta, "Rotation angle for rotated objectives, or 'auto'")
      ->capture_default_str();
  orbit->add_option("--budget", o.budget, "Objective evaluations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  orbit->add_option("--radius", o.radius, "Frobenius bound on the generator")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  orbit->add_option("--seed", o.seed, "Random seed")->capture_default_str();

  auto* trace = app->add_subcommand("trace", "Norm trace of the Aluthge iterates as CSV");
  add_matrix(trace);
  add_lambda(trace);
  trace->add_option("--iters", o.iters, "Number of iterates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  trace->add_flag("--with-numrad", o.with_numrad, "Also record numerical radii");

  auto* normaloid = app->add_subcommand("normaloid", "Normaloid verdict as JSON");
  add_matrix(normaloid);
  normaloid->add_flag("--verify", o.verify, "Run the empirical characterization checks");
  normaloid->add_option("--budget", o.budget, "Evaluations per orbit check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  normaloid->add_option("--seed", o.seed, "Random seed")->capture_default_str();

  auto* fov = app->add_subcommand("fov", "Boundary points of the numerical range as CSV");
  add_matrix(fov);
  fov->add_option("--samples", o.samples, "Number of boundary points")
      ->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20))
      ->capture_default_str();

  auto* compare = app->add_subcommand("compare", "All estimators against the eigenvalue oracle");
  add_matrix(compare);
  add_lambda(compare);
  compare->add_option("--n", o.n, "Aluthge iterations for the power methods")
      ->capture_default_str();
  compare->add_option("--k-max", o.k_max, "Largest power")
      ->check(CLI::Range(std::size_t{1}, PowerSchedule::kMaxPower))
      ->capture_default_str();
  compare->add_option("--rtol", o.rtol, "Relative convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compare->add_option("--max-iters", o.max_iters, "Iteration cap for aluthge-iterate")
      ->capture_default_str();

  if (with_matrix) {
    auto* ensemble = app->add_subcommand(
        "ensemble",
        "Run a subcommand over generated matrices: ensemble ... --run <subcommand> [args]");
    std::vector<std::string> kinds;
    for (auto k : {EnsembleKind::ginibre, EnsembleKind::jordan, EnsembleKind::nilpotent_shift,
                   EnsembleKind::normal_random, EnsembleKind::unitary_random,
                   EnsembleKind::companion, EnsembleKind::unipotent}) {
      kinds.emplace_back(to_string(k));
    }
    ensemble->add_option("--kind", o.kind, "Ensemble kind")->required()->check(CLI::IsMember(kinds));
    ensemble->add_option("--dim", o.dim, "Matrix dimension")
        ->required()
        ->check(CLI::Range(1LL, static_cast<long long>(kMaxDim)));
    ensemble->add_option("--count", o.count, "Number of matrices")->required();
    ensemble->add_option("--seed", o.seed, "Base seed; matrix i uses seed xor i")->required();
    ensemble->add_option("--params", o.params, "Kind-specific parameters");
  }

  for (CLI::App* sub : app->get_subcommands({})) {
    sub->callback([&o, sub] { o.command = sub->get_name(); });
  }
  return app;
}

ToleranceConfig tolerance(const Options& o) {
  ToleranceConfig tol;
  tol.rtol = o.rtol;
  tol.max_iterations = o.max_iters;
  return tol;
}

SpectralEstimate run_estimator(const ComplexMatrix& t, EstimatorMethod m, const Options& o) {
  const AluthgeConfig cfg{o.lambda, std::nullopt};
  const auto schedule = PowerSchedule::doubling(o.k_max);
  switch (m) {
    case EstimatorMethod::gelfand:
      return estimate_gelfand(t, schedule, tolerance(o));
    case EstimatorMethod::aluthge_iterate:
      return estimate_aluthge_iterate(t, cfg, tolerance(o));
    case EstimatorMethod::aluthge_power:
      return estimate_aluthge_power(t, cfg, o.n, schedule, tolerance(o));
    case EstimatorMethod::numrad_power:
      return estimate_numrad_power(t, cfg, o.n, schedule, tolerance(o));
  }
  throw InvalidArgument("unknown estimator");
}

OrbitObjective orbit_objective(const ComplexMatrix& t, const Options& o) {
  OrbitObjective obj;
  obj.kind = kObjectives.at(o.objective);
  obj.lambda = o.lambda;
  obj.n = o.n;
  if (is_rotated(obj.kind)) {
    if (o.theta == "auto") {
      obj.theta = peripheral_angle(t);
    } else {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(o.theta, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != o.theta.size()) {
        throw InvalidArgument("--theta must be 'auto' or a number, got '" + o.theta + "'");
      }
      obj.theta = Angle(value);
    }
  }
  return obj;
}

OrbitResult run_orbit(const ComplexMatrix& t, const Options& o, std::uint64_t seed) {
  OrbitSearchOptions search;
  search.budget = o.budget;
  search.radius = o.radius;
  search.seed = seed;
  return minimize_orbit(t, orbit_objective(t, o), search);
}

NormaloidVerdict run_normaloid(const ComplexMatrix& t, const Options& o, std::uint64_t seed) {
  if (!o.verify) return normaloid_check(t);
  CharacterizationOptions opts;
  opts.budget = o.budget;
  opts.seed = seed;
  return verify_characterizations(t, opts);
}

std::string compare_table(const ComplexMatrix& t, const Options& o) {
  const double oracle = spectral_radius_oracle(t);
  std::ostringstream os;
  os << "method,value,oracle,gap,converged\n";
  for (auto m : {EstimatorMethod::gelfand, EstimatorMethod::aluthge_iterate,
                 EstimatorMethod::aluthge_power, EstimatorMethod::numrad_power}) {
    const SpectralEstimate e = run_estimator(t, m, o);
    os << to_string(m) << ',' << format_double(e.value) << ',' << format_double(oracle) << ','
       << format_double(e.value - oracle) << ',' << (e.converged ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string run_single(const ComplexMatrix& t, const Options& o) {
  const std::string& c = o.command;
  if (c == "estimate") {
    const SpectralEstimate e = run_estimator(t, kMethods.at(o.method), o);
    return o.csv ? estimate_csv(e) : to_json(e).dump(2) + "\n";
  }
  if (c == "orbit") return to_json(run_orbit(t, o, o.seed)).dump(2) + "\n";
  if (c == "trace") {
    return trace_csv(iterate_trace(t, AluthgeConfig{o.lambda, std::nullopt}, o.iters, o.with_numrad));
  }
  if (c == "normaloid") return to_json(run_normaloid(t, o, o.seed)).dump(2) + "\n";
  if (c == "fov") return points_csv(fov_boundary(t, o.samples));
  if (c == "compare") return compare_table(t, o);
  throw InvalidArgument("unknown subcommand " + c);
}

// ---- ensemble ----

using Row = std::vector<std::pair<std::string, std::string>>;

std::string bool_str(bool b) { return b ? "true" : "false"; }

Row ensemble_row(const ComplexMatrix& t, const Options& inner, std::size_t index,
                 std::uint64_t matrix_seed) {
  const double oracle = spectral_radius_oracle(t);
  Row row{{"index", std::to_string(index)},
          {"seed", std::to_string(matrix_seed)},
          {"oracle_r", format_double(oracle)}};
  auto add = [&row](std::string key, std::string value) {
    row.emplace_back(std::move(key), std::move(value));
  };
  const std::string& c = inner.command;
  if (c == "compare") {
    for (auto m : {EstimatorMethod::gelfand, EstimatorMethod::aluthge_iterate,
                   EstimatorMethod::aluthge_power, EstimatorMethod::numrad_power}) {
      const SpectralEstimate e = run_estimator(t, m, inner);
      add(std::string(to_string(m)), format_double(e.value));
      add(std::string(to_string(m)) + "_gap", format_double(e.value - oracle));
    }
  } else if (c == "estimate") {
    const SpectralEstimate e = run_estimator(t, kMethods.at(inner.method), inner);
    add("value", format_double(e.value));
    add("converged", bool_str(e.converged));
    add("gap", format_double(e.value - oracle));
  } else if (c == "orbit") {
    const OrbitResult r = run_orbit(t, inner, inner.seed ^ index);
    add("best_value", format_double(r.best_value));
    add("boundary_hit", bool_str(r.boundary_hit));
    add("evaluations", std::to_string(r.evaluations));
    add("gap", format_double(r.best_value - oracle));
  } else if (c == "trace") {
    const IterateTrace tr =
        iterate_trace(t, AluthgeConfig{inner.lambda, std::nullopt}, inner.iters, false);
    add("final_norm", format_double(tr.norms.back()));
    add("gap", format_double(tr.norms.back() - oracle));
  } else if (c == "normaloid") {
    const NormaloidVerdict v = run_normaloid(t, inner, inner.seed ^ index);
    add("norm", format_double(v.norm));
    add("relative_gap", format_double(v.relative_gap));
    add("is_normaloid", bool_str(v.is_normaloid));
    if (inner.verify) {
      const bool all = std::all_of(v.witnesses.begin(), v.witnesses.end(),
                                   [](const CharacterizationCheck& w) { return w.holds; });
      add("characterizations_agree", bool_str(all));
    }
  } else if (c == "fov") {
    const double w = numerical_radius(t).w;
    add("numerical_radius", format_double(w));
    add("gap", format_double(w - oracle));
  } else {
    throw InvalidArgument("ensemble cannot run '" + c + "'");
  }
  return row;
}

std::size_t thread_count(std::size_t jobs) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPECRAD_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

std::string run_ensemble(const Options& outer, const Options& inner) {
  const auto kind = parse_ensemble_kind(outer.kind);
  if (!kind) throw InvalidArgument("unknown ensemble kind " + outer.kind);
  const std::size_t count = outer.count;
  std::vector<Row> rows(count);
  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const std::uint64_t s = outer.seed ^ static_cast<std::uint64_t>(i);
        const ComplexMatrix t = generate(EnsembleSpec{*kind, outer.dim, s, outer.params});
        rows[i] = ensemble_row(t, inner, i, s);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = thread_count(count);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::ostringstream os;
  if (count == 0) return os.str();
  os << "kind,dim";
  for (const auto& [key, value] : rows.front()) os << ',' << key;
  os << '\n';
  for (const Row& row : rows) {
    os << outer.kind << ',' << outer.dim;
    for (const auto& [key, value] : row) os << ',' << value;
    os << '\n';
  }
  return os.str();
}

// Returns the exit code to stop with, or nothing when the command should run.
std::optional<int> parse_into(CLI::App& app, const std::vector<std::string>& args,
                              std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return std::nullopt;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) return kExitUsage;

  // `ensemble ... --run <subcommand> ...` carries a second command line.
  std::vector<std::string> outer_args = args;
  std::vector<std::string> inner_args;
  const bool is_ensemble = args.size() > 1 && args[1] == "ensemble";
  if (is_ensemble) {
    const auto run = std::find(args.begin(), args.end(), "--run");
    if (run != args.end()) {
      outer_args.assign(args.begin(), run);
      inner_args.assign(run + 1, args.end());
      if (inner_args.empty()) {
        err << "usage error: --run needs a subcommand\n";
        return kExitUsage;
      }
    } else {
      inner_args = {"compare"};
    }
    if (inner_args.front() == "ensemble") {
      err << "usage error: ensemble cannot run itself\n";
      return kExitUsage;
    }
    inner_args.insert(inner_args.begin(), args.front());
  }

  Options outer;
  auto app = build_app(outer, true);
  if (auto rc = parse_into(*app, outer_args, out, err)) return *rc;

  Options inner;
  std::unique_ptr<CLI::App> inner_app;
  if (is_ensemble) {
    inner_app = build_app(inner, false);
    if (auto rc = parse_into(*inner_app, inner_args, out, err)) return *rc;
  }

  try {
    if (is_ensemble) {
      out << run_ensemble(outer, inner);
    } else {
      const ComplexMatrix t = read_matrix(outer.matrix);
      out << run_single(t, outer);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::invalid_argument:
        return kExitUsage;
      case ErrorKind::invalid_input:
      case ErrorKind::parse:
        return kExitInput;
      case ErrorKind::numerical_failure:
      case ErrorKind::range:
      case ErrorKind::not_psd:
        return kExitNumerical;
    }
    return kExitNumerical;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitNumerical;
  }
}

}  // namespace specrad
