#include "specrad/serialize.hpp"

#include <sstream>

#include "specrad/matrix_io.hpp"

namespace specrad {

ordered_json to_json(const SpectralEstimate& e) {
  ordered_json trace = ordered_json::array();
  for (const TraceEntry& t : e.trace) trace.push_back({t.index, t.value});
  return ordered_json{
      {"method", to_string(e.method)},
      {"value", e.value},
      {"converged", e.converged},
      {"budget",
       {{"iterations", e.budget.iterations}, {"matrix_products", e.budget.matrix_products}}},
      {"trace", std::move(trace)},
  };
}

ordered_json to_json(const OrbitResult& r) {
  ordered_json coords = ordered_json::array();
  for (Eigen::Index i = 0; i < r.best_A.coords().size(); ++i) coords.push_back(r.best_A.coords()(i));
  ordered_json history = ordered_json::array();
  for (const auto& [eval, value] : r.history) history.push_back({eval, value});
  return ordered_json{
      {"best_value", r.best_value},
      {"boundary_hit", r.boundary_hit},
      {"evaluations", r.evaluations},
      {"best_A", {{"dim", r.best_A.dim()}, {"coords", std::move(coords)}}},
      {"history", std::move(history)},
  };
}

ordered_json to_json(const NormaloidVerdict& v) {
  ordered_json witnesses = ordered_json::array();
  for (const CharacterizationCheck& c : v.witnesses) {
    ordered_json w{
        {"which", to_string(c.which)},
        {"holds", c.holds},
        {"refuted", c.refuted},
        {"evidence", c.evidence},
        {"reference", c.reference},
    };
    if (c.witness_k) w["witness_k"] = *c.witness_k;
    witnesses.push_back(std::move(w));
  }
  return ordered_json{
      {"is_normaloid", v.is_normaloid},
      {"r", v.r},
      {"norm", v.norm},
      {"relative_gap", v.relative_gap},
      {"witnesses", std::move(witnesses)},
  };
}

ordered_json to_json(const IterateTrace& t) {
  ordered_json out{
      {"iterates_recorded", t.iterates_recorded},
      {"norms", t.norms},
  };
  if (t.numerical_radii) out["numerical_radii"] = *t.numerical_radii;
  out["spectra_drift"] = t.spectra_drift;
  return out;
}

std::string trace_csv(const IterateTrace& t) {
  std::ostringstream os;
  const bool with_w = t.numerical_radii.has_value();
  os << "n,norm" << (with_w ? ",numerical_radius" : "") << ",spectra_drift\n";
  for (std::size_t k = 0; k < t.norms.size(); ++k) {
    os << k << ',' << format_double(t.norms[k]);
    if (with_w) os << ',' << format_double((*t.numerical_radii)[k]);
    os << ',' << format_double(t.spectra_drift[k]) << '\n';
  }
  return os.str();
}

std::string estimate_csv(const SpectralEstimate& e) {
  std::ostringstream os;
  os << "index,value\n";
  for (const TraceEntry& t : e.trace) os << t.index << ',' << format_double(t.value) << '\n';
  return os.str();
}

std::string points_csv(std::span<const Complex> points) {
  std::ostringstream os;
  os << "re,im\n";
  for (Complex z : points) os << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  return os.str();
}

}  // namespace specrad
