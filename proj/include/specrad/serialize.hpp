#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "specrad/aluthge.hpp"
#include "specrad/estimators.hpp"
#include "specrad/normaloid.hpp"
#include "specrad/orbitopt.hpp"

namespace specrad {

using ordered_json = nlohmann::ordered_json;

/// {method, value, converged, budget: {iterations, matrix_products}, trace: [[index, value], ...]}
ordered_json to_json(const SpectralEstimate& e);

/// {best_value, boundary_hit, evaluations, best_A: {dim, coords}, history: [[eval, value], ...]}
ordered_json to_json(const OrbitResult& r);

/// {is_normaloid, r, norm, relative_gap, witnesses: [...]}
ordered_json to_json(const NormaloidVerdict& v);

/// {iterates_recorded, norms, numerical_radii?, spectra_drift}
ordered_json to_json(const IterateTrace& t);

/// Columns n,norm[,numerical_radius],spectra_drift.
std::string trace_csv(const IterateTrace& t);

/// Columns index,value.
std::string estimate_csv(const SpectralEstimate& e);

/// Columns re,im.
std::string points_csv(std::span<const Complex> points);

}  // namespace specrad
