#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "specrad/matkernel.hpp"

namespace specrad {

enum class EnsembleKind {
  ginibre,          // i.i.d. standard complex Gaussian entries / sqrt(n)
  jordan,           // one Jordan block; params = {re, im} of the eigenvalue
  nilpotent_shift,  // weighted upper shift; params = n - 1 weights (empty: all 1)
  normal_random,    // Q diag(z) Q* with Haar-like Q and Gaussian z
  unitary_random,   // QR of a Ginibre matrix with phase correction
  companion,        // params = c_0..c_{n-1} of z^n + c_{n-1} z^{n-1} + ... + c_0
  unipotent,        // I + strict upper triangle; params = {c} fills it with c,
                    // otherwise Gaussian entries
};

std::string_view to_string(EnsembleKind k);
std::optional<EnsembleKind> parse_ensemble_kind(std::string_view name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::ginibre;
  Eigen::Index dim = 2;
  std::uint64_t seed = 0;
  std::vector<double> params;
};

/// The matrix described by `spec`, deterministic in its seed; throws InvalidArgument on bad params.
ComplexMatrix generate(const EnsembleSpec& spec);

}  // namespace specrad
