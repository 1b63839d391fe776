#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "specrad/matkernel.hpp"

namespace specrad {

/// T = U P with P = |T| = (T*T)^{1/2} and U a partial isometry whose kernel
/// equals the kernel of T.
struct PolarFactors {
  ComplexMatrix U;
  HermitianMatrix P;
};

struct AluthgeConfig {
  double lambda = 0.5;
  /// Singular values at or below this count as zero; defaults to n*eps*sigma_1.
  std::optional<double> rank_tolerance;

  /// Throws InvalidArgument unless 0 <= lambda <= 1.
  void validate() const;
};

/// Per-iterate record of the Aluthge sequence of one matrix.
struct IterateTrace {
  std::size_t iterates_recorded = 0;
  std::vector<double> norms;  // norms[k] = ||Delta^k(T)||, k = 0..iterates_recorded
  std::optional<std::vector<double>> numerical_radii;
  /// Hausdorff distance between the spectrum of Delta^k(T) and that of T.
  std::vector<double> spectra_drift;
};

/// Polar decomposition from the SVD T = V S W*: P = W S W*, U = V D W*, where
/// D keeps the singular directions above the rank tolerance.
PolarFactors polar_decompose(const ComplexMatrix& t,
                             std::optional<double> rank_tol = std::nullopt);

/// Delta_lambda(T) = |T|^lambda U |T|^(1-lambda).
///
/// lambda = 0 gives the recomposed U|T| (T with singular values under the rank
/// tolerance dropped); lambda = 1 gives the Duggal transform |T| U.
ComplexMatrix aluthge(const ComplexMatrix& t, const AluthgeConfig& cfg = {});

/// n-fold application of aluthge(); n = 0 returns t unchanged.
ComplexMatrix aluthge_iterate(const ComplexMatrix& t, const AluthgeConfig& cfg,
                              std::size_t n);

/// Norms (and optionally numerical radii) of Delta^k(T) for k = 0..n_max,
/// together with the spectral drift of each iterate.
IterateTrace iterate_trace(const ComplexMatrix& t, const AluthgeConfig& cfg,
                           std::size_t n_max, bool record_w = false);

}  // namespace specrad
