#pragma once

// Shared generators and independent oracles for the test binaries. Nothing
// here calls into the code paths it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "specrad/ensemble.hpp"
#include "specrad/matkernel.hpp"
#include "specrad/rng.hpp"

namespace specrad::testing {

inline ComplexMatrix ginibre(Eigen::Index n, std::uint64_t seed) {
  return generate(EnsembleSpec{EnsembleKind::ginibre, n, seed, {}});
}

inline ComplexMatrix haar(Eigen::Index n, std::uint64_t seed) {
  return generate(EnsembleSpec{EnsembleKind::unitary_random, n, seed, {}});
}

inline ComplexMatrix normal_random(Eigen::Index n, std::uint64_t seed) {
  return generate(EnsembleSpec{EnsembleKind::normal_random, n, seed, {}});
}

inline ComplexMatrix jordan2() { return ComplexMatrix::from_rows({{0, 1}, {0, 0}}); }
inline ComplexMatrix unipotent2() { return ComplexMatrix::from_rows({{1, 1}, {0, 1}}); }

/// Random Hermitian with Gaussian entries.
inline HermitianMatrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  CMat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  }
  return HermitianMatrix::average_with_adjoint(m);
}

/// Random positive semidefinite matrix B B* with the given rank.
inline HermitianMatrix random_psd(Eigen::Index n, Eigen::Index rank, std::uint64_t seed) {
  Rng rng(seed);
  CMat b(n, rank);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < rank; ++j) b(i, j) = Complex(rng.normal(), rng.normal());
  }
  return HermitianMatrix(CMat(b * b.adjoint()));
}

/// ||M|| by power iteration on M*M (independent of the SVD backend).
inline double norm_by_power_iteration(const CMat& m, int iterations = 2000) {
  const CMat g = m.adjoint() * m;
  Eigen::VectorXcd x = Eigen::VectorXcd::Ones(m.cols());
  x += Eigen::VectorXcd::LinSpaced(m.cols(), Complex(0.1, 0.05), Complex(0.3, -0.2));
  double value = 0.0;
  for (int i = 0; i < iterations; ++i) {
    Eigen::VectorXcd y = g * x;
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    value = std::sqrt(ny / x.norm());
    x = y / ny;
  }
  return value;
}

/// w(T) by a dense sweep of max_theta lambda_max(Re(e^{i theta} T)), using a
/// full eigendecomposition per angle.
inline double numerical_radius_sweep(const CMat& t, int samples = 20000) {
  double best = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / samples;
    const CMat r = t * std::polar(1.0, theta);
    const CMat h = 0.5 * (r + r.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    best = std::max(best, es.eigenvalues().maxCoeff());
  }
  return best;
}

/// Largest singular value of a 2x2 matrix from sigma^4 - tr(T*T) sigma^2 + |det T|^2 = 0.
inline double norm_2x2(const CMat& t) {
  const double tr = (t.adjoint() * t).trace().real();
  const double det = std::abs(t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0));
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det * det));
  return std::sqrt(0.5 * (tr + disc));
}

inline bool is_non_increasing(const std::vector<double>& v, double slack) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] + slack) return false;
  }
  return true;
}

inline double max_abs_diff(const CMat& a, const CMat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace specrad::testing
