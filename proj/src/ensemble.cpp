#include "specrad/ensemble.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "specrad/error.hpp"
#include "specrad/rng.hpp"

namespace specrad {

namespace {

constexpr std::array<std::pair<EnsembleKind, std::string_view>, 7> kNames{{
    {EnsembleKind::ginibre, "ginibre"},
    {EnsembleKind::jordan, "jordan"},
    {EnsembleKind::nilpotent_shift, "nilpotent_shift"},
    {EnsembleKind::normal_random, "normal_random"},
    {EnsembleKind::unitary_random, "unitary_random"},
    {EnsembleKind::companion, "companion"},
    {EnsembleKind::unipotent, "unipotent"},
}};

Complex gaussian(Rng& rng) {
  // unit expected modulus squared
  const double re = rng.normal();
  const double im = rng.normal();
  return Complex(re, im) * std::sqrt(0.5);
}

CMat ginibre(Eigen::Index n, Rng& rng) {
  CMat m(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = gaussian(rng) * scale;
  }
  return m;
}

// Q from a QR of a Ginibre matrix, with the phases of R's diagonal folded
// back so the distribution is Haar.
CMat haar_unitary(Eigen::Index n, Rng& rng) {
  const CMat g = ginibre(n, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(n, n);
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

void expect_params(const EnsembleSpec& spec, std::size_t lo, std::size_t hi) {
  const std::size_t got = spec.params.size();
  if (got < lo || got > hi) {
    throw InvalidArgument(std::string(to_string(spec.kind)) + " expects between " +
                          std::to_string(lo) + " and " + std::to_string(hi) +
                          " params, got " + std::to_string(got));
  }
}

}  // namespace

std::string_view to_string(EnsembleKind k) {
  for (const auto& [kind, name] : kNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

std::optional<EnsembleKind> parse_ensemble_kind(std::string_view name) {
  for (const auto& [kind, label] : kNames) {
    if (label == name) return kind;
  }
  return std::nullopt;
}

ComplexMatrix generate(const EnsembleSpec& spec) {
  const Eigen::Index n = spec.dim;
  if (n < 1 || n > kMaxDim) {
    throw InvalidArgument("ensemble dimension must lie in [1, " + std::to_string(kMaxDim) + "]");
  }
  for (double p : spec.params) {
    if (!std::isfinite(p)) throw InvalidArgument("ensemble params must be finite");
  }
  Rng rng(spec.seed);
  const auto un = static_cast<std::size_t>(n);

  switch (spec.kind) {
    case EnsembleKind::ginibre:
      expect_params(spec, 0, 0);
      return ComplexMatrix(ginibre(n, rng));

    case EnsembleKind::jordan: {
      expect_params(spec, 0, 2);
      const Complex eig(spec.params.size() > 0 ? spec.params[0] : 0.0,
                        spec.params.size() > 1 ? spec.params[1] : 0.0);
      CMat m = CMat::Zero(n, n);
      for (Eigen::Index i = 0; i < n; ++i) m(i, i) = eig;
      for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
      return ComplexMatrix(std::move(m));
    }

    case EnsembleKind::nilpotent_shift: {
      if (!spec.params.empty() && spec.params.size() != un - 1) {
        throw InvalidArgument("nilpotent_shift needs " + std::to_string(un - 1) +
                              " weights, got " + std::to_string(spec.params.size()));
      }
      CMat m = CMat::Zero(n, n);
      for (Eigen::Index i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = spec.params.empty() ? 1.0 : spec.params[static_cast<std::size_t>(i)];
      }
      return ComplexMatrix(std::move(m));
    }

    case EnsembleKind::normal_random: {
      expect_params(spec, 0, 0);
      const CMat q = haar_unitary(n, rng);
      Eigen::VectorXcd z(n);
      for (Eigen::Index i = 0; i < n; ++i) z(i) = gaussian(rng);
      return ComplexMatrix(CMat(q * z.asDiagonal() * q.adjoint()));
    }

    case EnsembleKind::unitary_random:
      expect_params(spec, 0, 0);
      return ComplexMatrix(haar_unitary(n, rng));

    case EnsembleKind::companion: {
      if (spec.params.size() != un) {
        throw InvalidArgument("companion needs " + std::to_string(un) +
                              " coefficients c_0..c_{n-1}, got " +
                              std::to_string(spec.params.size()));
      }
      CMat m = CMat::Zero(n, n);
      for (Eigen::Index i = 1; i < n; ++i) m(i, i - 1) = 1.0;
      for (Eigen::Index i = 0; i < n; ++i) m(i, n - 1) = -spec.params[static_cast<std::size_t>(i)];
      return ComplexMatrix(std::move(m));
    }

    case EnsembleKind::unipotent: {
      expect_params(spec, 0, 1);
      CMat m = CMat::Identity(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
          m(i, j) = spec.params.empty() ? gaussian(rng) : Complex(spec.params[0], 0.0);
        }
      }
      return ComplexMatrix(std::move(m));
    }
  }
  throw InvalidArgument("unknown ensemble kind");
}

}  // namespace specrad
