#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace specrad {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

/// Largest dimension accepted anywhere in the library.
inline constexpr Eigen::Index kMaxDim = 256;

/// Dense square complex matrix with finite entries, 1 <= dim <= kMaxDim.
///
/// Construction validates the invariants and throws InvalidInput on violation;
/// afterwards the value is immutable.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(CMat entries);

  /// Row-major literal, e.g. `ComplexMatrix::from_rows({{0, 1}, {0, 0}})`.
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix identity(Eigen::Index n);
  static ComplexMatrix zero(Eigen::Index n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const CMat& data() const noexcept { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  ComplexMatrix adjoint() const { return ComplexMatrix(m_.adjoint()); }
  ComplexMatrix scaled(Complex c) const { return ComplexMatrix(m_ * c); }

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  CMat m_;
};

/// Hermitian matrix, exactly self-adjoint by construction: only the upper
/// triangle and the real part of the diagonal of the source are read, and
/// the lower triangle is materialized as the conjugate mirror.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMat& upper);

  /// (M + M*) / 2.
  static HermitianMatrix average_with_adjoint(const CMat& m);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const CMat& data() const noexcept { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  ComplexMatrix as_complex() const { return ComplexMatrix(m_); }

 private:
  CMat m_;
};

struct Eigendecomposition {
  std::vector<Complex> eigenvalues;
  /// Columns are eigenvectors; present for Hermitian input only.
  std::optional<CMat> eigenvectors;
  bool hermitian = false;

  /// Real parts of the eigenvalues (exact for the Hermitian case).
  RVec real_values() const;
};

struct SvdFactors {
  CMat U;
  RVec singular_values;  // descending, nonnegative
  CMat V;
};

/// FNV-1a over the bit patterns of the entries; stable across runs.
std::uint64_t matrix_hash(const CMat& m);

/// Zero-threshold for singular values: n * eps * sigma_1 unless overridden.
double rank_tolerance(const RVec& singular_values, Eigen::Index n,
                      std::optional<double> override_tol = std::nullopt);

SvdFactors svd(const ComplexMatrix& t);
double operator_norm(const ComplexMatrix& t);
double operator_norm(const CMat& m);

/// Eigenvalues with multiplicity, sorted by descending modulus; entries whose
/// moduli agree to 1e-12 relative are ordered by ascending argument in [0, 2pi).
std::vector<Complex> eigenvalues(const ComplexMatrix& t);
std::vector<Complex> eigenvalues(const CMat& m);

/// Max modulus over eigenvalues(t). Ground truth for every estimator.
double spectral_radius_oracle(const ComplexMatrix& t);
double spectral_radius_oracle(const CMat& m);

/// Real eigenvalues in descending order with unitary eigenvectors.
Eigendecomposition hermitian_eig(const HermitianMatrix& h);

/// Largest eigenvalue only (no vectors).
double lambda_max(const HermitianMatrix& h);
/// Largest eigenvalue modulus, i.e. the spectral norm of a Hermitian matrix.
double hermitian_abs_max(const HermitianMatrix& h);

/// exp(scale * A). Throws RangeError when scale * lambda exceeds 700 for
/// some eigenvalue lambda of A.
ComplexMatrix matrix_exp_hermitian(const HermitianMatrix& a, double scale);

/// The pair (exp(A), exp(-A)) from a single eigendecomposition.
std::pair<CMat, CMat> matrix_exp_pair(const HermitianMatrix& a);

/// P^exponent for positive semidefinite P and exponent in [0, 1].
/// Eigenvalues at or below the rank tolerance count as zero, with
/// 0^e = 0 for e > 0 and 0^0 = 1. Throws NotPsdError for eigenvalues below
/// -tolerance and InvalidArgument for exponents outside [0, 1].
HermitianMatrix fractional_power_psd(const HermitianMatrix& p, double exponent,
                                     std::optional<double> rank_tol = std::nullopt);

/// Bottleneck distance between two eigenvalue multisets of equal size:
/// the smallest d such that a one-to-one pairing moves no point more than d.
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Throws NumericalFailure if any entry is NaN or infinite.
void require_finite(const CMat& m, const char* context);

}  // namespace specrad
