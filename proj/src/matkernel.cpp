#include "specrad/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <string>

#include "specrad/error.hpp"

namespace specrad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kExpLimit = 700.0;

bool all_finite(const CMat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

double positive_arg(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  if (a >= 2.0 * std::numbers::pi) a = 0.0;
  return a;
}

void sort_spectrum(std::vector<Complex>& values) {
  std::stable_sort(values.begin(), values.end(), [](Complex a, Complex b) {
    return std::abs(a) > std::abs(b);
  });
  // Moduli equal up to rounding form a cluster ordered by argument.
  std::size_t start = 0;
  while (start < values.size()) {
    const double head = std::abs(values[start]);
    const double tol = 1e-12 * std::max(1.0, head);
    std::size_t end = start + 1;
    while (end < values.size() && head - std::abs(values[end]) <= tol) ++end;
    std::stable_sort(values.begin() + static_cast<std::ptrdiff_t>(start),
                     values.begin() + static_cast<std::ptrdiff_t>(end),
                     [](Complex a, Complex b) {
                       return positive_arg(a) < positive_arg(b);
                     });
    start = end;
  }
}

struct HermitianSpectrum {
  RVec values;  // descending
  CMat vectors;
};

HermitianSpectrum hermitian_spectrum(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h.data(), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge",
                           matrix_hash(h.data()));
  }
  // Eigen returns ascending order.
  HermitianSpectrum out{es.eigenvalues().reverse(),
                        es.eigenvectors().rowwise().reverse()};
  return out;
}

// Kuhn's augmenting-path matching restricted to edges with cost <= limit.
bool has_perfect_matching(const std::vector<double>& cost, std::size_t n,
                          double limit) {
  std::vector<std::ptrdiff_t> match_right(n, -1);
  std::vector<char> seen(n);
  auto augment = [&](auto&& self, std::size_t left) -> bool {
    for (std::size_t r = 0; r < n; ++r) {
      if (seen[r] || cost[left * n + r] > limit) continue;
      seen[r] = 1;
      if (match_right[r] < 0 ||
          self(self, static_cast<std::size_t>(match_right[r]))) {
        match_right[r] = static_cast<std::ptrdiff_t>(left);
        return true;
      }
    }
    return false;
  };
  for (std::size_t left = 0; left < n; ++left) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(augment, left)) return false;
  }
  return true;
}

}  // namespace

ComplexMatrix::ComplexMatrix(CMat entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) {
    throw InvalidInput("matrix must be square, got " +
                       std::to_string(m_.rows()) + "x" +
                       std::to_string(m_.cols()));
  }
  if (m_.rows() < 1 || m_.rows() > kMaxDim) {
    throw InvalidInput("matrix dimension must be in [1, " +
                       std::to_string(kMaxDim) + "], got " +
                       std::to_string(m_.rows()));
  }
  if (!all_finite(m_)) throw InvalidInput("matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMat m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw InvalidInput("row " + std::to_string(i) + " has " +
                         std::to_string(row.size()) + " entries, expected " +
                         std::to_string(n));
    }
    Eigen::Index j = 0;
    for (Complex z : row) m(i, j++) = z;
    ++i;
  }
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::identity(Eigen::Index n) {
  return ComplexMatrix(CMat::Identity(n, n));
}

ComplexMatrix ComplexMatrix::zero(Eigen::Index n) {
  return ComplexMatrix(CMat::Zero(n, n));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  CMat m = CMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return ComplexMatrix(std::move(m));
}

HermitianMatrix::HermitianMatrix(const CMat& upper) {
  if (upper.rows() != upper.cols() || upper.rows() < 1 ||
      upper.rows() > kMaxDim) {
    throw InvalidInput("Hermitian matrix must be square with dimension in [1, " +
                       std::to_string(kMaxDim) + "]");
  }
  const Eigen::Index n = upper.rows();
  m_.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    m_(j, j) = Complex(upper(j, j).real(), 0.0);
    for (Eigen::Index i = 0; i < j; ++i) {
      m_(i, j) = upper(i, j);
      m_(j, i) = std::conj(upper(i, j));
    }
  }
  if (!all_finite(m_)) throw InvalidInput("Hermitian matrix has non-finite entries");
}

HermitianMatrix HermitianMatrix::average_with_adjoint(const CMat& m) {
  return HermitianMatrix(CMat(0.5 * (m + m.adjoint())));
}

RVec Eigendecomposition::real_values() const {
  RVec out(static_cast<Eigen::Index>(eigenvalues.size()));
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = eigenvalues[i].real();
  }
  return out;
}

std::uint64_t matrix_hash(const CMat& m) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<double>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      mix(m(i, j).real());
      mix(m(i, j).imag());
    }
  }
  return h;
}

void require_finite(const CMat& m, const char* context) {
  if (!all_finite(m)) {
    throw NumericalFailure(std::string(context) + " produced non-finite values",
                           matrix_hash(m));
  }
}

double rank_tolerance(const RVec& singular_values, Eigen::Index n,
                      std::optional<double> override_tol) {
  if (override_tol) {
    if (!(*override_tol >= 0.0) || !std::isfinite(*override_tol)) {
      throw InvalidArgument("rank tolerance override must be finite and >= 0");
    }
    return *override_tol;
  }
  const double top = singular_values.size() > 0 ? singular_values(0) : 0.0;
  return static_cast<double>(n) * kEps * top;
}

SvdFactors svd(const ComplexMatrix& t) {
  Eigen::JacobiSVD<CMat> solver(t.data(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdFactors out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  if (!out.singular_values.allFinite() || !out.U.allFinite() ||
      !out.V.allFinite()) {
    throw NumericalFailure("SVD failed", matrix_hash(t.data()));
  }
  return out;
}

double operator_norm(const CMat& m) {
  if (m.rows() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<CMat> solver(m);
  const double s = solver.singularValues()(0);
  if (!std::isfinite(s)) throw NumericalFailure("SVD failed", matrix_hash(m));
  return s;
}

double operator_norm(const ComplexMatrix& t) { return operator_norm(t.data()); }

std::vector<Complex> eigenvalues(const CMat& m) {
  if (!all_finite(m)) throw InvalidInput("matrix has non-finite entries");
  std::vector<Complex> values;
  if (m.rows() == 1) {
    values.push_back(m(0, 0));
    return values;
  }
  Eigen::ComplexEigenSolver<CMat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("eigenvalue iteration did not converge", matrix_hash(m));
  }
  values.assign(es.eigenvalues().data(),
                es.eigenvalues().data() + es.eigenvalues().size());
  sort_spectrum(values);
  return values;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& t) {
  return eigenvalues(t.data());
}

double spectral_radius_oracle(const CMat& m) {
  const auto values = eigenvalues(m);
  double r = 0.0;
  for (Complex z : values) r = std::max(r, std::abs(z));
  return r;
}

double spectral_radius_oracle(const ComplexMatrix& t) {
  return spectral_radius_oracle(t.data());
}

Eigendecomposition hermitian_eig(const HermitianMatrix& h) {
  auto spec = hermitian_spectrum(h);
  Eigendecomposition out;
  out.hermitian = true;
  out.eigenvalues.reserve(static_cast<std::size_t>(spec.values.size()));
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    out.eigenvalues.emplace_back(spec.values(i), 0.0);
  }
  out.eigenvectors = std::move(spec.vectors);
  return out;
}

double lambda_max(const HermitianMatrix& h) {
  const CMat& m = h.data();
  if (m.rows() == 1) return m(0, 0).real();
  if (m.rows() == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half = 0.5 * (a - d);
    return 0.5 * (a + d) + std::hypot(half, std::abs(m(0, 1)));
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge", matrix_hash(m));
  }
  return es.eigenvalues()(m.rows() - 1);
}

double hermitian_abs_max(const HermitianMatrix& h) {
  const CMat& m = h.data();
  if (m.rows() == 1) return std::abs(m(0, 0).real());
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge", matrix_hash(m));
  }
  return std::max(std::abs(es.eigenvalues()(0)),
                  std::abs(es.eigenvalues()(m.rows() - 1)));
}

ComplexMatrix matrix_exp_hermitian(const HermitianMatrix& a, double scale) {
  if (!std::isfinite(scale)) throw InvalidArgument("exponential scale must be finite");
  const auto spec = hermitian_spectrum(a);
  RVec exponent = scale * spec.values;
  if (exponent.maxCoeff() > kExpLimit) {
    throw RangeError("matrix exponential overflows: scale * eigenvalue = " +
                     std::to_string(exponent.maxCoeff()) + " exceeds 700");
  }
  const RVec e = exponent.array().exp();
  CMat out = spec.vectors * e.asDiagonal() * spec.vectors.adjoint();
  require_finite(out, "matrix exponential");
  return ComplexMatrix(std::move(out));
}

std::pair<CMat, CMat> matrix_exp_pair(const HermitianMatrix& a) {
  const auto spec = hermitian_spectrum(a);
  if (spec.values.cwiseAbs().maxCoeff() > kExpLimit) {
    throw RangeError("matrix exponential overflows: |eigenvalue| exceeds 700");
  }
  const RVec up = spec.values.array().exp();
  const RVec down = (-spec.values).array().exp();
  CMat plus = spec.vectors * up.asDiagonal() * spec.vectors.adjoint();
  CMat minus = spec.vectors * down.asDiagonal() * spec.vectors.adjoint();
  return {std::move(plus), std::move(minus)};
}

HermitianMatrix fractional_power_psd(const HermitianMatrix& p, double exponent,
                                     std::optional<double> rank_tol) {
  if (!(exponent >= 0.0 && exponent <= 1.0)) {
    throw InvalidArgument("fractional power exponent must lie in [0, 1]");
  }
  const auto spec = hermitian_spectrum(p);
  const Eigen::Index n = p.dim();
  const double top = std::max(spec.values(0), 0.0);
  const double tol = rank_tol ? *rank_tol : static_cast<double>(n) * kEps * top;
  RVec powered(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = spec.values(i);
    if (lam < -tol) {
      throw NotPsdError("matrix is not positive semidefinite: eigenvalue " +
                        std::to_string(lam));
    }
    if (lam <= tol) {
      powered(i) = exponent == 0.0 ? 1.0 : 0.0;
    } else {
      powered(i) = std::pow(lam, exponent);
    }
  }
  CMat out = spec.vectors * powered.asDiagonal() * spec.vectors.adjoint();
  return HermitianMatrix(out);
}

double multiset_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("multiset distance needs equal-size inputs");
  }
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = std::abs(a[i] - b[j]);
  }
  std::vector<double> candidates = cost;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (has_perfect_matching(cost, n, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) {
    return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  }
  auto directed = [](std::span<const Complex> from, std::span<const Complex> to) {
    double worst = 0.0;
    for (Complex x : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (Complex y : to) nearest = std::min(nearest, std::abs(x - y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace specrad
