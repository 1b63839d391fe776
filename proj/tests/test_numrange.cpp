#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specrad/error.hpp"
#include "specrad/numrange.hpp"
#include "test_support.hpp"

using namespace specrad;
using namespace specrad::testing;

TEST_CASE("Angle normalizes into [0, 2pi)") {
  const double two_pi = 2.0 * std::numbers::pi;
  CHECK(Angle(-0.5).radians() == doctest::Approx(two_pi - 0.5));
  CHECK(Angle(two_pi + 0.25).radians() == doctest::Approx(0.25));
  CHECK(Angle(two_pi).radians() == doctest::Approx(0.0));
  CHECK(Angle(7 * two_pi + 1.0).radians() < two_pi);
  CHECK(std::abs(Angle(std::numbers::pi / 2).phase() - Complex(0, 1)) < 1e-15);
}

TEST_CASE("numerical radius of the 2x2 Jordan block is one half") {
  CHECK(numerical_radius(jordan2()).w == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("numerical radius matches a dense angle sweep") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const ComplexMatrix t = ginibre(2 + seed % 4, seed);
    const double w = numerical_radius(t).w;
    const double sweep = numerical_radius_sweep(t.data(), 4000);
    // The sweep is a lower bound, within quadratic error of the true maximum.
    CHECK(w >= sweep - 1e-10);
    CHECK(w <= sweep + 1e-5 * operator_norm(t));
  }
}

TEST_CASE("numerical radius sits between r and the norm") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const ComplexMatrix t = ginibre(1 + seed % 6, seed);
    const double w = numerical_radius(t).w;
    CHECK(w >= spectral_radius_oracle(t) - 1e-9);
    CHECK(w <= operator_norm(t) + 1e-9);
    CHECK(w >= 0.5 * operator_norm(t) - 1e-9);
  }
}

TEST_CASE("numerical radius of normal matrices equals r") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ComplexMatrix t = normal_random(4, seed);
    CHECK(numerical_radius(t).w == doctest::Approx(spectral_radius_oracle(t)).epsilon(1e-9));
    const HermitianMatrix h = random_hermitian(5, seed);
    CHECK(numerical_radius(h.as_complex()).w ==
          doctest::Approx(hermitian_abs_max(h)).epsilon(1e-9));
  }
}

TEST_CASE("numerical radius argmax attains w") {
  const ComplexMatrix t = ginibre(4, 9);
  const NumericalRadiusResult res = numerical_radius(t);
  CHECK(res.argmax_angle >= 0.0);
  CHECK(res.argmax_angle < 2 * std::numbers::pi);
  CHECK(support_value(t.data(), res.argmax_angle) == doctest::Approx(res.w).epsilon(1e-10));
  CHECK_FALSE(res.boundary_samples.has_value());
  NumericalRadiusOptions opts;
  opts.boundary_samples = 16;
  const NumericalRadiusResult with = numerical_radius(t, opts);
  REQUIRE(with.boundary_samples.has_value());
  CHECK(with.boundary_samples->size() == 16);
}

TEST_CASE("numerical radius rejects bad tolerance") {
  CHECK_THROWS_AS(numerical_radius(jordan2(), 0.0), InvalidArgument);
  CHECK_THROWS_AS(numerical_radius(jordan2(), -1.0), InvalidArgument);
}

TEST_CASE("field of values boundary points lie in the disc of radius w") {
  const ComplexMatrix t = ginibre(3, 4);
  const double w = numerical_radius(t).w;
  const std::vector<Complex> pts = fov_boundary(t, 64);
  CHECK(pts.size() == 64);
  for (Complex z : pts) CHECK(std::abs(z) <= w + 1e-9);
  CHECK_THROWS_AS(fov_boundary(t, 2), InvalidArgument);
  // Hermitian input: the range is the segment [lambda_min, lambda_max].
  const HermitianMatrix h = random_hermitian(3, 5);
  for (Complex z : fov_boundary(h.as_complex(), 16)) CHECK(std::abs(z.imag()) < 1e-12);
}

TEST_CASE("peripheral angle rotates a peripheral eigenvalue onto the positive axis") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ComplexMatrix t = ginibre(4, seed);
    const double r = spectral_radius_oracle(t);
    const Angle theta = peripheral_angle(t);
    bool found = false;
    for (Complex z : eigenvalues(t)) {
      const Complex rotated = theta.phase() * z;
      if (std::abs(rotated - r) < 1e-9 * std::max(1.0, r)) found = true;
    }
    CHECK(found);
  }
  CHECK(peripheral_angle(jordan2()).radians() == 0.0);
  // Tie between 1 and -1: smallest argument wins.
  const std::vector<Complex> d = {-1.0, 1.0};
  CHECK(peripheral_angle(ComplexMatrix::diagonal(d)).radians() == 0.0);
}

TEST_CASE("rotated real part norm is dominated by the norm") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ComplexMatrix t = ginibre(3, seed);
    const Angle theta(0.1 * seed);
    CHECK(rotated_realpart_norm(t, theta) <= operator_norm(t) + 1e-12);
  }
}
