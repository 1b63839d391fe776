#include <doctest.h>

#include <vector>

#include "specrad/normaloid.hpp"
#include "test_support.hpp"

using namespace specrad;
using namespace specrad::testing;

namespace {

const CharacterizationCheck& find(const NormaloidVerdict& v, Characterization c) {
  for (const auto& w : v.witnesses) {
    if (w.which == c) return w;
  }
  FAIL("missing characterization");
  return v.witnesses.front();
}

CharacterizationOptions quick() {
  CharacterizationOptions o;
  o.budget = 800;
  return o;
}

}  // namespace

TEST_CASE("oracle classification") {
  CHECK(normaloid_check(haar(3, 1)).is_normaloid);
  CHECK(normaloid_check(normal_random(4, 2)).is_normaloid);
  CHECK(normaloid_check(random_hermitian(3, 3).as_complex()).is_normaloid);
  CHECK(normaloid_check(ComplexMatrix::zero(2)).is_normaloid);
  const NormaloidVerdict j = normaloid_check(jordan2());
  CHECK_FALSE(j.is_normaloid);
  CHECK(j.r == 0.0);
  CHECK(j.norm == doctest::Approx(1.0));
  CHECK(j.relative_gap == doctest::Approx(1.0));
  CHECK_FALSE(normaloid_check(unipotent2()).is_normaloid);
  CHECK(j.witnesses.empty());
  // Normaloid without being normal: diag(1) (+) J2.
  const ComplexMatrix mixed = ComplexMatrix::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  CHECK(normaloid_check(mixed).is_normaloid);
}

TEST_CASE("J2: every characterization refutes normaloidity") {
  const NormaloidVerdict v = verify_characterizations(jordan2(), quick());
  REQUIRE(v.witnesses.size() == 4);
  for (const auto& w : v.witnesses) {
    CHECK(w.holds);
    CHECK(w.refuted);
  }
  const CharacterizationCheck& c24 = find(v, Characterization::cor24_power_norm);
  REQUIRE(c24.witness_k.has_value());
  CHECK(*c24.witness_k == 2);
  CHECK(c24.evidence == 0.0);
  CHECK(c24.reference == doctest::Approx(1.0));
}

TEST_CASE("normal fixtures: no characterization is refuted") {
  for (const ComplexMatrix& t : {haar(3, 5), normal_random(3, 6)}) {
    const NormaloidVerdict v = verify_characterizations(t, quick());
    CHECK(v.is_normaloid);
    for (const auto& w : v.witnesses) {
      CHECK(w.holds);
      CHECK_FALSE(w.refuted);
    }
  }
}

TEST_CASE("non-normal normaloid matrix is not refuted") {
  const ComplexMatrix mixed = ComplexMatrix::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  const NormaloidVerdict v = verify_characterizations(mixed, quick());
  CHECK(v.is_normaloid);
  for (const auto& w : v.witnesses) CHECK(w.holds);
}

TEST_CASE("unipotent fixture is refuted") {
  const NormaloidVerdict v = verify_characterizations(unipotent2(), quick());
  CHECK_FALSE(v.is_normaloid);
  for (const auto& w : v.witnesses) CHECK(w.holds);
}

TEST_CASE("characterization names") {
  CHECK(to_string(Characterization::cor22_aluthge_orbit) == "cor22_aluthge_orbit");
  CHECK(to_string(Characterization::cor23_plain_orbit) == "cor23_plain_orbit");
  CHECK(to_string(Characterization::cor24_power_norm) == "cor24_power_norm");
  CHECK(to_string(Characterization::cor31_rotated_realpart) == "cor31_rotated_realpart");
}
