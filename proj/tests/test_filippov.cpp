#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "naryder/filippov.hpp"
#include "naryder/rng.hpp"

using namespace naryder;

namespace {

RatVector unit(Index dim, Index k) {
  RatVector v = RatVector::Zero(dim);
  v(k) = 1;
  return v;
}

LinearMap random_derivation(const DerivationSpace& der, SeededRng& rng) {
  LinearMap d = RatMatrix::Zero(der.dim, der.dim);
  for (const LinearMap& b : der.basis_maps) d += rng.small_rational() * b;
  return d;
}

}  // namespace

TEST_CASE("build_filippov: table signs and domain guard") {
  const NaryAlgebra a4 = build_filippov(4);
  // omitting e_1: [e2,e3,e4] = -e1; omitting e_4: [e1,e2,e3] = +e4
  CHECK(a4.bracket({unit(4, 1), unit(4, 2), unit(4, 3)}) == RatVector(-unit(4, 0)));
  CHECK(a4.bracket({unit(4, 0), unit(4, 1), unit(4, 2)}) == unit(4, 3));

  // m = 5: [e1,e2,e3,e4] = (-1)^(5+5) e5 = +e5
  const NaryAlgebra a5 = build_filippov(5);
  CHECK(a5.bracket({unit(5, 0), unit(5, 1), unit(5, 2), unit(5, 3)}) == unit(5, 4));

  CHECK_THROWS_AS(build_filippov(3), std::domain_error);
  CHECK_THROWS_AS(build_filippov(2), std::domain_error);
}

TEST_CASE("verify_der_characterization across the desk-scale range") {
  const auto r4 = verify_der_characterization(4);
  CHECK(r4.dim == 6);
  CHECK(r4.ok());

  const auto r8 = verify_der_characterization(8);
  CHECK(r8.dim == 28);
  CHECK(r8.ok());

  // converse direction on A_5 directly
  LinearMap delta12 = RatMatrix::Zero(5, 5);
  delta12(0, 1) = 1;
  delta12(1, 0) = -1;
  CHECK(is_derivation(build_filippov(5), delta12).is_derivation);
}

TEST_CASE("local_certificate: antisymmetric maps are certified as derivations") {
  SeededRng rng(41);
  for (Index m = 4; m <= 6; ++m) {
    const LinearMap b = rng.antisymmetric(m);
    const LocalCertificate cert = local_certificate(m, b);
    CHECK(cert.is_derivation);
    REQUIRE(cert.witness.has_value());
    CHECK(*cert.witness == b);
  }
}

TEST_CASE("local_certificate: first failing probe in the paper's order") {
  // b_11 = 1 fails at Xi_1
  LinearMap b = RatMatrix::Zero(4, 4);
  b(0, 0) = 1;
  const LocalCertificate c1 = local_certificate(4, b);
  CHECK(!c1.is_derivation);
  REQUIRE(c1.counterexample.has_value());
  CHECK(c1.counterexample->support == std::vector<Index>{0});
  CHECK(c1.counterexample->name() == "Xi_1");

  // b_12 = b_21 = 1 survives all Xi_k and fails at Xi_1 + Xi_2
  LinearMap s = RatMatrix::Zero(4, 4);
  s(0, 1) = 1;
  s(1, 0) = 1;
  const LocalCertificate c2 = local_certificate(4, s);
  CHECK(!c2.is_derivation);
  REQUIRE(c2.counterexample.has_value());
  CHECK(c2.counterexample->support == std::vector<Index>{0, 1});
  CHECK(c2.counterexample->name() == "Xi_1+Xi_2");
}

TEST_CASE("sampled_map_global_witness: table from one derivation passes") {
  SeededRng rng(51);
  const DerivationSpace& der = filippov_derivations(4);
  const LinearMap d = random_derivation(der, rng);
  std::vector<PointConstraint> table;
  for (int i = 0; i < 5; ++i) {
    const RatVector x = rng.vector(4);
    table.emplace_back(x, d * x);
  }
  const GlobalWitnessVerdict verdict = sampled_map_global_witness(4, table);
  CHECK(verdict.status == GlobalWitnessStatus::Pass);
  REQUIRE(verdict.witness.has_value());
  CHECK(verdict.witness->verify(der));
  for (const auto& [x, y] : table) {
    CHECK(verdict.witness->witness * x == y);
  }
}

TEST_CASE("sampled_map_global_witness: pairwise and global failures") {
  // (e1, e1) is not interpolable by any antisymmetric map
  const GlobalWitnessVerdict pairwise =
      sampled_map_global_witness(4, {{unit(4, 0), unit(4, 0)}});
  CHECK(pairwise.status == GlobalWitnessStatus::FailPairwise);
  REQUIRE(pairwise.failing_pair.has_value());
  CHECK(pairwise.failing_pair->first == 0);

  // stitched from two distinct derivations on overlapping point sets:
  // d1 has entries (2,1)=1, (3,2)=5; d2 has entry (2,1)=1 only. Each pair of
  // constraints below leaves a free entry to absorb the difference, but the
  // three together pin D(e1+e2) to d1's value, contradicting the d2 row.
  LinearMap d1 = RatMatrix::Zero(4, 4);
  d1(1, 0) = 1;
  d1(0, 1) = -1;
  d1(2, 1) = 5;
  d1(1, 2) = -5;
  LinearMap d2 = RatMatrix::Zero(4, 4);
  d2(1, 0) = 1;
  d2(0, 1) = -1;
  const RatVector mixed = unit(4, 0) + unit(4, 1);
  const std::vector<PointConstraint> table = {{unit(4, 0), d1 * unit(4, 0)},
                                              {unit(4, 1), d1 * unit(4, 1)},
                                              {mixed, d2 * mixed}};
  const GlobalWitnessVerdict stitched = sampled_map_global_witness(4, table);
  CHECK(stitched.status == GlobalWitnessStatus::FailGlobal);

  CHECK_THROWS_AS(sampled_map_global_witness(4, {}), std::invalid_argument);
}

TEST_CASE("antisymmetric maps admit single-point witnesses everywhere") {
  SeededRng rng(71);
  for (Index m = 4; m <= 6; ++m) {
    const DerivationSpace& der = filippov_derivations(m);
    const LinearMap b = rng.antisymmetric(m);
    for (int s = 0; s < 5; ++s) {
      const RatVector x = rng.vector(m);
      const auto w = multi_point_witness(der, {{x, b * x}});
      REQUIRE(w.has_value());
      CHECK(w->witness * x == b * x);
    }
  }
}
