#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "naryder/filippov.hpp"
#include "naryder/nary_algebra.hpp"
#include "naryder/rng.hpp"

using namespace naryder;

namespace {

RatVector unit(Index dim, Index k) {
  RatVector v = RatVector::Zero(dim);
  v(k) = 1;
  return v;
}

RatVector zero(Index dim) { return RatVector::Zero(dim); }

}  // namespace

TEST_CASE("bracket on A_4: table value, transposition sign, repeated argument") {
  const NaryAlgebra a4 = build_filippov(4);
  CHECK(a4.bracket({unit(4, 0), unit(4, 1), unit(4, 2)}) == unit(4, 3));
  CHECK(a4.bracket({unit(4, 1), unit(4, 0), unit(4, 2)}) == RatVector(-unit(4, 3)));

  SeededRng rng(11);
  const RatVector v = rng.vector(4);
  const RatVector w = rng.vector(4);
  CHECK(a4.bracket({v, v, w}) == zero(4));
}

TEST_CASE("bracket antisymmetry under random transpositions") {
  SeededRng rng(21);
  const NaryAlgebra a5 = build_filippov(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<RatVector> args;
    for (int i = 0; i < a5.arity(); ++i) args.push_back(rng.vector(5));
    const RatVector base = a5.bracket(args);
    const auto p = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(a5.arity() - 1)));
    std::swap(args[p], args[p + 1]);
    CHECK(a5.bracket(args) == RatVector(-base));
  }
}

TEST_CASE("bracket argument validation") {
  const NaryAlgebra a4 = build_filippov(4);
  CHECK_THROWS_AS(a4.bracket({unit(4, 0), unit(4, 1)}), std::invalid_argument);
  CHECK_THROWS_AS(a4.bracket({unit(3, 0), unit(4, 1), unit(4, 2)}), std::invalid_argument);
}

TEST_CASE("check_anticommutativity: clean table and corrupted table") {
  CHECK(check_anticommutativity(build_filippov(4)).ok());

  NaryAlgebra corrupted(3, 4);
  RatVector v = zero(4);
  v(3) = 1;
  corrupted.unchecked_set_product({1, 0, 2}, v);  // not strictly increasing
  const auto report = check_anticommutativity(corrupted);
  CHECK(report.violations.size() == 1);

  CHECK_THROWS_AS(corrupted.set_product({1, 0, 2}, v), std::invalid_argument);
  CHECK_THROWS_AS(corrupted.set_product({0, 0, 2}, v), std::invalid_argument);
  CHECK_THROWS_AS(corrupted.set_product({0, 1, 5}, v), std::invalid_argument);
}

TEST_CASE("check_filippov: A_m pass, abelian algebra passes vacuously") {
  for (Index m = 4; m <= 6; ++m) {
    const FilippovReport report = check_filippov(build_filippov(m));
    CHECK(report.ok());
    CHECK(report.instances_checked > 0);
  }
  const NaryAlgebra abelian(2, 2);  // all products zero
  CHECK(check_filippov(abelian).ok());
}

TEST_CASE("derivation_space of A_4: dimension 6, self-consistent basis") {
  const NaryAlgebra a4 = build_filippov(4);
  const DerivationSpace der = derivation_space(a4);
  CHECK(der.space.dim() == 6);
  CHECK(der.basis_maps.size() == 6);
  for (const LinearMap& b : der.basis_maps) {
    CHECK(is_derivation(a4, b).is_derivation);
  }
}

TEST_CASE("is_derivation: zero map passes, diagonal map fails on A_4") {
  const NaryAlgebra a4 = build_filippov(4);
  CHECK(is_derivation(a4, RatMatrix::Zero(4, 4)).is_derivation);

  LinearMap diag = RatMatrix::Zero(4, 4);
  diag(0, 0) = 1;
  const auto check = is_derivation(a4, diag);
  CHECK(!check.is_derivation);
  CHECK(!check.violations.empty());
}

TEST_CASE("orbit_subspace: A_4 moves e1 across its perp, zero stays zero") {
  const DerivationSpace& der = filippov_derivations(4);
  const Subspace orbit = orbit_subspace(der, unit(4, 0));
  RatMatrix perp(3, 4);
  perp.setZero();
  perp(0, 1) = perp(1, 2) = perp(2, 3) = 1;
  CHECK(orbit == Subspace::span_of_rows(perp));

  CHECK(orbit_subspace(der, zero(4)).dim() == 0);
}

TEST_CASE("multi_point_witness: feasible, infeasible and degenerate cases") {
  const DerivationSpace& der = filippov_derivations(4);

  const auto w = multi_point_witness(der, {{unit(4, 0), unit(4, 1)}});
  REQUIRE(w.has_value());
  CHECK(w->verify(der));
  CHECK(w->witness * unit(4, 0) == unit(4, 1));

  CHECK(!multi_point_witness(der, {{unit(4, 0), unit(4, 0)}}).has_value());

  const auto z = multi_point_witness(der, {{zero(4), zero(4)}});
  REQUIRE(z.has_value());
  CHECK(z->witness == RatMatrix::Zero(4, 4));
}

TEST_CASE("every derivation is its own multi-point witness") {
  SeededRng rng(31);
  const DerivationSpace& der = filippov_derivations(5);
  for (int trial = 0; trial < 5; ++trial) {
    LinearMap d = RatMatrix::Zero(5, 5);
    for (const LinearMap& b : der.basis_maps) d += rng.small_rational() * b;
    std::vector<PointConstraint> table;
    for (int s = 0; s < 4; ++s) {
      const RatVector x = rng.vector(5);
      table.emplace_back(x, d * x);
    }
    const auto w = multi_point_witness(der, table);
    REQUIRE(w.has_value());
    CHECK(w->verify(der));
  }
}

TEST_CASE("locder_upper_bound: paper probes pin the antisymmetric space on A_4") {
  const NaryAlgebra a4 = build_filippov(4);
  std::vector<RatVector> probes;
  for (const Probe& p : default_probe_family(4)) probes.push_back(p.vector);
  const Subspace bound = locder_upper_bound(a4, probes);
  CHECK(bound.dim() == 6);
  CHECK(bound == filippov_derivations(4).space);

  // vacuous probe: the zero vector constrains nothing
  CHECK(locder_upper_bound(a4, {zero(4)}).dim() == 16);
  CHECK_THROWS_AS(locder_upper_bound(a4, {}), std::invalid_argument);
}

TEST_CASE("locder_upper_bound is monotone in the probe family") {
  const NaryAlgebra a4 = build_filippov(4);
  std::vector<RatVector> family;
  Index last = 16;
  for (const Probe& p : default_probe_family(4)) {
    family.push_back(p.vector);
    const Index dim = locder_upper_bound(a4, family).dim();
    CHECK(dim <= last);
    last = dim;
  }
}

TEST_CASE("is_local_derivation: antisymmetric passes, diagonal fails at Xi_1") {
  const NaryAlgebra a4 = build_filippov(4);
  LinearMap delta12 = RatMatrix::Zero(4, 4);
  delta12(0, 1) = 1;
  delta12(1, 0) = -1;
  CHECK(is_local_derivation(a4, delta12, {}).passed);

  LinearMap diag = RatMatrix::Zero(4, 4);
  diag(0, 0) = 1;
  const auto verdict = is_local_derivation(a4, diag, {});
  CHECK(!verdict.passed);
  REQUIRE(verdict.certificate.has_value());
  CHECK(*verdict.certificate == unit(4, 0));
}

TEST_CASE("direct_sum: block structure, embedded derivations, mixed brackets vanish") {
  const NaryAlgebra a4 = build_filippov(4);
  const NaryAlgebra sum = direct_sum(a4, a4);
  CHECK(sum.arity() == 3);
  CHECK(sum.dim() == 8);

  // block brackets act as in A_4
  RatVector expect = zero(8);
  expect(3) = 1;
  CHECK(sum.bracket({unit(8, 0), unit(8, 1), unit(8, 2)}) == expect);
  // mixed arguments vanish
  CHECK(sum.bracket({unit(8, 0), unit(8, 1), unit(8, 4)}) == zero(8));

  // block-diagonal embeddings of Delta_kl are derivations; dim >= 12
  for (Index off : {Index(0), Index(4)}) {
    LinearMap d = RatMatrix::Zero(8, 8);
    d(off + 0, off + 1) = 1;
    d(off + 1, off + 0) = -1;
    CHECK(is_derivation(sum, d).is_derivation);
  }
  CHECK(derivation_space(sum).space.dim() >= 12);
  CHECK(check_filippov(sum).ok());

  CHECK_THROWS_AS(direct_sum(a4, build_filippov(5)), std::invalid_argument);
}
