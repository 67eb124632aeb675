#pragma once

#include <optional>
#include <variant>

#include "naryder/nary_algebra.hpp"

namespace naryder {

/// The (m-1)-ary, m-dimensional simple Filippov algebra with
/// [e_1,...,^e_i,...,e_m] = (-1)^(m+i) e_i. Throws std::domain_error for
/// m < 4 (the supported statements start there).
NaryAlgebra build_filippov(Index m);

/// Derivation space of A_m, computed once per m and cached.
const DerivationSpace& filippov_derivations(Index m);

struct DerCharacterizationReport {
  Index dim = 0;
  bool dim_ok = false;            // dim == m(m-1)/2
  bool antisymmetric_ok = false;  // every basis map antisymmetric, zero diagonal
  bool converse_ok = false;       // every elementary Delta_kl passes is_derivation
  bool ok() const { return dim_ok && antisymmetric_ok && converse_ok; }
};

DerCharacterizationReport verify_der_characterization(Index m);

/// Replays the probe sequence Xi_1..Xi_m then Xi_k + Xi_l (k < l): the first
/// probe with no single-point Der-witness is the counterexample. When every
/// probe passes, the map is antisymmetric and is its own derivation witness.
struct LocalCertificate {
  bool is_derivation = false;
  std::optional<LinearMap> witness;        // equals the input map when accepted
  std::optional<Probe> counterexample;     // first failing probe otherwise
};

LocalCertificate local_certificate(Index m, const LinearMap& map);

enum class GlobalWitnessStatus { Pass, FailPairwise, FailGlobal };

struct GlobalWitnessVerdict {
  GlobalWitnessStatus status = GlobalWitnessStatus::Pass;
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;  // table indices, FailPairwise
  std::optional<WitnessTrace> witness;                              // filled on Pass
};

/// Desk-scale shadow of the 2-local argument on a finite sampled table:
/// (i) every pair must be individually interpolable, (ii) one derivation
/// must fit all constraints at once.
GlobalWitnessVerdict sampled_map_global_witness(Index m,
                                                const std::vector<PointConstraint>& table);

}  // namespace naryder
