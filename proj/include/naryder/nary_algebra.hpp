#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "naryder/linalg.hpp"

namespace naryder {

/// Finite-dimensional anticommutative n-ary algebra over the rationals.
/// Structure constants are stored only on strictly increasing (0-based)
/// basis tuples; evaluation recovers all other signs from permutation
/// parity, so antisymmetry holds by construction.
class NaryAlgebra {
 public:
  using Tuple = std::vector<Index>;
  using Table = std::map<Tuple, RatVector>;

  NaryAlgebra(int arity, Index dim);

  int arity() const { return arity_; }
  Index dim() const { return dim_; }
  const Table& products() const { return table_; }

  /// Stores [e_{t_1},...,e_{t_n}] = value for a strictly increasing tuple.
  /// Throws std::invalid_argument on malformed tuples or wrong value length.
  void set_product(Tuple tuple, RatVector value);

  /// Stores a raw table entry with no validation. Exists so that
  /// check_anticommutativity has malformed representations to flag.
  void unchecked_set_product(Tuple tuple, RatVector value);

  /// Bracket of basis elements in any order; zero on repeated indices,
  /// permutation sign otherwise.
  RatVector basis_bracket(const Tuple& tuple) const;

  /// Full multilinear bracket of arity-many coordinate vectors.
  RatVector bracket(const std::vector<RatVector>& args) const;

 private:
  int arity_;
  Index dim_;
  Table table_;
};

struct TableViolation {
  NaryAlgebra::Tuple tuple;
  std::string detail;
};

struct AnticommutativityReport {
  std::vector<TableViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Verifies the representation invariant (strictly increasing stored tuples)
/// and the sign rule under evaluation: swapping two arguments of a stored
/// tuple negates the bracket.
AnticommutativityReport check_anticommutativity(const NaryAlgebra& a);

struct FilippovViolation {
  NaryAlgebra::Tuple x;  // inner tuple
  NaryAlgebra::Tuple y;  // outer tuple (arity-1 entries)
  RatVector lhs;
  RatVector rhs;
};

struct FilippovReport {
  std::size_t instances_checked = 0;
  std::vector<FilippovViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Evaluates the fundamental identity
///   [[x_1..x_n], y_2..y_n] = sum_i [x_1.., [x_i, y_2..y_n], ..x_n]
/// over all strictly increasing basis tuples x and y.
FilippovReport check_filippov(const NaryAlgebra& a);

struct DerivationSpace {
  Index dim = 0;                     // algebra dimension d
  Subspace space;                    // subspace of flattened d x d matrices
  std::vector<LinearMap> basis_maps; // canonical basis, one map per space row
};

/// Exact kernel of the Leibniz system over all strictly increasing basis
/// tuples; unknowns are the d^2 entries of the map.
DerivationSpace derivation_space(const NaryAlgebra& a);

struct LeibnizViolation {
  NaryAlgebra::Tuple tuple;
  RatVector lhs;
  RatVector rhs;
};

struct DerivationCheck {
  bool is_derivation = false;
  std::vector<LeibnizViolation> violations;
};

DerivationCheck is_derivation(const NaryAlgebra& a, const LinearMap& map);

/// span{ D(x) : D in Der } in canonical form.
Subspace orbit_subspace(const DerivationSpace& der, const RatVector& x);

using PointConstraint = std::pair<RatVector, RatVector>;  // (point, target)

/// Certified record of a derivation matching requested point constraints.
struct WitnessTrace {
  std::vector<PointConstraint> constraints;
  RatVector coefficients;  // coordinates in der.basis_maps
  LinearMap witness;

  /// Exact replay: witness equals the basis combination and meets every
  /// constraint.
  bool verify(const DerivationSpace& der) const;
};

/// Derivation D with D(x_i) = y_i for all constraints, when the stacked
/// linear system over Der coordinates is consistent.
std::optional<WitnessTrace> multi_point_witness(const DerivationSpace& der,
                                                const std::vector<PointConstraint>& constraints);

/// 0/1 indicator vector of a support set, the Xi probes of the
/// local-derivation machinery.
struct Probe {
  std::vector<Index> support;  // 0-based, strictly increasing
  RatVector vector;
  std::string name() const;  // e.g. "Xi_2+Xi_5" (1-based)
};

Probe make_probe(Index dim, std::vector<Index> support);

/// All Xi_k followed by all Xi_k + Xi_l (k < l), in lexicographic order.
std::vector<Probe> default_probe_family(Index dim);

/// Space of all matrices B with B(p) in orbit_subspace(Der(a), p) for every
/// probe p. Each condition is linear in B, so this is an exact subspace of
/// d x d matrices containing LocDer(a). Throws on an empty probe list.
Subspace locder_upper_bound(const NaryAlgebra& a, const std::vector<RatVector>& probes);

struct LocalDerivationVerdict {
  bool passed = false;                    // PASS-ON-SAMPLES when true
  std::optional<RatVector> certificate;   // failing point when false
};

/// Necessary-condition check: FAIL with a certificate point when some probe
/// or sample admits no single-point witness; PASS-ON-SAMPLES otherwise.
LocalDerivationVerdict is_local_derivation(const NaryAlgebra& a, const LinearMap& map,
                                           const std::vector<RatVector>& samples);

/// Block direct sum; brackets with arguments from both blocks vanish.
/// Throws std::invalid_argument on arity mismatch.
NaryAlgebra direct_sum(const NaryAlgebra& a1, const NaryAlgebra& a2);

/// Enumerates strictly increasing k-tuples from {0..dim-1} in lexicographic
/// order.
std::vector<NaryAlgebra::Tuple> increasing_tuples(Index dim, int k);

}  // namespace naryder
