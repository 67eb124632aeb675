#pragma once

#include <optional>

#include "naryder/nary_algebra.hpp"
#include "naryder/octonion.hpp"

namespace naryder {

/// [x, y, z] = (x conj(y)) z - <y,z> x + <x,z> y - <x,y> z.
template <typename Scalar>
Octonion<Scalar> ternary_bracket(const Octonion<Scalar>& x, const Octonion<Scalar>& y,
                                 const Octonion<Scalar>& z) {
  return (x * y.conjugate()) * z - form(y, z) * x + form(x, z) * y - form(x, y) * z;
}

/// The ternary Malcev algebra on the octonions: 3-ary, 8-dimensional, with
/// structure constants from ternary_bracket on increasing basis triples.
NaryAlgebra build_m8();

const NaryAlgebra& m8();
const DerivationSpace& m8_derivations();

struct M8BasisReport {
  std::vector<LinearMap> listed_basis;  // the 21 published combinations
  bool all_derivations = false;
  bool independent = false;
  bool spans_derivation_space = false;
  bool ok() const { return all_derivations && independent && spans_derivation_space; }
};

/// Builds the 21 published basis elements (Delta_ij = e_ij - e_ji), checks
/// each against the Leibniz rule, and checks that they span the computed
/// derivation space.
M8BasisReport m8_basis_check();

/// Parameters of a derivation matrix of M_8: the 21 free lower-triangle
/// entries (columns 2..7 below the diagonal) and the 7 first-column entries
/// bound by the relations
///   g1 = -a7 - a16 + a21,  g2 = a2 - a17 - a20,  g3 = -a1 - a18 + a19,
///   g4 = a4 + a10 + a15,   g5 = -a3 + a11 - a14,
///   g6 = -a6 - a8 + a13,   g7 = a5 - a9 - a12.
struct M8DerivationParams {
  Eigen::Matrix<Rational, 21, 1> alpha;
  Eigen::Matrix<Rational, 7, 1> gamma;
};

/// Thrown when an antisymmetric matrix is not a derivation of M_8; names the
/// first violated gamma relation (1-based).
class GammaRelationError : public std::domain_error {
 public:
  GammaRelationError(int relation, const Rational& expected, const Rational& actual);
  int relation() const { return relation_; }

 private:
  int relation_;
};

/// Extracts (alpha, gamma) from a derivation matrix and asserts the exact
/// roundtrip. Throws std::invalid_argument for non-antisymmetric input and
/// GammaRelationError when a relation fails.
M8DerivationParams params_from_matrix(const LinearMap& m);

/// Rebuilds the matrix; validates the gamma relations and membership in
/// Der(M_8).
LinearMap params_to_matrix(const M8DerivationParams& p);

/// Orthonormal octonion system (e_1, x, y, xy, z, xz, yz, (xy)z); elements
/// 2..8 square to -e_1.
template <typename Scalar>
struct Frame {
  std::array<Octonion<Scalar>, 8> elements;
};

class NoExactUnitError : public std::runtime_error {
 public:
  explicit NoExactUnitError(const std::string& what) : std::runtime_error(what) {}
};

class NotRationalSquareError : public std::runtime_error {
 public:
  explicit NotRationalSquareError(const std::string& what) : std::runtime_error(what) {}
};

/// Completes (x, y) with x^2 = y^2 = -e_1, <x,y> = 0 to a frame. The fifth
/// element z is found by searching small integer combinations of the
/// canonical rational basis of {e_1,x,y,xy}^perp for a vector whose norm is
/// the square of a rational; coefficients are enumerated in growing max-norm
/// shells, components ordered 0, 1, -1, 2, -2, ... Throws NoExactUnitError
/// when the search bound is exhausted (advising approx mode).
Frame<Rational> exact_frame_from_pair(const RatOctonion& x, const RatOctonion& y,
                                      int search_bound = 6);

/// binary64 variant: preconditions within tol, z is the normalised first
/// kernel vector of the perp system.
Frame<double> approx_frame_from_pair(const Octonion<double>& x, const Octonion<double>& y,
                                     double tol = 1e-9);

/// Column i is the image of e_i. Postconditions asserted exactly: the map
/// preserves the binary product on all 64 basis pairs, the bilinear form,
/// and the ternary bracket on all 56 increasing triples.
LinearMap automorphism_from_frame(const Frame<Rational>& frame);
Eigen::MatrixXd automorphism_from_frame(const Frame<double>& frame, double tol);

/// Structural check used for the automorphism postconditions (and for
/// inverses in tests).
bool preserves_octonion_structure(const LinearMap& phi);

/// Base derivation D0 with D0(e_1) = 0 and D0(e_2) = e_3, computed once by a
/// constrained solve over Der(M_8) and validated.
const LinearMap& m8_base_derivation();

enum class WitnessMode { Exact, Approx };

struct M8WitnessOptions {
  WitnessMode mode = WitnessMode::Exact;
  double tol = 1e-9;
  int search_bound = 6;
};

/// Output of the constructive local-derivation witness: a derivation D_x
/// with D_x(x) = nabla(x), produced by the frame-conjugation construction.
struct ConstructiveWitness {
  WitnessMode mode = WitnessMode::Exact;
  int case_tag = 1;  // 1: the e_1-witness suffices; 2: conjugated correction
  LinearMap witness;              // exact-mode result
  Eigen::MatrixXd witness_approx; // filled in both modes
  std::optional<WitnessTrace> trace;  // exact mode only
  std::optional<Rational> lambda0, mu_over_lambda;  // case 2 decomposition
  double value_residual = 0.0;    // approx mode: |D_x(x) - nabla(x)|_inf
  double leibniz_residual = 0.0;  // approx mode: max Leibniz defect
};

/// Implements the constructive proof: split off a derivation matching
/// nabla at e_1, decompose x = lambda0 e_1 + lambda x_1, decompose the
/// reduced image as mu y_1, conjugate the base derivation by the frame
/// automorphism sending (e_2, e_3) to (x_1, y_1), and scale by mu/lambda.
/// Exact mode requires both norms to be rational squares
/// (NotRationalSquareError otherwise); nabla must be antisymmetric.
ConstructiveWitness constructive_local_witness(const LinearMap& nabla, const RatVector& x,
                                               const M8WitnessOptions& opts = {});

/// Max Leibniz defect of an arbitrary map on M_8 in binary64, for approx
/// verdicts.
double m8_leibniz_residual(const Eigen::MatrixXd& map);

struct TwoLocalCase {
  std::uint64_t trial_seed = 0;
  LinearMap nabla;
  RatVector x, y;
};

struct TwoLocalReport {
  std::uint64_t master_seed = 0;
  int trials = 0;
  int feasible = 0;
  int infeasible = 0;
  std::vector<TwoLocalCase> infeasible_cases;  // full instances for replay
};

/// Evidence harness for the open pair-interpolation question: draws random
/// antisymmetric maps and point pairs, records two-point witness
/// feasibility. No mathematical claim is made; outcomes are data.
TwoLocalReport explore_2local(int trials, std::uint64_t seed);

}  // namespace naryder
