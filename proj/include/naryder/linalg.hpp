#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include "naryder/rational.hpp"

namespace naryder {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = DenseMatrix<Rational>;
using RatVector = DenseVector<Rational>;
using Index = Eigen::Index;

/// A linear map acts on coordinate columns: (L v)_i = sum_j L(i,j) v_j.
using LinearMap = RatMatrix;

struct RrefResult {
  RatMatrix reduced;              // unique reduced row-echelon form, same shape
  Index rank = 0;                 // number of nonzero rows
  std::vector<Index> pivot_cols;  // one column index per pivot row
};

/// Reduced row-echelon form over the rationals. Rows are first scaled to
/// integer entries, eliminated by fraction-free cross-multiplication
/// (Bareiss-style, dividing by the previous pivot), and pivots are
/// normalised to 1 in a final pass.
RrefResult rref(const RatMatrix& m);

class Subspace;

/// Kernel {v : m v = 0} in canonical form; dim = cols - rank.
Subspace nullspace(const RatMatrix& m);

/// A particular solution of m v = b with free variables fixed to zero,
/// or nullopt when the system is inconsistent.
/// Throws std::invalid_argument when b.size() != m.rows().
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b);

/// Linear subspace of Q^ambient held as a reduced row-echelon basis, so
/// equal subspaces have bit-identical bases.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of the given ambient dimension.
  explicit Subspace(Index ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span_of_rows(const RatMatrix& rows);
  static Subspace full(Index ambient);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  /// dim x ambient matrix whose rows form the canonical basis.
  const RatMatrix& basis() const { return basis_; }

  bool contains(const RatVector& v) const;
  bool contains(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
  }

 private:
  Index ambient_ = 0;
  RatMatrix basis_;  // rows in reduced echelon form
};

/// Row-major flattening of a square matrix, the coordinate convention for
/// spaces of d x d matrices (entry (i,j) lands at index i*d + j).
RatVector flatten(const RatMatrix& m);
RatMatrix unflatten(const RatVector& v, Index rows, Index cols);

}  // namespace naryder
