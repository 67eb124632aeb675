#include "naryder/linalg.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace naryder {

namespace {

// Scales each row by the lcm of its denominators so elimination runs on
// integer entries. Row scaling leaves the reduced echelon form unchanged.
void scale_rows_to_integers(RatMatrix& w) {
  for (Index r = 0; r < w.rows(); ++r) {
    BigInt l = 1;
    for (Index c = 0; c < w.cols(); ++c) {
      l = boost::multiprecision::lcm(l, denominator(w(r, c)));
    }
    if (l != 1) w.row(r) *= Rational(l);
  }
}

}  // namespace

RrefResult rref(const RatMatrix& m) {
  RatMatrix w = m;
  scale_rows_to_integers(w);
  const Index rows = w.rows();
  const Index cols = w.cols();

  std::vector<Index> pivot_cols;
  std::vector<Index> pivot_rows;
  Rational prev(1);
  Index pr = 0;
  for (Index c = 0; c < cols && pr < rows; ++c) {
    Index sel = -1;
    for (Index i = pr; i < rows; ++i) {
      if (w(i, c) != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != pr) w.row(sel).swap(w.row(pr));
    const Rational p = w(pr, c);
    for (Index i = 0; i < rows; ++i) {
      if (i == pr) continue;
      const Rational f = w(i, c);
      if (f == 0) continue;  // untouched rows keep their entries
      for (Index j = 0; j < cols; ++j) {
        w(i, j) = (p * w(i, j) - f * w(pr, j)) / prev;
      }
    }
    prev = p;
    pivot_cols.push_back(c);
    pivot_rows.push_back(pr);
    ++pr;
  }

  // Normalisation pass: unit pivots. Off-pivot entries in pivot columns are
  // already zero from the full-column elimination above.
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
    w.row(pivot_rows[k]) /= w(pivot_rows[k], pivot_cols[k]);
  }
  return {std::move(w), static_cast<Index>(pivot_cols.size()), std::move(pivot_cols)};
}

Subspace nullspace(const RatMatrix& m) {
  const RrefResult r = rref(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : r.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

  RatMatrix basis(cols - r.rank, cols);
  basis.setZero();
  Index row = 0;
  for (Index j = 0; j < cols; ++j) {
    if (is_pivot[static_cast<std::size_t>(j)]) continue;
    basis(row, j) = 1;
    for (Index k = 0; k < r.rank; ++k) {
      basis(row, r.pivot_cols[static_cast<std::size_t>(k)]) = -r.reduced(k, j);
    }
    ++row;
  }
  return Subspace::span_of_rows(basis);
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) {
    throw std::invalid_argument("solve: right-hand side length does not match row count");
  }
  RatMatrix aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  const RrefResult r = rref(aug);
  RatVector x = RatVector::Zero(m.cols());
  for (Index k = 0; k < r.rank; ++k) {
    const Index c = r.pivot_cols[static_cast<std::size_t>(k)];
    if (c == m.cols()) return std::nullopt;  // pivot in the augmented column
    x(c) = r.reduced(k, m.cols());
  }
  return x;
}

Subspace Subspace::span_of_rows(const RatMatrix& rows) {
  Subspace s(rows.cols());
  const RrefResult r = rref(rows);
  s.basis_ = r.reduced.topRows(r.rank);
  return s;
}

Subspace Subspace::full(Index ambient) {
  Subspace s(ambient);
  s.basis_ = RatMatrix::Identity(ambient, ambient);
  return s;
}

bool Subspace::contains(const RatVector& v) const {
  if (v.size() != ambient_) {
    throw std::invalid_argument("Subspace::contains: ambient dimension mismatch");
  }
  RatVector w = v;
  for (Index r = 0; r < basis_.rows(); ++r) {
    // basis_ is in reduced echelon form: the leading 1 marks the pivot column
    Index p = 0;
    while (p < ambient_ && basis_(r, p) == 0) ++p;
    if (w(p) != 0) w -= w(p) * basis_.row(r).transpose();
  }
  for (Index i = 0; i < w.size(); ++i) {
    if (w(i) != 0) return false;
  }
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_) {
    throw std::invalid_argument("Subspace::contains: ambient dimension mismatch");
  }
  for (Index r = 0; r < other.basis_.rows(); ++r) {
    if (!contains(other.basis_.row(r).transpose())) return false;
  }
  return true;
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_dim() != ambient_) {
    throw std::invalid_argument("Subspace::intersect: ambient dimension mismatch");
  }
  // S cap T = (S_perp + T_perp)_perp, all three steps canonical.
  const Subspace sp = nullspace(basis_);
  const Subspace tp = nullspace(other.basis_);
  RatMatrix stacked(sp.dim() + tp.dim(), ambient_);
  stacked.topRows(sp.dim()) = sp.basis();
  stacked.bottomRows(tp.dim()) = tp.basis();
  return nullspace(Subspace::span_of_rows(stacked).basis());
}

RatVector flatten(const RatMatrix& m) {
  RatVector v(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

RatMatrix unflatten(const RatVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw std::invalid_argument("unflatten: size mismatch");
  }
  RatMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  }
  return m;
}

}  // namespace naryder
