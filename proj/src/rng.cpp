#include "naryder/rng.hpp"

namespace naryder {

std::uint64_t SeededRng::below(std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::int64_t SeededRng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational SeededRng::small_rational() {
  const std::int64_t p = between(-9, 9);
  const std::int64_t q = between(1, 9);
  return Rational(p) / Rational(q);
}

Rational SeededRng::small_nonzero_rational() {
  Rational r;
  do {
    r = small_rational();
  } while (r == 0);
  return r;
}

RatVector SeededRng::vector(Index dim) {
  RatVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = small_rational();
  return v;
}

RatVector SeededRng::nonzero_vector(Index dim) {
  RatVector v;
  bool zero = true;
  do {
    v = vector(dim);
    zero = true;
    for (Index i = 0; i < dim && zero; ++i) zero = v(i) == 0;
  } while (zero);
  return v;
}

RatMatrix SeededRng::matrix(Index rows, Index cols) {
  RatMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = small_rational();
  }
  return m;
}

RatMatrix SeededRng::antisymmetric(Index dim) {
  RatMatrix m = RatMatrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i + 1; j < dim; ++j) {
      m(i, j) = small_rational();
      m(j, i) = -m(i, j);
    }
  }
  return m;
}

std::uint64_t SeededRng::derive(std::uint64_t master, std::uint64_t k) {
  std::uint64_t z = master + (k + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace naryder
