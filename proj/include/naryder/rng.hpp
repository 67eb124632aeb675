#pragma once

#include <cstdint>
#include <random>

#include "naryder/linalg.hpp"

namespace naryder {

/// Deterministic random source. All sampling goes through explicit rejection
/// so a given seed reproduces the same stream on every platform (the
/// standard distributions are implementation-defined and are not used).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  /// Random coordinate p/q with |p| <= 9, 1 <= q <= 9.
  Rational small_rational();
  Rational small_nonzero_rational();

  RatVector vector(Index dim);
  RatVector nonzero_vector(Index dim);
  RatMatrix matrix(Index rows, Index cols);
  RatMatrix antisymmetric(Index dim);

  /// Stream seed for trial k derived from a master seed (splitmix64 step).
  static std::uint64_t derive(std::uint64_t master, std::uint64_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace naryder
