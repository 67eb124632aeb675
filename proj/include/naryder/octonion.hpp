#pragma once

#include <array>
#include <string>
#include <vector>

#include "naryder/linalg.hpp"
#include "naryder/rng.hpp"

namespace naryder {

/// Products of basis units: e_i e_j = sign[i][j] * e_{index[i][j]} (0-based).
/// Built once by Cayley-Dickson doubling with (a,b)(c,d) = (ac - conj(d) b,
/// d a + b conj(c)), which lands the labels 1, a, b, ab, c, ac, bc, (ab)c on
/// e_1..e_8.
struct OctonionTable {
  std::array<std::array<int, 8>, 8> sign{};
  std::array<std::array<int, 8>, 8> index{};
};

const OctonionTable& octonion_table();

template <typename Scalar>
class Octonion {
 public:
  using Coords = Eigen::Matrix<Scalar, 8, 1>;

  Octonion() : c_(Coords::Zero()) {}
  explicit Octonion(const Coords& coords) : c_(coords) {}

  static Octonion unit(Index i) {
    Octonion o;
    o.c_(i) = Scalar(1);
    return o;
  }
  static Octonion one() { return unit(0); }

  const Coords& coords() const { return c_; }
  Scalar& operator()(Index i) { return c_(i); }
  const Scalar& operator()(Index i) const { return c_(i); }

  Octonion conjugate() const {
    Coords out = -c_;
    out(0) = c_(0);
    return Octonion(out);
  }

  /// Coordinates 2..8 only; the scalar part is dropped.
  Octonion imaginary_part() const {
    Coords out = c_;
    out(0) = Scalar(0);
    return Octonion(out);
  }

  Scalar norm_squared() const { return c_.dot(c_); }

  bool is_zero() const {
    for (Index i = 0; i < 8; ++i) {
      if (c_(i) != Scalar(0)) return false;
    }
    return true;
  }

  friend Octonion operator+(const Octonion& a, const Octonion& b) { return Octonion(a.c_ + b.c_); }
  friend Octonion operator-(const Octonion& a, const Octonion& b) { return Octonion(a.c_ - b.c_); }
  friend Octonion operator-(const Octonion& a) { return Octonion(Coords(-a.c_)); }
  friend Octonion operator*(const Scalar& s, const Octonion& a) { return Octonion(Coords(s * a.c_)); }
  friend Octonion operator/(const Octonion& a, const Scalar& s) { return Octonion(Coords(a.c_ / s)); }

  friend Octonion operator*(const Octonion& a, const Octonion& b) {
    const OctonionTable& table = octonion_table();
    Coords out = Coords::Zero();
    for (Index i = 0; i < 8; ++i) {
      if (a.c_(i) == Scalar(0)) continue;
      for (Index j = 0; j < 8; ++j) {
        if (b.c_(j) == Scalar(0)) continue;
        out(table.index[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) +=
            Scalar(table.sign[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) * a.c_(i) * b.c_(j);
      }
    }
    return Octonion(out);
  }

  friend bool operator==(const Octonion& a, const Octonion& b) { return a.c_ == b.c_; }

 private:
  Coords c_;
};

using RatOctonion = Octonion<Rational>;

/// e_1-coefficient of (x conj(y) + y conj(x)) / 2; the remaining
/// coefficients of that product vanish identically.
template <typename Scalar>
Scalar form(const Octonion<Scalar>& x, const Octonion<Scalar>& y) {
  const Octonion<Scalar> s = x * y.conjugate() + y * x.conjugate();
  return s(0) / Scalar(2);
}

struct IdentityWitness {
  Index i = 0;  // 0-based unit index
  std::array<Index, 6> jklmst{};
};

struct OctonionIdentityReport {
  std::vector<IdentityWitness> decomposition_witnesses;  // one per imaginary unit
  std::vector<std::string> violations;
  std::size_t checks = 0;
  std::size_t plain_moufang_checks = 0;  // triples with vw perpendicular to u
  std::uint64_t random_seed = 0;
  int random_triples = 0;
  bool ok() const { return violations.empty() && decomposition_witnesses.size() == 7; }
};

/// Verifies, over the generated table:
///  - every imaginary unit splits as e_i = e_1 e_i = e_j e_k = e_l e_m
///    = e_s e_t with e_k e_m = e_t for some distinct j..t (witness recorded);
///  - conj(u) v conj(u) = -conj(v), (u conj(v)) w = -(u conj(w)) v,
///    u (conj(v) w) = -v (conj(u) w) on all ordered triples of distinct
///    imaginary basis units and on seeded random exact orthonormal triples;
///  - the Moufang specialisation (uv)(wu) = vw - 2<vw,u>u on the same
///    triples, with the plain form (uv)(wu) = vw asserted whenever vw is
///    perpendicular to u (its domain of validity).
OctonionIdentityReport check_octonion_identities(int random_triples = 100,
                                                 std::uint64_t seed = 1);

/// Exact orthonormal triple of imaginary octonions: (e_2, e_3, e_5) pushed
/// through random rational reflections that fix e_1.
std::array<RatOctonion, 3> random_orthonormal_imaginary_triple(SeededRng& rng);

}  // namespace naryder
