#include "naryder/malcev.hpp"

#include <Eigen/LU>

#include "naryder/rational.hpp"

namespace naryder {

namespace {

RatVector unit_vec(Index k) {
  RatVector v = RatVector::Zero(8);
  v(k) = 1;
  return v;
}

Eigen::MatrixXd to_double_matrix(const RatMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  }
  return out;
}

Eigen::VectorXd to_double_vector(const RatVector& v) {
  Eigen::VectorXd out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
  return out;
}

}  // namespace

NaryAlgebra build_m8() {
  NaryAlgebra a(3, 8);
  for (Index i = 0; i < 8; ++i) {
    for (Index j = i + 1; j < 8; ++j) {
      for (Index k = j + 1; k < 8; ++k) {
        const RatOctonion value = ternary_bracket(RatOctonion::unit(i), RatOctonion::unit(j),
                                                  RatOctonion::unit(k));
        if (!value.is_zero()) a.set_product({i, j, k}, value.coords());
      }
    }
  }
  return a;
}

const NaryAlgebra& m8() {
  static const NaryAlgebra a = build_m8();
  return a;
}

const DerivationSpace& m8_derivations() {
  static const DerivationSpace der = derivation_space(m8());
  return der;
}

namespace {

// The 21 published combinations: first +Delta_{ij}, then sign * Delta_{kl},
// with Delta_{ij} = e_ij - e_ji (1-based labels).
struct BasisEntry {
  int i, j;
  int sign;
  int k, l;
};

constexpr BasisEntry kListedBasis[21] = {
    {2, 3, -1, 1, 4}, {2, 4, +1, 1, 3}, {2, 5, -1, 1, 6}, {2, 6, +1, 1, 5}, {2, 7, +1, 1, 8},
    {2, 8, -1, 1, 7}, {3, 4, -1, 1, 2}, {3, 5, -1, 1, 7}, {3, 6, -1, 1, 8}, {3, 7, +1, 1, 5},
    {3, 8, +1, 1, 6}, {4, 5, -1, 1, 8}, {4, 6, +1, 1, 7}, {4, 7, -1, 1, 6}, {4, 8, +1, 1, 5},
    {5, 6, -1, 1, 2}, {5, 7, -1, 1, 3}, {5, 8, -1, 1, 4}, {6, 7, +1, 1, 4}, {6, 8, -1, 1, 3},
    {7, 8, +1, 1, 2}};

LinearMap delta(int i, int j) {  // 1-based matrix units
  LinearMap d = RatMatrix::Zero(8, 8);
  d(i - 1, j - 1) = 1;
  d(j - 1, i - 1) = -1;
  return d;
}

}  // namespace

M8BasisReport m8_basis_check() {
  M8BasisReport report;
  const NaryAlgebra& a = m8();
  report.all_derivations = true;
  for (const BasisEntry& e : kListedBasis) {
    LinearMap b = delta(e.i, e.j) + Rational(e.sign) * delta(e.k, e.l);
    if (!is_derivation(a, b).is_derivation) report.all_derivations = false;
    report.listed_basis.push_back(std::move(b));
  }
  RatMatrix stacked(21, 64);
  for (Index r = 0; r < 21; ++r) {
    stacked.row(r) = flatten(report.listed_basis[static_cast<std::size_t>(r)]).transpose();
  }
  const Subspace span = Subspace::span_of_rows(stacked);
  report.independent = span.dim() == 21;
  report.spans_derivation_space = span == m8_derivations().space;
  return report;
}

namespace {

// alpha_1..alpha_21 positions (0-based), column-major below the diagonal,
// columns 2..7
constexpr std::pair<int, int> kAlphaPos[21] = {
    {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2},
    {4, 3}, {5, 3}, {6, 3}, {7, 3}, {5, 4}, {6, 4}, {7, 4}, {6, 5}, {7, 5}, {7, 6}};

Eigen::Matrix<Rational, 7, 1> gamma_from_alpha(const Eigen::Matrix<Rational, 21, 1>& a) {
  Eigen::Matrix<Rational, 7, 1> g;
  g(0) = -a(6) - a(15) + a(20);
  g(1) = a(1) - a(16) - a(19);
  g(2) = -a(0) - a(17) + a(18);
  g(3) = a(3) + a(9) + a(14);
  g(4) = -a(2) + a(10) - a(13);
  g(5) = -a(5) - a(7) + a(12);
  g(6) = a(4) - a(8) - a(11);
  return g;
}

}  // namespace

GammaRelationError::GammaRelationError(int relation, const Rational& expected,
                                       const Rational& actual)
    : std::domain_error("gamma relation " + std::to_string(relation) +
                        " violated: expected gamma_" + std::to_string(relation) + " = " +
                        to_string(expected) + ", matrix has " + to_string(actual)),
      relation_(relation) {}

M8DerivationParams params_from_matrix(const LinearMap& m) {
  if (m.rows() != 8 || m.cols() != 8) {
    throw std::invalid_argument("params_from_matrix: matrix must be 8 x 8");
  }
  if (RatMatrix(m.transpose()) != RatMatrix(-m)) {
    throw std::invalid_argument("params_from_matrix: matrix must be antisymmetric");
  }
  M8DerivationParams p;
  for (int k = 0; k < 21; ++k) p.alpha(k) = m(kAlphaPos[k].first, kAlphaPos[k].second);
  const auto expected = gamma_from_alpha(p.alpha);
  for (int i = 0; i < 7; ++i) {
    const Rational actual = m(i + 1, 0);
    if (actual != expected(i)) throw GammaRelationError(i + 1, expected(i), actual);
    p.gamma(i) = actual;
  }
  if (params_to_matrix(p) != m) {
    throw std::logic_error("params_from_matrix: roundtrip mismatch");
  }
  return p;
}

LinearMap params_to_matrix(const M8DerivationParams& p) {
  const auto expected = gamma_from_alpha(p.alpha);
  for (int i = 0; i < 7; ++i) {
    if (p.gamma(i) != expected(i)) throw GammaRelationError(i + 1, expected(i), p.gamma(i));
  }
  LinearMap m = RatMatrix::Zero(8, 8);
  for (int k = 0; k < 21; ++k) {
    m(kAlphaPos[k].first, kAlphaPos[k].second) = p.alpha(k);
    m(kAlphaPos[k].second, kAlphaPos[k].first) = -p.alpha(k);
  }
  for (int i = 0; i < 7; ++i) {
    m(i + 1, 0) = p.gamma(i);
    m(0, i + 1) = -p.gamma(i);
  }
  if (!m8_derivations().space.contains(flatten(m))) {
    throw std::logic_error("params_to_matrix: result is not in Der(M_8)");
  }
  return m;
}

namespace {

template <typename Scalar>
Frame<Scalar> assemble_frame(const Octonion<Scalar>& x, const Octonion<Scalar>& y,
                             const Octonion<Scalar>& z) {
  const Octonion<Scalar> xy = x * y;
  return Frame<Scalar>{{Octonion<Scalar>::one(), x, y, xy, z, x * z, y * z, xy * z}};
}

void validate_exact_frame(const Frame<Rational>& f) {
  for (Index i = 0; i < 8; ++i) {
    for (Index j = i; j < 8; ++j) {
      if (form(f.elements[static_cast<std::size_t>(i)], f.elements[static_cast<std::size_t>(j)]) !=
          Rational(i == j ? 1 : 0)) {
        throw std::logic_error("frame is not orthonormal");
      }
    }
    if (i >= 1) {
      const RatOctonion& e = f.elements[static_cast<std::size_t>(i)];
      if (!(e * e == -RatOctonion::one())) {
        throw std::logic_error("frame element does not square to -e_1");
      }
    }
  }
}

}  // namespace

Frame<Rational> exact_frame_from_pair(const RatOctonion& x, const RatOctonion& y,
                                      int search_bound) {
  if (!(x * x == -RatOctonion::one()) || !(y * y == -RatOctonion::one())) {
    throw std::domain_error("exact_frame_from_pair: inputs must square to -e_1");
  }
  if (form(x, y) != 0) {
    throw std::domain_error("exact_frame_from_pair: inputs must be orthogonal");
  }
  const RatOctonion xy = x * y;
  RatMatrix constraints(4, 8);
  constraints.row(0) = RatOctonion::one().coords().transpose();
  constraints.row(1) = x.coords().transpose();
  constraints.row(2) = y.coords().transpose();
  constraints.row(3) = xy.coords().transpose();
  const Subspace perp = nullspace(constraints);
  if (perp.dim() != 4) {
    throw std::logic_error("exact_frame_from_pair: perp space has unexpected dimension");
  }

  // integer-scaled copy of the canonical perp basis, plus its Gram matrix in
  // raw integers so candidate norms cost a handful of gcd-free operations
  RatMatrix rows = perp.basis();
  for (Index r = 0; r < 4; ++r) {
    BigInt l = 1;
    for (Index c = 0; c < 8; ++c) l = boost::multiprecision::lcm(l, denominator(rows(r, c)));
    if (l != 1) rows.row(r) *= Rational(l);
  }
  BigInt gram[4][4];
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      BigInt acc = 0;
      for (Index c = 0; c < 8; ++c) acc += numerator(rows(i, c)) * numerator(rows(j, c));
      gram[i][j] = acc;
    }
  }

  // component values ordered by absolute value, positive first
  std::vector<int> values = {0};
  for (int b = 1; b <= search_bound; ++b) {
    values.push_back(b);
    values.push_back(-b);
  }
  for (int shell = 1; shell <= search_bound; ++shell) {
    const int span = 2 * shell + 1;
    for (int c0 = 0; c0 < span; ++c0) {
      for (int c1 = 0; c1 < span; ++c1) {
        for (int c2 = 0; c2 < span; ++c2) {
          for (int c3 = 0; c3 < span; ++c3) {
            const int coeff[4] = {values[static_cast<std::size_t>(c0)],
                                  values[static_cast<std::size_t>(c1)],
                                  values[static_cast<std::size_t>(c2)],
                                  values[static_cast<std::size_t>(c3)]};
            int maxabs = 0;
            for (int v : coeff) maxabs = std::max(maxabs, std::abs(v));
            if (maxabs != shell) continue;  // enumerated in an earlier shell
            BigInt n = 0;
            for (int i = 0; i < 4; ++i) {
              if (coeff[i] == 0) continue;
              n += (coeff[i] * coeff[i]) * gram[i][i];
              for (int j = i + 1; j < 4; ++j) {
                if (coeff[j] != 0) n += (2 * coeff[i] * coeff[j]) * gram[i][j];
              }
            }
            if (n == 0) continue;
            const BigInt root = boost::multiprecision::sqrt(n);
            if (root * root != n) continue;
            RatVector z0 = RatVector::Zero(8);
            for (int r = 0; r < 4; ++r) {
              if (coeff[r] != 0) z0 += Rational(coeff[r]) * rows.row(r).transpose();
            }
            const RatOctonion z{RatOctonion::Coords(z0 / Rational(root))};
            Frame<Rational> frame = assemble_frame(x, y, z);
            validate_exact_frame(frame);
            return frame;
          }
        }
      }
    }
  }
  throw NoExactUnitError(
      "exact_frame_from_pair: no rational unit found in the perp space within max-norm " +
      std::to_string(search_bound) + "; use approx mode or the solve-based witness");
}

Frame<double> approx_frame_from_pair(const Octonion<double>& x, const Octonion<double>& y,
                                     double tol) {
  const auto near_zero = [tol](const Octonion<double>& o) {
    return o.coords().cwiseAbs().maxCoeff() <= tol;
  };
  if (!near_zero(x * x + Octonion<double>::one()) || !near_zero(y * y + Octonion<double>::one())) {
    throw std::domain_error("approx_frame_from_pair: inputs must square to -e_1 within tol");
  }
  if (std::abs(form(x, y)) > tol) {
    throw std::domain_error("approx_frame_from_pair: inputs must be orthogonal within tol");
  }
  const Octonion<double> xy = x * y;
  Eigen::MatrixXd constraints(4, 8);
  constraints.row(0) = Octonion<double>::one().coords().transpose();
  constraints.row(1) = x.coords().transpose();
  constraints.row(2) = y.coords().transpose();
  constraints.row(3) = xy.coords().transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(constraints);
  const Eigen::MatrixXd kernel = lu.kernel();
  if (kernel.cols() < 1) {
    throw std::logic_error("approx_frame_from_pair: empty perp space");
  }
  Eigen::Matrix<double, 8, 1> zc = kernel.col(0);
  zc /= zc.norm();
  return assemble_frame(x, y, Octonion<double>(zc));
}

bool preserves_octonion_structure(const LinearMap& phi) {
  if (phi.rows() != 8 || phi.cols() != 8) return false;
  if (RatMatrix(phi.transpose() * phi) != RatMatrix::Identity(8, 8)) return false;
  const OctonionTable& table = octonion_table();
  std::array<RatOctonion, 8> images;
  for (Index i = 0; i < 8; ++i) images[static_cast<std::size_t>(i)] = RatOctonion{phi.col(i)};
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const RatOctonion lhs =
          Rational(table.sign[i][j]) * images[static_cast<std::size_t>(table.index[i][j])];
      if (!(lhs == images[i] * images[j])) return false;
    }
  }
  for (Index i = 0; i < 8; ++i) {
    for (Index j = i + 1; j < 8; ++j) {
      for (Index k = j + 1; k < 8; ++k) {
        const RatOctonion lhs{RatVector(
            phi * ternary_bracket(RatOctonion::unit(i), RatOctonion::unit(j), RatOctonion::unit(k))
                      .coords())};
        const RatOctonion rhs =
            ternary_bracket(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)],
                            images[static_cast<std::size_t>(k)]);
        if (!(lhs == rhs)) return false;
      }
    }
  }
  return true;
}

LinearMap automorphism_from_frame(const Frame<Rational>& frame) {
  LinearMap phi(8, 8);
  for (Index i = 0; i < 8; ++i) phi.col(i) = frame.elements[static_cast<std::size_t>(i)].coords();
  if (!preserves_octonion_structure(phi)) {
    throw std::logic_error(
        "automorphism_from_frame: frame does not induce an automorphism (sign-convention bug)");
  }
  return phi;
}

Eigen::MatrixXd automorphism_from_frame(const Frame<double>& frame, double tol) {
  Eigen::MatrixXd phi(8, 8);
  for (Index i = 0; i < 8; ++i) phi.col(i) = frame.elements[static_cast<std::size_t>(i)].coords();
  if ((phi.transpose() * phi - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() > tol) {
    throw std::logic_error("automorphism_from_frame: frame is not orthonormal within tol");
  }
  const OctonionTable& table = octonion_table();
  std::array<Octonion<double>, 8> images;
  for (Index i = 0; i < 8; ++i) images[static_cast<std::size_t>(i)] = Octonion<double>{phi.col(i)};
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const Octonion<double> lhs =
          double(table.sign[i][j]) * images[static_cast<std::size_t>(table.index[i][j])];
      const Octonion<double> rhs = images[i] * images[j];
      if ((lhs.coords() - rhs.coords()).cwiseAbs().maxCoeff() > tol) {
        throw std::logic_error("automorphism_from_frame: multiplicativity fails within tol");
      }
    }
  }
  return phi;
}

const LinearMap& m8_base_derivation() {
  static const LinearMap base = [] {
    const auto witness =
        multi_point_witness(m8_derivations(), {{unit_vec(0), RatVector::Zero(8)},
                                               {unit_vec(1), unit_vec(2)}});
    if (!witness) {
      throw std::logic_error("m8_base_derivation: constrained solve is infeasible");
    }
    const LinearMap& d = witness->witness;
    if (d.col(0) != RatVector::Zero(8) || d.col(1) != unit_vec(2)) {
      throw std::logic_error("m8_base_derivation: constraints not met");
    }
    return d;
  }();
  return base;
}

double m8_leibniz_residual(const Eigen::MatrixXd& map) {
  const NaryAlgebra& a = m8();
  double residual = 0.0;
  for (const auto& t : increasing_tuples(8, 3)) {
    const Eigen::VectorXd bracket = to_double_vector(a.basis_bracket(t));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(8);
    for (int k = 0; k < 3; ++k) {
      // replace slot k by the image of e_{t_k}; expand by linearity
      const Eigen::VectorXd img = map.col(t[static_cast<std::size_t>(k)]);
      for (Index j = 0; j < 8; ++j) {
        if (img(j) == 0.0) continue;
        NaryAlgebra::Tuple probe = t;
        probe[static_cast<std::size_t>(k)] = j;
        rhs += img(j) * to_double_vector(a.basis_bracket(probe));
      }
    }
    const Eigen::VectorXd lhs = map * bracket;
    residual = std::max(residual, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return residual;
}

namespace {

WitnessTrace single_point_trace(const RatVector& x, const RatVector& target,
                                const RatVector& coefficients, const LinearMap& witness) {
  return WitnessTrace{{{x, target}}, coefficients, witness};
}

RatVector der_coordinates(const LinearMap& map) {
  const DerivationSpace& der = m8_derivations();
  RatMatrix system(64, static_cast<Index>(der.basis_maps.size()));
  for (std::size_t k = 0; k < der.basis_maps.size(); ++k) {
    system.col(static_cast<Index>(k)) = flatten(der.basis_maps[k]);
  }
  const auto coeffs = solve(system, flatten(map));
  if (!coeffs) {
    throw std::logic_error("der_coordinates: map is not in Der(M_8)");
  }
  return *coeffs;
}

}  // namespace

ConstructiveWitness constructive_local_witness(const LinearMap& nabla, const RatVector& x,
                                               const M8WitnessOptions& opts) {
  if (nabla.rows() != 8 || nabla.cols() != 8 || x.size() != 8) {
    throw std::invalid_argument("constructive_local_witness: expected an 8 x 8 map and a point");
  }
  if (RatMatrix(nabla.transpose()) != RatMatrix(-nabla)) {
    throw std::domain_error("constructive_local_witness: the map must be antisymmetric");
  }
  const DerivationSpace& der = m8_derivations();

  ConstructiveWitness out;
  out.mode = opts.mode;

  bool x_is_zero = true;
  for (Index i = 0; i < 8 && x_is_zero; ++i) x_is_zero = x(i) == 0;
  if (x_is_zero) {
    out.case_tag = 1;
    out.witness = RatMatrix::Zero(8, 8);
    out.witness_approx = Eigen::MatrixXd::Zero(8, 8);
    out.trace = single_point_trace(x, RatVector::Zero(8),
                                   RatVector::Zero(static_cast<Index>(der.basis_maps.size())),
                                   out.witness);
    return out;
  }

  const auto at_e1 = multi_point_witness(der, {{unit_vec(0), nabla.col(0)}});
  if (!at_e1) {
    throw std::logic_error("constructive_local_witness: no derivation matches at e_1");
  }
  const LinearMap reduced = nabla - at_e1->witness;
  const RatVector reduced_image = reduced * x;

  RatVector x_im = x;
  x_im(0) = 0;
  bool im_zero = true;
  for (Index i = 1; i < 8 && im_zero; ++i) im_zero = x_im(i) == 0;
  bool ri_zero = true;
  for (Index i = 0; i < 8 && ri_zero; ++i) ri_zero = reduced_image(i) == 0;

  if (im_zero || ri_zero) {
    // trivial case: the e_1-witness already matches at x
    out.case_tag = 1;
    out.witness = at_e1->witness;
    out.witness_approx = to_double_matrix(out.witness);
    out.trace = single_point_trace(x, nabla * x, at_e1->coefficients, out.witness);
    if (out.witness * x != nabla * x) {
      throw std::logic_error("constructive_local_witness: trivial-case value mismatch");
    }
    return out;
  }

  out.case_tag = 2;
  const Rational nx = x_im.dot(x_im);
  const Rational ny = reduced_image.dot(reduced_image);
  out.lambda0 = x(0);

  if (opts.mode == WitnessMode::Exact) {
    const auto lambda = rational_sqrt(nx);
    if (!lambda) {
      throw NotRationalSquareError(
          "constructive_local_witness: the norm of the imaginary part of x is not a rational "
          "square (" + to_string(nx) + "); use approx mode or multi_point_witness");
    }
    const auto mu = rational_sqrt(ny);
    if (!mu) {
      throw NotRationalSquareError(
          "constructive_local_witness: the norm of the reduced image is not a rational square (" +
          to_string(ny) + "); use approx mode or multi_point_witness");
    }
    const RatOctonion x1{RatOctonion::Coords(x_im / *lambda)};
    const RatOctonion y1{RatOctonion::Coords(reduced_image / *mu)};
    const LinearMap phi = automorphism_from_frame(exact_frame_from_pair(x1, y1, opts.search_bound));
    const Rational factor = *mu / *lambda;
    out.mu_over_lambda = factor;
    out.witness =
        at_e1->witness + factor * RatMatrix(phi * m8_base_derivation() * phi.transpose());
    out.witness_approx = to_double_matrix(out.witness);
    if (!is_derivation(m8(), out.witness).is_derivation) {
      throw std::logic_error("constructive_local_witness: conjugated map left Der(M_8)");
    }
    if (out.witness * x != nabla * x) {
      throw std::logic_error("constructive_local_witness: witness misses the target value");
    }
    out.trace = single_point_trace(x, nabla * x, der_coordinates(out.witness), out.witness);
    return out;
  }

  // approx mode: square roots in binary64, exact arithmetic elsewhere
  const double lambda = std::sqrt(to_double(nx));
  const double mu = std::sqrt(to_double(ny));
  const Octonion<double> x1{Eigen::Matrix<double, 8, 1>(to_double_vector(x_im) / lambda)};
  const Octonion<double> y1{Eigen::Matrix<double, 8, 1>(to_double_vector(reduced_image) / mu)};
  const Eigen::MatrixXd phi =
      automorphism_from_frame(approx_frame_from_pair(x1, y1, opts.tol), opts.tol);
  const double factor = mu / lambda;
  out.mu_over_lambda = std::nullopt;
  out.witness = RatMatrix::Zero(8, 8);  // no exact witness in approx mode
  out.witness_approx = to_double_matrix(at_e1->witness) +
                       factor * (phi * to_double_matrix(m8_base_derivation()) * phi.transpose());
  out.value_residual =
      (out.witness_approx * to_double_vector(x) - to_double_vector(RatVector(nabla * x)))
          .cwiseAbs()
          .maxCoeff();
  out.leibniz_residual = m8_leibniz_residual(out.witness_approx);
  return out;
}

TwoLocalReport explore_2local(int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("explore_2local: trials must be at least 1");
  const DerivationSpace& der = m8_derivations();
  TwoLocalReport report;
  report.master_seed = seed;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = SeededRng::derive(seed, static_cast<std::uint64_t>(t));
    SeededRng rng(trial_seed);
    const LinearMap nabla = rng.antisymmetric(8);
    const RatVector x = rng.vector(8);
    const RatVector y = rng.vector(8);
    const bool feasible =
        multi_point_witness(der, {{x, nabla * x}, {y, nabla * y}}).has_value();
    if (feasible) {
      ++report.feasible;
    } else {
      ++report.infeasible;
      report.infeasible_cases.push_back({trial_seed, nabla, x, y});
    }
  }
  return report;
}

}  // namespace naryder
