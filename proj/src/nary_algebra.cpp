#include "naryder/nary_algebra.hpp"

#include <algorithm>
#include <functional>

namespace naryder {

namespace {

bool strictly_increasing(const NaryAlgebra::Tuple& t) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i - 1] >= t[i]) return false;
  }
  return true;
}

// Sorts in place, returns the permutation sign, or 0 on repeated entries.
int sort_with_parity(NaryAlgebra::Tuple& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i) {
    for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i - 1] == t[i]) return 0;
  }
  return sign;
}

std::string tuple_string(const NaryAlgebra::Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i] + 1);  // 1-based in reports
  }
  return s + ")";
}

}  // namespace

NaryAlgebra::NaryAlgebra(int arity, Index dim) : arity_(arity), dim_(dim) {
  if (arity < 2) throw std::invalid_argument("NaryAlgebra: arity must be at least 2");
  if (dim < 1) throw std::invalid_argument("NaryAlgebra: dimension must be positive");
}

void NaryAlgebra::set_product(Tuple tuple, RatVector value) {
  if (static_cast<int>(tuple.size()) != arity_) {
    throw std::invalid_argument("set_product: tuple length must equal arity");
  }
  if (!tuple.empty() && (tuple.front() < 0 || tuple.back() >= dim_)) {
    throw std::invalid_argument("set_product: tuple index out of range");
  }
  if (!strictly_increasing(tuple)) {
    throw std::invalid_argument("set_product: tuple must be strictly increasing");
  }
  if (value.size() != dim_) {
    throw std::invalid_argument("set_product: value length must equal dimension");
  }
  table_[std::move(tuple)] = std::move(value);
}

void NaryAlgebra::unchecked_set_product(Tuple tuple, RatVector value) {
  table_[std::move(tuple)] = std::move(value);
}

RatVector NaryAlgebra::basis_bracket(const Tuple& tuple) const {
  if (static_cast<int>(tuple.size()) != arity_) {
    throw std::invalid_argument("basis_bracket: tuple length must equal arity");
  }
  Tuple sorted = tuple;
  const int sign = sort_with_parity(sorted);
  if (sign == 0) return RatVector::Zero(dim_);
  const auto it = table_.find(sorted);
  if (it == table_.end()) return RatVector::Zero(dim_);
  return sign > 0 ? it->second : RatVector(-it->second);
}

RatVector NaryAlgebra::bracket(const std::vector<RatVector>& args) const {
  if (static_cast<int>(args.size()) != arity_) {
    throw std::invalid_argument("bracket: argument count must equal arity");
  }
  for (const RatVector& v : args) {
    if (v.size() != dim_) throw std::invalid_argument("bracket: argument dimension mismatch");
  }
  RatVector out = RatVector::Zero(dim_);
  Tuple idx(static_cast<std::size_t>(arity_));
  std::function<void(int, const Rational&)> expand = [&](int slot, const Rational& coeff) {
    if (slot == arity_) {
      out += coeff * basis_bracket(idx);
      return;
    }
    for (Index i = 0; i < dim_; ++i) {
      const Rational& c = args[static_cast<std::size_t>(slot)](i);
      if (c == 0) continue;
      idx[static_cast<std::size_t>(slot)] = i;
      expand(slot + 1, coeff * c);
    }
  };
  expand(0, Rational(1));
  return out;
}

AnticommutativityReport check_anticommutativity(const NaryAlgebra& a) {
  AnticommutativityReport report;
  for (const auto& [tuple, value] : a.products()) {
    if (static_cast<int>(tuple.size()) != a.arity()) {
      report.violations.push_back({tuple, "stored tuple length differs from arity"});
      continue;
    }
    if (!tuple.empty() && (tuple.front() < 0 || tuple.back() >= a.dim() ||
                           *std::max_element(tuple.begin(), tuple.end()) >= a.dim())) {
      report.violations.push_back({tuple, "stored tuple index out of range"});
      continue;
    }
    if (!strictly_increasing(tuple)) {
      report.violations.push_back(
          {tuple, "stored tuple " + tuple_string(tuple) + " is not strictly increasing"});
      continue;
    }
    if (value.size() != a.dim()) {
      report.violations.push_back({tuple, "stored value length differs from dimension"});
      continue;
    }
    // sign rule under the evaluation path, one transposition at a time
    for (std::size_t p = 0; p + 1 < tuple.size(); ++p) {
      NaryAlgebra::Tuple swapped = tuple;
      std::swap(swapped[p], swapped[p + 1]);
      if (a.basis_bracket(swapped) != RatVector(-a.basis_bracket(tuple))) {
        report.violations.push_back(
            {tuple, "transposition at position " + std::to_string(p) + " breaks the sign rule"});
      }
    }
  }
  return report;
}

std::vector<NaryAlgebra::Tuple> increasing_tuples(Index dim, int k) {
  std::vector<NaryAlgebra::Tuple> out;
  if (k < 0 || static_cast<Index>(k) > dim) return out;
  NaryAlgebra::Tuple t(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(t);
    int pos = k - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == dim - k + pos) --pos;
    if (pos < 0) break;
    ++t[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < k; ++q) {
      t[static_cast<std::size_t>(q)] = t[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
  return out;
}

FilippovReport check_filippov(const NaryAlgebra& a) {
  FilippovReport report;
  const int n = a.arity();
  const Index d = a.dim();
  std::vector<RatVector> units;
  units.reserve(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    RatVector e = RatVector::Zero(d);
    e(i) = 1;
    units.push_back(std::move(e));
  }

  const auto xs = increasing_tuples(d, n);
  const auto ys = increasing_tuples(d, n - 1);
  for (const auto& x : xs) {
    const RatVector inner = a.basis_bracket(x);
    for (const auto& y : ys) {
      // lhs = [[x_1..x_n], y_2..y_n]
      std::vector<RatVector> lhs_args;
      lhs_args.push_back(inner);
      for (Index yi : y) lhs_args.push_back(units[static_cast<std::size_t>(yi)]);
      const RatVector lhs = a.bracket(lhs_args);

      RatVector rhs = RatVector::Zero(d);
      for (int i = 0; i < n; ++i) {
        NaryAlgebra::Tuple slot_tuple;
        slot_tuple.push_back(x[static_cast<std::size_t>(i)]);
        for (Index yi : y) slot_tuple.push_back(yi);
        const RatVector replaced = a.basis_bracket(slot_tuple);
        std::vector<RatVector> rhs_args;
        for (int k = 0; k < n; ++k) {
          rhs_args.push_back(k == i ? replaced : units[static_cast<std::size_t>(x[static_cast<std::size_t>(k)])]);
        }
        rhs += a.bracket(rhs_args);
      }
      ++report.instances_checked;
      if (lhs != rhs) report.violations.push_back({x, y, lhs, rhs});
    }
  }
  return report;
}

DerivationSpace derivation_space(const NaryAlgebra& a) {
  const int n = a.arity();
  const Index d = a.dim();
  const auto tuples = increasing_tuples(d, n);
  RatMatrix system = RatMatrix::Zero(static_cast<Index>(tuples.size()) * d, d * d);

  Index block = 0;
  for (const auto& t : tuples) {
    const RatVector c = a.basis_bracket(t);
    // D [e_t] term: coefficient of D_{ij} is c_j in output coordinate i
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        if (c(j) != 0) system(block + i, i * d + j) += c(j);
      }
    }
    // - sum_k [e_{t_1},..., D e_{t_k}, ...]: D e_{t_k} = sum_j D_{j,t_k} e_j
    for (int k = 0; k < n; ++k) {
      NaryAlgebra::Tuple probe = t;
      for (Index j = 0; j < d; ++j) {
        probe[static_cast<std::size_t>(k)] = j;
        const RatVector w = a.basis_bracket(probe);
        for (Index i = 0; i < d; ++i) {
          if (w(i) != 0) system(block + i, j * d + t[static_cast<std::size_t>(k)]) -= w(i);
        }
      }
    }
    block += d;
  }

  DerivationSpace der;
  der.dim = d;
  der.space = nullspace(system);
  der.basis_maps.reserve(static_cast<std::size_t>(der.space.dim()));
  for (Index r = 0; r < der.space.dim(); ++r) {
    der.basis_maps.push_back(unflatten(der.space.basis().row(r).transpose(), d, d));
  }
  return der;
}

DerivationCheck is_derivation(const NaryAlgebra& a, const LinearMap& map) {
  const Index d = a.dim();
  if (map.rows() != d || map.cols() != d) {
    throw std::invalid_argument("is_derivation: map must be d x d");
  }
  DerivationCheck check;
  const int n = a.arity();
  std::vector<RatVector> units;
  for (Index i = 0; i < d; ++i) {
    RatVector e = RatVector::Zero(d);
    e(i) = 1;
    units.push_back(std::move(e));
  }
  for (const auto& t : increasing_tuples(d, n)) {
    const RatVector lhs = map * a.basis_bracket(t);
    RatVector rhs = RatVector::Zero(d);
    for (int k = 0; k < n; ++k) {
      std::vector<RatVector> args;
      for (int s = 0; s < n; ++s) {
        const Index idx = t[static_cast<std::size_t>(s)];
        args.push_back(s == k ? RatVector(map.col(idx)) : units[static_cast<std::size_t>(idx)]);
      }
      rhs += a.bracket(args);
    }
    if (lhs != rhs) check.violations.push_back({t, lhs, rhs});
  }
  check.is_derivation = check.violations.empty();
  return check;
}

Subspace orbit_subspace(const DerivationSpace& der, const RatVector& x) {
  if (x.size() != der.dim) {
    throw std::invalid_argument("orbit_subspace: point dimension mismatch");
  }
  RatMatrix rows(static_cast<Index>(der.basis_maps.size()), der.dim);
  for (std::size_t k = 0; k < der.basis_maps.size(); ++k) {
    rows.row(static_cast<Index>(k)) = (der.basis_maps[k] * x).transpose();
  }
  return Subspace::span_of_rows(rows);
}

bool WitnessTrace::verify(const DerivationSpace& der) const {
  if (coefficients.size() != static_cast<Index>(der.basis_maps.size())) return false;
  LinearMap combo = RatMatrix::Zero(der.dim, der.dim);
  for (Index k = 0; k < coefficients.size(); ++k) {
    combo += coefficients(k) * der.basis_maps[static_cast<std::size_t>(k)];
  }
  if (combo != witness) return false;
  for (const auto& [x, y] : constraints) {
    if (witness * x != y) return false;
  }
  return true;
}

std::optional<WitnessTrace> multi_point_witness(const DerivationSpace& der,
                                                const std::vector<PointConstraint>& constraints) {
  const Index d = der.dim;
  const Index k = static_cast<Index>(der.basis_maps.size());
  for (const auto& [x, y] : constraints) {
    if (x.size() != d || y.size() != d) {
      throw std::invalid_argument("multi_point_witness: constraint dimension mismatch");
    }
  }
  RatMatrix system(static_cast<Index>(constraints.size()) * d, k);
  RatVector rhs(static_cast<Index>(constraints.size()) * d);
  Index block = 0;
  for (const auto& [x, y] : constraints) {
    for (Index c = 0; c < k; ++c) {
      system.block(block, c, d, 1) = der.basis_maps[static_cast<std::size_t>(c)] * x;
    }
    rhs.segment(block, d) = y;
    block += d;
  }
  const auto coeffs = solve(system, rhs);
  if (!coeffs) return std::nullopt;
  LinearMap witness = RatMatrix::Zero(d, d);
  for (Index c = 0; c < k; ++c) {
    witness += (*coeffs)(c)*der.basis_maps[static_cast<std::size_t>(c)];
  }
  return WitnessTrace{constraints, *coeffs, std::move(witness)};
}

std::string Probe::name() const {
  std::string s;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) s += "+";
    s += "Xi_" + std::to_string(support[i] + 1);
  }
  return s.empty() ? "0" : s;
}

Probe make_probe(Index dim, std::vector<Index> support) {
  RatVector v = RatVector::Zero(dim);
  for (Index i : support) {
    if (i < 0 || i >= dim) throw std::invalid_argument("make_probe: index out of range");
    v(i) = 1;
  }
  return Probe{std::move(support), std::move(v)};
}

std::vector<Probe> default_probe_family(Index dim) {
  std::vector<Probe> probes;
  for (Index k = 0; k < dim; ++k) probes.push_back(make_probe(dim, {k}));
  for (Index k = 0; k < dim; ++k) {
    for (Index l = k + 1; l < dim; ++l) probes.push_back(make_probe(dim, {k, l}));
  }
  return probes;
}

Subspace locder_upper_bound(const NaryAlgebra& a, const std::vector<RatVector>& probes) {
  if (probes.empty()) throw std::invalid_argument("locder_upper_bound: probe list must be nonempty");
  const Index d = a.dim();
  const DerivationSpace der = derivation_space(a);

  std::vector<RatMatrix> constraint_blocks;
  Index total_rows = 0;
  for (const RatVector& p : probes) {
    if (p.size() != d) throw std::invalid_argument("locder_upper_bound: probe dimension mismatch");
    const Subspace orbit = orbit_subspace(der, p);
    const Subspace perp = nullspace(orbit.basis());
    // B p must lie in the orbit: f . (B p) = 0 for every annihilator row f
    RatMatrix block = RatMatrix::Zero(perp.dim(), d * d);
    for (Index r = 0; r < perp.dim(); ++r) {
      for (Index i = 0; i < d; ++i) {
        const Rational& fi = perp.basis()(r, i);
        if (fi == 0) continue;
        for (Index j = 0; j < d; ++j) {
          if (p(j) != 0) block(r, i * d + j) += fi * p(j);
        }
      }
    }
    total_rows += block.rows();
    constraint_blocks.push_back(std::move(block));
  }

  RatMatrix system(total_rows, d * d);
  Index at = 0;
  for (const RatMatrix& block : constraint_blocks) {
    system.middleRows(at, block.rows()) = block;
    at += block.rows();
  }
  return nullspace(system);
}

LocalDerivationVerdict is_local_derivation(const NaryAlgebra& a, const LinearMap& map,
                                           const std::vector<RatVector>& samples) {
  const Index d = a.dim();
  if (map.rows() != d || map.cols() != d) {
    throw std::invalid_argument("is_local_derivation: map must be d x d");
  }
  const DerivationSpace der = derivation_space(a);
  std::vector<RatVector> points;
  for (const Probe& p : default_probe_family(d)) points.push_back(p.vector);
  for (const RatVector& s : samples) points.push_back(s);
  for (const RatVector& x : points) {
    if (x.size() != d) throw std::invalid_argument("is_local_derivation: sample dimension mismatch");
    if (!multi_point_witness(der, {{x, map * x}})) {
      return {false, x};
    }
  }
  return {true, std::nullopt};
}

NaryAlgebra direct_sum(const NaryAlgebra& a1, const NaryAlgebra& a2) {
  if (a1.arity() != a2.arity()) {
    throw std::invalid_argument("direct_sum: arity mismatch");
  }
  const Index d1 = a1.dim();
  NaryAlgebra sum(a1.arity(), d1 + a2.dim());
  for (const auto& [tuple, value] : a1.products()) {
    RatVector v = RatVector::Zero(sum.dim());
    v.head(d1) = value;
    sum.set_product(tuple, std::move(v));
  }
  for (const auto& [tuple, value] : a2.products()) {
    NaryAlgebra::Tuple shifted = tuple;
    for (Index& i : shifted) i += d1;
    RatVector v = RatVector::Zero(sum.dim());
    v.tail(a2.dim()) = value;
    sum.set_product(std::move(shifted), std::move(v));
  }
  return sum;
}

}  // namespace naryder
