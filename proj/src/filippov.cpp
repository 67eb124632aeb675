#include "naryder/filippov.hpp"

#include <map>
#include <mutex>

namespace naryder {

NaryAlgebra build_filippov(Index m) {
  if (m < 4) {
    throw std::domain_error("build_filippov: supported dimensions start at m = 4");
  }
  NaryAlgebra a(static_cast<int>(m) - 1, m);
  for (Index i = 0; i < m; ++i) {
    NaryAlgebra::Tuple tuple;
    for (Index j = 0; j < m; ++j) {
      if (j != i) tuple.push_back(j);
    }
    RatVector value = RatVector::Zero(m);
    // (-1)^(m+i) with 1-based i
    value(i) = ((m + i + 1) % 2 == 0) ? 1 : -1;
    a.set_product(std::move(tuple), std::move(value));
  }
  return a;
}

const DerivationSpace& filippov_derivations(Index m) {
  static std::mutex mu;
  static std::map<Index, DerivationSpace> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) {
    it = cache.emplace(m, derivation_space(build_filippov(m))).first;
  }
  return it->second;
}

DerCharacterizationReport verify_der_characterization(Index m) {
  const NaryAlgebra a = build_filippov(m);
  const DerivationSpace& der = filippov_derivations(m);

  DerCharacterizationReport report;
  report.dim = der.space.dim();
  report.dim_ok = report.dim == m * (m - 1) / 2;

  report.antisymmetric_ok = true;
  for (const LinearMap& b : der.basis_maps) {
    if (b.transpose() != RatMatrix(-b)) {
      report.antisymmetric_ok = false;
      break;
    }
    for (Index i = 0; i < m; ++i) {
      if (b(i, i) != 0) {
        report.antisymmetric_ok = false;
        break;
      }
    }
  }

  report.converse_ok = true;
  for (Index k = 0; k < m && report.converse_ok; ++k) {
    for (Index l = k + 1; l < m && report.converse_ok; ++l) {
      LinearMap delta = RatMatrix::Zero(m, m);
      delta(k, l) = 1;
      delta(l, k) = -1;
      report.converse_ok = is_derivation(a, delta).is_derivation;
    }
  }
  return report;
}

LocalCertificate local_certificate(Index m, const LinearMap& map) {
  if (map.rows() != m || map.cols() != m) {
    throw std::invalid_argument("local_certificate: map must be m x m");
  }
  const DerivationSpace& der = filippov_derivations(m);
  for (const Probe& probe : default_probe_family(m)) {
    if (!multi_point_witness(der, {{probe.vector, map * probe.vector}})) {
      return {false, std::nullopt, probe};
    }
  }
  // All probes pass only for antisymmetric maps, and those lie in Der(A_m);
  // the unique derivation agreeing with the map everywhere is the map itself.
  return {true, map, std::nullopt};
}

GlobalWitnessVerdict sampled_map_global_witness(Index m,
                                                const std::vector<PointConstraint>& table) {
  if (table.empty()) {
    throw std::invalid_argument("sampled_map_global_witness: table must be nonempty");
  }
  const DerivationSpace& der = filippov_derivations(m);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i; j < table.size(); ++j) {
      if (!multi_point_witness(der, {table[i], table[j]})) {
        GlobalWitnessVerdict verdict;
        verdict.status = GlobalWitnessStatus::FailPairwise;
        verdict.failing_pair = std::make_pair(i, j);
        return verdict;
      }
    }
  }
  auto global = multi_point_witness(der, table);
  if (!global) {
    return {GlobalWitnessStatus::FailGlobal, std::nullopt, std::nullopt};
  }
  return {GlobalWitnessStatus::Pass, std::nullopt, std::move(global)};
}

}  // namespace naryder
