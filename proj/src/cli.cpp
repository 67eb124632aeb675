#include "naryder/cli.hpp"

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "naryder/filippov.hpp"
#include "naryder/malcev.hpp"

namespace naryder {

namespace {

constexpr std::size_t kMaxListedViolations = 10;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("NARYDER_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("NARYDER_SEED must be an unsigned integer");
    }
  }
  return 1;
}

Json envelope(const std::string& command, const std::string& status, Json payload,
              Json seeds = Json::object()) {
  return Json{{"command", command},
              {"status", status},
              {"payload", std::move(payload)},
              {"seeds", std::move(seeds)}};
}

Json probe_json(const Probe& probe) {
  Json support = Json::array();
  for (Index i : probe.support) support.push_back(i + 1);
  return Json{{"name", probe.name()}, {"support", std::move(support)},
              {"vector", vector_json(probe.vector)}};
}

Json tuple_json(const NaryAlgebra::Tuple& t) {
  Json out = Json::array();
  for (Index i : t) out.push_back(i + 1);
  return out;
}

Json witness_trace_json(const WitnessTrace& trace) {
  Json constraints = Json::array();
  for (const auto& [x, y] : trace.constraints) {
    constraints.push_back(Json{{"point", vector_json(x)}, {"target", vector_json(y)}});
  }
  return Json{{"constraints", std::move(constraints)},
              {"coefficients", vector_json(trace.coefficients)},
              {"witness", matrix_json(trace.witness)}};
}

bool is_antisymmetric(const RatMatrix& m) {
  return RatMatrix(m.transpose()) == RatMatrix(-m);
}

CommandResult cmd_build(const std::string& algebra) {
  return {0, envelope("build", "PASS", algebra_json(load_algebra(algebra)))};
}

CommandResult cmd_check(const std::string& what, const std::string& algebra) {
  const NaryAlgebra a = load_algebra(algebra);
  if (what == "filippov") {
    const FilippovReport report = check_filippov(a);
    Json violations = Json::array();
    for (std::size_t i = 0; i < report.violations.size() && i < kMaxListedViolations; ++i) {
      const FilippovViolation& v = report.violations[i];
      violations.push_back(Json{{"x", tuple_json(v.x)},
                                {"y", tuple_json(v.y)},
                                {"lhs", vector_json(v.lhs)},
                                {"rhs", vector_json(v.rhs)}});
    }
    Json payload{{"instances_checked", report.instances_checked},
                 {"violation_count", report.violations.size()},
                 {"violations_shown", std::move(violations)}};
    return {report.ok() ? 0 : 1, envelope("check", report.ok() ? "PASS" : "FAIL", payload)};
  }
  if (what != "identities") {
    throw CLI::ValidationError("check", "expected 'identities' or 'filippov'");
  }
  const AnticommutativityReport anti = check_anticommutativity(a);
  Json anti_violations = Json::array();
  for (const TableViolation& v : anti.violations) {
    anti_violations.push_back(Json{{"tuple", tuple_json(v.tuple)}, {"detail", v.detail}});
  }
  Json payload{{"anticommutativity", Json{{"violations", std::move(anti_violations)}}}};
  Json seeds = Json::object();
  bool ok = anti.ok();
  if (algebra == "M8") {
    const std::uint64_t seed = default_seed();
    const OctonionIdentityReport oct = check_octonion_identities(100, seed);
    seeds["identities"] = seed;
    Json witnesses = Json::array();
    for (const IdentityWitness& w : oct.decomposition_witnesses) {
      witnesses.push_back(Json{{"unit", w.i + 1},
                               {"jklmst", {w.jklmst[0] + 1, w.jklmst[1] + 1, w.jklmst[2] + 1,
                                           w.jklmst[3] + 1, w.jklmst[4] + 1, w.jklmst[5] + 1}}});
    }
    payload["octonion_identities"] =
        Json{{"checks", oct.checks},
             {"plain_moufang_checks", oct.plain_moufang_checks},
             {"random_triples", oct.random_triples},
             {"decomposition_witnesses", std::move(witnesses)},
             {"violations", oct.violations}};
    ok = ok && oct.ok();
  }
  return {ok ? 0 : 1, envelope("check", ok ? "PASS" : "FAIL", payload, seeds)};
}

CommandResult cmd_der(const std::string& algebra) {
  const NaryAlgebra a = load_algebra(algebra);
  const DerivationSpace der = derivation_space(a);
  Json basis = Json::array();
  for (const LinearMap& b : der.basis_maps) basis.push_back(matrix_json(b));
  return {0, envelope("der", "PASS",
                      Json{{"dim", der.space.dim()}, {"basis", std::move(basis)}})};
}

CommandResult cmd_params(const std::string& matrix_path) {
  const RatMatrix m = matrix_from_json(load_json_file(matrix_path));
  try {
    const M8DerivationParams p = params_from_matrix(m);
    Json alpha = Json::array();
    for (int i = 0; i < 21; ++i) alpha.push_back(rational_json(p.alpha(i)));
    Json gamma = Json::array();
    for (int i = 0; i < 7; ++i) gamma.push_back(rational_json(p.gamma(i)));
    const RatMatrix rebuilt = params_to_matrix(p);
    return {0, envelope("params", "PASS",
                        Json{{"alpha", std::move(alpha)},
                             {"gamma", std::move(gamma)},
                             {"roundtrip_exact", rebuilt == m}})};
  } catch (const GammaRelationError& e) {
    return {1, envelope("params", "FAIL",
                        Json{{"error", e.what()}, {"violated_relation", e.relation()}})};
  }
}

CommandResult cmd_locder_bound(const std::string& algebra, const std::string& probes_arg) {
  const NaryAlgebra a = load_algebra(algebra);
  std::vector<RatVector> probes;
  if (probes_arg == "default") {
    for (const Probe& p : default_probe_family(a.dim())) probes.push_back(p.vector);
  } else {
    const Json j = load_json_file(probes_arg);
    if (!j.is_array()) throw std::invalid_argument("probes file: expected an array of vectors");
    for (const Json& v : j) probes.push_back(vector_from_json(v));
  }
  const Subspace bound = locder_upper_bound(a, probes);
  bool antisymmetric = true;
  Json basis = Json::array();
  for (Index r = 0; r < bound.dim(); ++r) {
    const RatMatrix b = unflatten(bound.basis().row(r).transpose(), a.dim(), a.dim());
    antisymmetric = antisymmetric && is_antisymmetric(b);
    basis.push_back(matrix_json(b));
  }
  return {0, envelope("locder-bound", "PASS",
                      Json{{"dim", bound.dim()},
                           {"antisymmetric", antisymmetric},
                           {"probe_count", probes.size()},
                           {"basis", std::move(basis)}})};
}

CommandResult cmd_witness(const std::string& algebra, const std::string& map_path,
                          const std::string& points_path) {
  const NaryAlgebra a = load_algebra(algebra);
  const RatMatrix map = matrix_from_json(load_json_file(map_path));
  if (map.rows() != a.dim() || map.cols() != a.dim()) {
    throw std::invalid_argument("witness: map shape does not match the algebra dimension");
  }
  const Json pts = load_json_file(points_path);
  if (!pts.is_array() || pts.empty()) {
    throw std::invalid_argument("witness: points file must be a nonempty array of vectors");
  }
  std::vector<PointConstraint> constraints;
  for (const Json& p : pts) {
    RatVector x = vector_from_json(p);
    constraints.emplace_back(x, map * x);
  }
  const DerivationSpace der = derivation_space(a);
  const auto trace = multi_point_witness(der, constraints);
  if (trace) {
    return {0, envelope("witness", "PASS", Json{{"trace", witness_trace_json(*trace)}})};
  }
  // certificate: the first single point that already fails, if any
  Json certificate;
  for (const auto& c : constraints) {
    if (!multi_point_witness(der, {c})) {
      certificate = Json{{"point", vector_json(c.first)}, {"target", vector_json(c.second)}};
      break;
    }
  }
  if (certificate.is_null()) certificate = Json{{"joint_system_infeasible", true}};
  return {1, envelope("witness", "INFEASIBLE", Json{{"certificate", std::move(certificate)}})};
}

CommandResult cmd_local_cert(const std::string& algebra, const std::string& map_path) {
  if (algebra.rfind("A:", 0) != 0) {
    throw std::invalid_argument("local-cert expects a Filippov identifier A:4..A:9");
  }
  const NaryAlgebra a = load_algebra(algebra);
  const RatMatrix map = matrix_from_json(load_json_file(map_path));
  if (map.rows() != a.dim() || map.cols() != a.dim()) {
    throw std::invalid_argument("local-cert: map shape does not match the algebra dimension");
  }
  const LocalCertificate cert = local_certificate(a.dim(), map);
  if (cert.is_derivation) {
    return {0, envelope("local-cert", "PASS",
                        Json{{"derivation", true}, {"witness", matrix_json(*cert.witness)}})};
  }
  return {1, envelope("local-cert", "FAIL",
                      Json{{"derivation", false}, {"probe", probe_json(*cert.counterexample)}})};
}

CommandResult cmd_m8_witness(const std::string& map_path, const std::string& point_path,
                             const std::string& mode, double tol, int search_bound) {
  const RatMatrix map = matrix_from_json(load_json_file(map_path));
  const RatVector x = vector_from_json(load_json_file(point_path));
  M8WitnessOptions opts;
  opts.mode = mode == "approx" ? WitnessMode::Approx : WitnessMode::Exact;
  opts.tol = tol;
  opts.search_bound = search_bound;
  const ConstructiveWitness w = constructive_local_witness(map, x, opts);
  Json payload{{"mode", mode}, {"case", w.case_tag}};
  if (w.mode == WitnessMode::Exact) {
    payload["witness"] = matrix_json(w.witness);
    payload["trace"] = witness_trace_json(*w.trace);
  } else {
    payload["witness"] = matrix_json(w.witness_approx);
    payload["tol"] = tol;
    payload["value_residual"] = w.value_residual;
    payload["leibniz_residual"] = w.leibniz_residual;
  }
  if (w.lambda0) payload["lambda0"] = rational_json(*w.lambda0);
  if (w.mu_over_lambda) payload["mu_over_lambda"] = rational_json(*w.mu_over_lambda);
  return {0, envelope("m8-witness", "PASS", std::move(payload))};
}

CommandResult cmd_explore_2local(int trials, std::uint64_t seed) {
  const TwoLocalReport report = explore_2local(trials, seed);
  Json cases = Json::array();
  for (const TwoLocalCase& c : report.infeasible_cases) {
    cases.push_back(Json{{"trial_seed", c.trial_seed},
                         {"nabla", matrix_json(c.nabla)},
                         {"x", vector_json(c.x)},
                         {"y", vector_json(c.y)}});
  }
  Json payload{{"trials", report.trials},
               {"feasible", report.feasible},
               {"infeasible", report.infeasible},
               {"infeasible_cases", std::move(cases)},
               {"note", "evidence only; pair-interpolation on M8 is an open question"}};
  return {0, envelope("explore-2local", "PASS", std::move(payload),
                      Json{{"master", report.master_seed}})};
}

CommandResult cmd_frame(const std::string& x_path, const std::string& y_path,
                        const std::string& mode, double tol, int search_bound) {
  const RatVector xv = vector_from_json(load_json_file(x_path));
  const RatVector yv = vector_from_json(load_json_file(y_path));
  if (xv.size() != 8 || yv.size() != 8) {
    throw std::invalid_argument("frame: x and y must have 8 coordinates");
  }
  Json payload{{"mode", mode}};
  if (mode == "approx") {
    Eigen::Matrix<double, 8, 1> xd, yd;
    for (Index i = 0; i < 8; ++i) {
      xd(i) = to_double(xv(i));
      yd(i) = to_double(yv(i));
    }
    const Frame<double> f = approx_frame_from_pair(Octonion<double>(xd), Octonion<double>(yd), tol);
    Json elements = Json::array();
    Eigen::MatrixXd phi(8, 8);
    for (Index i = 0; i < 8; ++i) phi.col(i) = f.elements[static_cast<std::size_t>(i)].coords();
    for (Index i = 0; i < 8; ++i) elements.push_back(matrix_json(Eigen::MatrixXd(phi.col(i).transpose())));
    payload["frame"] = std::move(elements);
    payload["automorphism"] = matrix_json(automorphism_from_frame(f, tol));
    payload["tol"] = tol;
  } else {
    const Frame<Rational> f =
        exact_frame_from_pair(RatOctonion{RatOctonion::Coords(xv)},
                              RatOctonion{RatOctonion::Coords(yv)}, search_bound);
    Json elements = Json::array();
    for (const RatOctonion& e : f.elements) elements.push_back(vector_json(e.coords()));
    payload["frame"] = std::move(elements);
    payload["automorphism"] = matrix_json(automorphism_from_frame(f));
  }
  return {0, envelope("frame", "PASS", std::move(payload))};
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"exact n-ary derivation toolkit"};
  app.require_subcommand(1);

  std::string algebra, what, map_path, points_path, point_path, x_path, y_path;
  std::string probes_arg = "default";
  std::string mode = "exact";
  double tol = 1e-9;
  int search_bound = 6;
  int trials = 100;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto* build = app.add_subcommand("build", "emit algebra JSON for a builtin identifier");
  build->add_option("algebra", algebra, "A:<m> or M8")->required();

  auto* check = app.add_subcommand("check", "run identity checks");
  check->add_option("what", what, "identities | filippov")->required();
  check->add_option("algebra", algebra, "builtin identifier or file")->required();

  auto* der = app.add_subcommand("der", "derivation space: dimension and basis");
  der->add_option("algebra", algebra)->required();

  auto* params = app.add_subcommand("params", "alpha/gamma parameters of an M8 derivation");
  params->add_option("matrix", map_path, "matrix JSON file")->required();

  auto* locder = app.add_subcommand("locder-bound", "probe upper bound for local derivations");
  locder->add_option("algebra", algebra)->required();
  locder->add_option("--probes", probes_arg, "default | file with an array of vectors");

  auto* witness = app.add_subcommand("witness", "multi-point derivation witness for a map");
  witness->add_option("algebra", algebra)->required();
  witness->add_option("--map", map_path)->required();
  witness->add_option("--points", points_path)->required();

  auto* cert = app.add_subcommand("local-cert", "probe-sequence certificate on A:<m>");
  cert->add_option("algebra", algebra, "A:<m>")->required();
  cert->add_option("--map", map_path)->required();

  auto* m8w = app.add_subcommand("m8-witness", "constructive local-derivation witness on M8");
  m8w->add_option("--map", map_path)->required();
  m8w->add_option("--point", point_path)->required();
  m8w->add_option("--mode", mode, "exact | approx")->check(CLI::IsMember({"exact", "approx"}));
  m8w->add_option("--tol", tol);
  m8w->add_option("--search-bound", search_bound);

  auto* explore = app.add_subcommand("explore-2local", "pair-interpolation evidence harness");
  explore->add_option("--trials", trials)->check(CLI::PositiveNumber);
  explore->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });

  auto* frame = app.add_subcommand("frame", "complete an orthonormal pair to a frame");
  frame->add_option("--x", x_path)->required();
  frame->add_option("--y", y_path)->required();
  frame->add_option("--mode", mode, "exact | approx")->check(CLI::IsMember({"exact", "approx"}));
  frame->add_option("--tol", tol);
  frame->add_option("--search-bound", search_bound);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (build->parsed()) return cmd_build(algebra);
    if (check->parsed()) return cmd_check(what, algebra);
    if (der->parsed()) return cmd_der(algebra);
    if (params->parsed()) return cmd_params(map_path);
    if (locder->parsed()) return cmd_locder_bound(algebra, probes_arg);
    if (witness->parsed()) return cmd_witness(algebra, map_path, points_path);
    if (cert->parsed()) return cmd_local_cert(algebra, map_path);
    if (m8w->parsed()) return cmd_m8_witness(map_path, point_path, mode, tol, search_bound);
    if (explore->parsed()) return cmd_explore_2local(trials, seed_given ? seed : default_seed());
    if (frame->parsed()) return cmd_frame(x_path, y_path, mode, tol, search_bound);
    throw CLI::ValidationError("subcommand", "no subcommand given");
  } catch (const CLI::CallForHelp&) {
    return {0, envelope("help", "PASS", Json{{"help", app.help()}})};
  } catch (const CLI::ParseError& e) {
    return {2, envelope("error", "ERROR",
                        Json{{"error", Json{{"type", "usage"}, {"message", e.what()}}}})};
  } catch (const NotRationalSquareError& e) {
    return {2, envelope("error", "ERROR",
                        Json{{"error", Json{{"type", "not-rational-square"}, {"message", e.what()}}}})};
  } catch (const NoExactUnitError& e) {
    return {2, envelope("error", "ERROR",
                        Json{{"error", Json{{"type", "no-exact-unit"}, {"message", e.what()}}}})};
  } catch (const Json::exception& e) {
    return {2, envelope("error", "ERROR",
                        Json{{"error", Json{{"type", "format"}, {"message", e.what()}}}})};
  } catch (const std::invalid_argument& e) {
    return {2, envelope("error", "ERROR",
                        Json{{"error", Json{{"type", "format"}, {"message", e.what()}}}})};
  } catch (const std::domain_error& e) {
    return {2, envelope("error", "ERROR",
                        Json{{"error", Json{{"type", "domain"}, {"message", e.what()}}}})};
  } catch (const std::runtime_error& e) {
    return {2, envelope("error", "ERROR",
                        Json{{"error", Json{{"type", "io"}, {"message", e.what()}}}})};
  }
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  bool pretty = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--pretty") {
      pretty = true;
    } else {
      args.push_back(a);
    }
  }
  const CommandResult result = run_command(args);
  if (pretty) {
    std::cout << result.output["command"].get<std::string>() << ": "
              << result.output["status"].get<std::string>() << "\n"
              << result.output.dump(2) << "\n";
  } else {
    std::cout << result.output.dump() << "\n";
  }
  return result.exit_code;
}

}  // namespace naryder
