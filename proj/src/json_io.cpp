#include "naryder/json_io.hpp"

#include <fstream>

#include "naryder/filippov.hpp"
#include "naryder/malcev.hpp"

namespace naryder {

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected a rational string \"p/q\" or an integer, got " + j.dump());
}

Json vector_json(const RatVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(rational_json(v(i)));
  return out;
}

RatVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array for a vector");
  RatVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = rational_from_json(j[i]);
  return v;
}

Json matrix_json(const RatMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw std::invalid_argument("matrix rows must be nonempty arrays");
  RatMatrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw std::invalid_argument("matrix rows must all have the same length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = rational_from_json(j[r][c]);
    }
  }
  return m;
}

Json algebra_json(const NaryAlgebra& a) {
  Json brackets = Json::array();
  for (const auto& [tuple, value] : a.products()) {
    Json args = Json::array();
    for (Index i : tuple) args.push_back(i + 1);  // 1-based on the wire
    Json coeffs = Json::object();
    for (Index i = 0; i < value.size(); ++i) {
      if (value(i) != 0) coeffs[std::to_string(i + 1)] = rational_json(value(i));
    }
    brackets.push_back(Json{{"args", std::move(args)}, {"value", std::move(coeffs)}});
  }
  return Json{{"arity", a.arity()}, {"dim", a.dim()}, {"brackets", std::move(brackets)}};
}

namespace {

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> known,
                         const char* where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) {
      throw std::invalid_argument(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

}  // namespace

NaryAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("algebra: expected a JSON object");
  reject_unknown_keys(j, {"arity", "dim", "brackets"}, "algebra object");
  if (!j.contains("arity") || !j.contains("dim") || !j.contains("brackets")) {
    throw std::invalid_argument("algebra: required keys are arity, dim, brackets");
  }
  if (!j["arity"].is_number_integer() || !j["dim"].is_number_integer() ||
      !j["brackets"].is_array()) {
    throw std::invalid_argument("algebra: arity and dim must be integers, brackets an array");
  }
  NaryAlgebra a(j["arity"].get<int>(), j["dim"].get<Index>());
  for (const Json& entry : j["brackets"]) {
    if (!entry.is_object()) throw std::invalid_argument("algebra: bracket entries must be objects");
    reject_unknown_keys(entry, {"args", "value"}, "bracket entry");
    if (!entry.contains("args") || !entry.contains("value") || !entry["args"].is_array() ||
        !entry["value"].is_object()) {
      throw std::invalid_argument("algebra: bracket entries need args (array) and value (object)");
    }
    NaryAlgebra::Tuple tuple;
    for (const Json& idx : entry["args"]) {
      if (!idx.is_number_integer()) throw std::invalid_argument("algebra: args must be integers");
      tuple.push_back(idx.get<Index>() - 1);
    }
    if (a.products().count(tuple) != 0) {
      throw std::invalid_argument("algebra: duplicate bracket for the same args");
    }
    RatVector value = RatVector::Zero(a.dim());
    for (const auto& [key, coeff] : entry["value"].items()) {
      std::size_t used = 0;
      long pos = 0;
      try {
        pos = std::stol(key, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("algebra: value keys must be 1-based indices, got '" + key + "'");
      }
      if (used != key.size() || pos < 1 || pos > a.dim()) {
        throw std::invalid_argument("algebra: value key out of range: '" + key + "'");
      }
      value(pos - 1) = rational_from_json(coeff);
    }
    a.set_product(std::move(tuple), std::move(value));
  }
  return a;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

NaryAlgebra load_algebra(const std::string& name_or_path) {
  if (name_or_path == "M8") return m8();
  if (name_or_path.rfind("A:", 0) == 0) {
    const std::string tail = name_or_path.substr(2);
    std::size_t used = 0;
    long m = 0;
    try {
      m = std::stol(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tail.size() || m < 4 || m > 9) {
      throw std::invalid_argument("unknown algebra identifier '" + name_or_path +
                                  "' (builtins: A:4..A:9, M8)");
    }
    return build_filippov(m);
  }
  return algebra_from_json(load_json_file(name_or_path));
}

}  // namespace naryder
