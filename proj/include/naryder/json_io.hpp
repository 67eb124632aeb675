#pragma once

#include <string>

#include <json.hpp>

#include "naryder/nary_algebra.hpp"

namespace naryder {

using Json = nlohmann::json;

/// Rationals serialise as "p/q" with "/q" omitted when q = 1; matrices and
/// vectors as (nested) arrays of such strings. Parsing also accepts plain
/// JSON integers.
Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json vector_json(const RatVector& v);
RatVector vector_from_json(const Json& j);

Json matrix_json(const RatMatrix& m);
Json matrix_json(const Eigen::MatrixXd& m);  // approx-mode payloads
RatMatrix matrix_from_json(const Json& j);

/// {"arity": n, "dim": d, "brackets": [{"args": [i1,...,in], "value":
/// {"j": "p/q", ...}}]} with 1-based strictly increasing args. Unknown or
/// duplicate keys are rejected.
Json algebra_json(const NaryAlgebra& a);
NaryAlgebra algebra_from_json(const Json& j);

Json load_json_file(const std::string& path);

/// Accepts the builtin identifiers "A:4".."A:9" and "M8" wherever a file
/// path is accepted.
NaryAlgebra load_algebra(const std::string& name_or_path);

}  // namespace naryder
