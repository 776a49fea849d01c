#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "qalt/alternatives.hpp"
#include "qalt/dynamics.hpp"
#include "qalt/kdeform.hpp"
#include "qalt/types.hpp"

namespace qalt {

using Json = nlohmann::json;

// Wire formats:
//   real matrix     {"rows": n, "cols": m, "data": [row-major numbers]}
//   complex matrix  {"rows": n, "cols": m, "re": [...], "im": [...]}
//   deformation     {"lambda": x, "K": <matrix> | {"diag_fn": [...]}}
//   tables          [...] or a built-in name: "identity", "sinh", "affine"

Json matrix_to_json(const RealMatrix& m);
Json matrix_to_json(const ComplexMatrix& m);
RealMatrix real_matrix_from_json(const Json& j);
ComplexMatrix complex_matrix_from_json(const Json& j);

Json invariance_to_json(const InvarianceReport& r, double tol);
Json alternative_to_json(const AlternativeDescription& d, double tol);

ComplexDeformation deformation_from_json(const Json& j);

/// Built-in tables of length d: "identity" (all ones), "sinh"
/// (sinh(lambda n)/sinh(lambda)), "affine" (f(n) = sqrt(1 + lambda n)).
std::vector<double> named_table(const std::string& name, double lambda, Index d);

/// Accepts either a JSON array of numbers or a built-in name.
std::vector<double> table_from_json(const Json& j, double lambda, Index d);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qalt
