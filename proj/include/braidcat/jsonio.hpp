#pragma once

#include <json.hpp>

#include "braidcat/category.hpp"
#include "braidcat/contextuality.hpp"

namespace braidcat {

using Json = nlohmann::ordered_json;

/// Canonical category serialization; loading then re-serializing is
/// byte-identical.
std::string category_to_json(const CategoryData& cat);

/// Parses and validates (multiplicity-free, <= 16 labels, structural axioms).
/// Throws std::runtime_error on malformed or rejected input.
CategoryData category_from_json(const std::string& text);

/// Scenario + tables serialization. Context tables are keyed by context
/// index; outcome tuples are comma-joined outcome values in context order.
std::string model_to_json(const EmpiricalModel& model);
EmpiricalModel model_from_json(const std::string& text);

Json matrix_to_json(const Matrix& m);

/// 12 significant digits, the fixed CLI float format.
std::string fmt12(double x);
std::string fmt_complex(Cplx z);  // "re im"

}  // namespace braidcat
