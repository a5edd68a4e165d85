#pragma once

#include <json.hpp>

#include "freereg/poly.hpp"
#include "freereg/tensor.hpp"
#include "freereg/trace.hpp"

namespace freereg {

// Interchange schema, stable across runs: terms appear in canonical (deg-lex)
// order and exact coefficients travel as "p/q" strings, so a round trip is
// bit-exact and diffs are meaningful.

nlohmann::json poly_to_json(const NcPoly& p);
NcPoly poly_from_json(const nlohmann::json& j);

nlohmann::json tensor_to_json(const TensorPoly& t);
TensorPoly tensor_from_json(const nlohmann::json& j);

// Float-coefficient variant (degree-twist images); coefficients as doubles.
nlohmann::json cpoly_to_json(const CPoly& p);

// {"table": [{"word": [...], "re": "p/q", "im": "p/q"}, ...]}
TraceFunctional trace_table_from_json(const nlohmann::json& j);

}  // namespace freereg
