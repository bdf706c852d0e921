#pragma once
// Symbol expressions for custom models.
//
//   expr   := ['-'] factor ('*' factor)*
//   factor := number | name | name '(' arg {',' arg} ')' | '(' expr ')'
//
// Names: id, dx1..dx3, grad, div, div_tensor, riesz1..riesz3, riesz_perp,
// lambda(s) = |k|^s, inv_lap = -1/|k|^2, leray. id, lambda, inv_lap and
// numbers are diagonal and take the component count of their neighbours in a
// product (or the state's count when alone); id(m), lambda(s, m), inv_lap(m)
// fix it explicitly. Products compose right to left, like operators.

#include <string_view>

#include "json.hpp"
#include "decaylab/models/model.hpp"

namespace decaylab::models {

MultiplierSymbol parse_symbol(std::string_view expr, int d, int components);

// {"name", "d", "components", "theta", "R", "S", "T", "projector",
//  "skew_symmetric", "s_keeps_mean"}; theta may be a number or "p/q".
ModelSpec model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ModelSpec& spec);

Rational rational_from_json(const nlohmann::json& j);

}  // namespace decaylab::models
