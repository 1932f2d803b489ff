#pragma once

// Text and JSON forms.
//
//   context      q=5 | q=inf | 5 | inf
//   finite CF    q=5 [1,2,-1]
//   periodic CF  q=4 [2;(2)]     preperiod 2, period 2
//                q=4 [(1,2)]     empty preperiod
//   point        7/2 | -3 | {1/2,3} (coefficients of 1, lambda, ...) | inf
//                | [1,3,-2] (value of a finite CF)

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "rosen/cf.hpp"
#include "rosen/farey.hpp"

namespace rosen::io {

using nlohmann::json;

Context parse_context(std::string_view text);

// `fallback` supplies q when the text has no "q=" prefix.
std::variant<cf::RosenCF, cf::InfiniteCF> parse_cf(std::string_view text,
                                                   const Context& fallback = nullptr);
cf::RosenCF parse_finite_cf(std::string_view text, const Context& fallback = nullptr);
cf::InfiniteCF parse_infinite_cf(std::string_view text, const Context& fallback = nullptr);

BoundaryPoint parse_point(const Context& ctx, std::string_view text);

// "{c0,c1,...}", accepted back by parse_point.
std::string literal(const FieldElement& x);
std::string literal(const BoundaryPoint& p);

// Human-readable closed form for degree <= 2, e.g. "1/2 + 1/2*sqrt(5)".
std::optional<std::string> radical_form(const FieldElement& x);

json to_json(const Context& ctx);
json to_json(const FieldElement& x);
json to_json(const BoundaryPoint& p);
json to_json(const GroupElement& g);
json to_json(const farey::Face& f);
json to_json(const farey::QChain& chain);
json to_json(const cf::RosenCF& cf);

Context context_from_json(const json& j);
FieldElement field_element_from_json(const json& j);
BoundaryPoint point_from_json(const json& j);
GroupElement group_element_from_json(const json& j);
farey::Face face_from_json(const json& j);
farey::QChain chain_from_json(const json& j);
cf::RosenCF cf_from_json(const json& j);

}  // namespace rosen::io
