#pragma once

#include <variant>

#include <json.hpp>

#include "virialkit/series.hpp"

namespace virialkit {

// {"n": {"1": 2, "3": 1}} <-> MultiIndex
nlohmann::json multi_index_to_json(const MultiIndex& n);
MultiIndex multi_index_from_json(const nlohmann::json& j);

// {"truncation": {"degree": D, "species": S}, "field": "rational"|"float",
//  "terms": [{"n": {...}, "c": "-7/2" | -3.5}]}
nlohmann::json to_json(const Series<Rational>& s);
nlohmann::json to_json(const Series<double>& s);

using AnySeries = std::variant<Series<Rational>, Series<double>>;

// Dispatches on the "field" member.
AnySeries series_from_json(const nlohmann::json& j);

Truncation truncation_from_json(const nlohmann::json& j);

nlohmann::json coefficient_to_json(const Rational& c);
nlohmann::json coefficient_to_json(double c);

}  // namespace virialkit
