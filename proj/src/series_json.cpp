#include "virialkit/series_json.hpp"

#include <string>

#include "virialkit/errors.hpp"

namespace virialkit {

using nlohmann::json;

json multi_index_to_json(const MultiIndex& n) {
  json j = json::object();
  for (const auto& [s, e] : n.entries()) j[std::to_string(s)] = e;
  return j;
}

MultiIndex multi_index_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("multi-index must be a JSON object mapping species to exponents");
  std::vector<MultiIndex::Entry> entries;
  for (const auto& [key, value] : j.items()) {
    int species = 0;
    try {
      std::size_t used = 0;
      species = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw UsageError("multi-index key '" + key + "' is not a species index");
    }
    if (!value.is_number_integer()) throw UsageError("multi-index exponents must be integers");
    entries.emplace_back(species, value.get<int>());
  }
  return MultiIndex(std::move(entries));
}

json coefficient_to_json(const Rational& c) { return format_rational(c); }
json coefficient_to_json(double c) { return c; }

Truncation truncation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("species")) {
    throw UsageError("truncation must be {\"degree\": D, \"species\": S}");
  }
  Truncation t{j.at("degree").get<int>(), j.at("species").get<int>()};
  validate(t);
  return t;
}

namespace {

template <class F>
json series_to_json(const Series<F>& s) {
  json terms = json::array();
  for (const auto& [n, c] : s.terms()) {
    terms.push_back({{"n", multi_index_to_json(n)}, {"c", coefficient_to_json(c)}});
  }
  return {{"truncation", {{"degree", s.truncation().degree}, {"species", s.truncation().species}}},
          {"field", FieldTraits<F>::name},
          {"terms", std::move(terms)}};
}

Rational rational_coefficient(const json& c) {
  if (c.is_string()) return parse_rational(c.get<std::string>());
  if (c.is_number_integer()) return Rational(c.get<long>());
  throw UsageError("rational coefficients must be \"p/q\" strings or integers");
}

double float_coefficient(const json& c) {
  if (c.is_number()) return c.get<double>();
  if (c.is_string()) return to_double(parse_rational(c.get<std::string>()));
  throw UsageError("float coefficients must be numbers");
}

template <class F, class Conv>
Series<F> terms_from_json(const json& j, Truncation t, Conv conv) {
  Series<F> s(t);
  if (!j.contains("terms")) return s;
  for (const auto& term : j.at("terms")) {
    const MultiIndex n = multi_index_from_json(term.at("n"));
    if (!t.admits(n)) throw UsageError("series term " + n.compact() + " lies outside the declared truncation");
    s.accumulate(n, conv(term.at("c")));
  }
  return s;
}

}  // namespace

json to_json(const Series<Rational>& s) { return series_to_json(s); }
json to_json(const Series<double>& s) { return series_to_json(s); }

AnySeries series_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("series document must be a JSON object");
  const Truncation t = truncation_from_json(j.at("truncation"));
  const std::string field = j.value("field", "rational");
  if (field == "rational") return terms_from_json<Rational>(j, t, rational_coefficient);
  if (field == "float") return terms_from_json<double>(j, t, float_coefficient);
  throw UsageError("unknown coefficient field '" + field + "'");
}

}  // namespace virialkit
