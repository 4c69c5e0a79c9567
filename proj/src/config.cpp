#include "virialkit/config.hpp"

#include <cmath>
#include <fstream>

#include "virialkit/errors.hpp"

namespace virialkit {

using nlohmann::json;

namespace {

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_number()) throw UsageError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

int integer(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_number_integer()) throw UsageError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Species species_key(const std::string& s) {
  try {
    std::size_t used = 0;
    const int k = std::stoi(s, &used);
    if (used != s.size() || k < 1) throw UsageError("");
    return k;
  } catch (const std::exception&) {
    throw UsageError("species keys must be positive integers, got '" + s + "'");
  }
}

SpeciesTable species_table(const json& j) {
  if (j.is_number()) return SpeciesTable(std::map<Species, double>{{1, j.get<double>()}});
  if (!j.is_object()) throw UsageError("size table must be an object");
  if (j.contains("linear")) return SpeciesTable::linear(number(j, "linear"));
  std::map<Species, double> values;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw UsageError("size table values must be numbers");
    values[species_key(k)] = v.get<double>();
  }
  return SpeciesTable(std::move(values));
}

template <class Fn>
auto translate(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed configuration: ") + e.what());
  }
}

}  // namespace

void check_schema(const json& j) {
  if (j.is_object() && j.contains("schema")) {
    if (!j.at("schema").is_string() || j.at("schema").get<std::string>() != kSchema) {
      throw UsageError(std::string("unsupported schema; expected \"") + kSchema + "\"");
    }
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    json j = json::parse(in);
    check_schema(j);
    return j;
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw UsageError("expected a rational number or \"p/q\" string");
}

ColouredGraph graph_from_json(const json& j) {
  return translate([&] {
    const int n = integer(j, "n");
    if (n < 1 || n > kMaxVertices) throw UsageError("graph size must lie in 1.." + std::to_string(kMaxVertices));
    std::vector<std::pair<Vertex, Vertex>> edges;
    if (j.contains("edges")) {
      for (const json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw UsageError("edges must be [u, v] pairs");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
    }
    std::vector<Species> colours(static_cast<std::size_t>(n), 1);
    if (j.contains("colours")) colours = j.at("colours").get<std::vector<Species>>();
    return ColouredGraph(Graph::from_edges(n, edges), std::move(colours));
  });
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"vertices", g.vertices()}, {"edges", edges}};
}

json graph_to_json(const ColouredGraph& g) {
  json edges = json::array();
  for (auto [u, v] : g.graph.edges()) edges.push_back({u, v});
  return {{"n", g.graph.order()}, {"edges", edges}, {"colours", g.colours}};
}

std::shared_ptr<const PairPotential> potential_from_json(const json& j) {
  return translate([&]() -> std::shared_ptr<const PairPotential> {
    const std::string type = member(j, "type").get<std::string>();
    const double L = number(j, "L");
    if (type == "hard_rods_1d") return std::make_shared<HardRods1D>(species_table(member(j, "sigma")), L);
    if (type == "hard_spheres") {
      return std::make_shared<HardSpheres>(integer(j, "d"), species_table(member(j, "sigma")), L);
    }
    if (type == "square_well") {
      return std::make_shared<SquareWell>(integer(j, "d"), species_table(member(j, "sigma")), number(j, "depth"),
                                          number(j, "lambda"), L);
    }
    if (type == "constant") {
      return std::make_shared<ConstantPotential>(j.contains("d") ? integer(j, "d") : 1, number(j, "U"), L);
    }
    if (type == "patchy") {
      return std::make_shared<PatchyParticles>(integer(j, "d"), species_table(member(j, "sigma")),
                                               number(j, "depth"), number(j, "lambda"), number(j, "cos_delta"), L);
    }
    throw UsageError("unknown potential type '" + type + "'");
  });
}

SyntheticBlockModel synthetic_from_json(const json& j) {
  return translate([&] {
    const MissingBlockPolicy policy =
        j.contains("missing") ? parse_missing_policy(j.at("missing").get<std::string>()) : MissingBlockPolicy::error;
    const std::uint64_t seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
    SyntheticBlockModel m(policy, seed);
    if (j.contains("edges")) {
      for (const json& e : j.at("edges")) {
        const auto colours = member(e, "colours").get<std::vector<Species>>();
        if (colours.size() != 2) throw UsageError("edge weights need exactly two colours");
        m.set_edge_weight(colours[0], colours[1], rational_from_json(member(e, "w")));
      }
    }
    if (j.contains("blocks")) {
      for (const json& b : j.at("blocks")) {
        json g = member(b, "graph");
        if (b.contains("colours")) g["colours"] = b.at("colours");
        m.set_block_weight(graph_from_json(g), rational_from_json(member(b, "w")));
      }
    }
    return m;
  });
}

Model model_from_json(const json& j) {
  check_schema(j);
  return translate([&] {
    const std::string type = member(j, "type").get<std::string>();
    Model m;
    if (type == "synthetic") {
      m.kind = Model::Kind::synthetic;
      m.synthetic = std::make_shared<SyntheticBlockModel>(synthetic_from_json(j));
    } else if (type == "pressure_series") {
      m.kind = Model::Kind::series;
      m.series = series_from_json(member(j, "series"));
    } else {
      m.kind = Model::Kind::potential;
      m.potential = potential_from_json(j);
    }
    return m;
  });
}

KpSpec kp_spec_from_json(const json& j, int& species_cap) {
  check_schema(j);
  return translate([&] {
    const double a = number(j, "a");
    const double b = number_or(j, "b", 0.0);
    if (j.contains("radii_rule")) {
      const json& rule = j.at("radii_rule");
      species_cap = integer(j, "species");
      return KpSpec::geometric(number(rule, "prefactor"), number(rule, "decay"), species_cap, a, b);
    }
    KpSpec s;
    s.a = a;
    s.b = b;
    for (const auto& [k, v] : member(j, "radii").items()) s.radii[species_key(k)] = v.get<double>();
    species_cap = j.contains("species") ? integer(j, "species") : (s.radii.empty() ? 1 : s.radii.rbegin()->first);
    validate(s);
    return s;
  });
}

DomainSpec domain_spec_from_json(const json& j) {
  check_schema(j);
  return translate([&] {
    DomainSpec spec;
    for (const json& e : member(j, "species")) {
      const int i = integer(e, "i");
      if (spec.species.contains(i)) throw UsageError("species " + std::to_string(i) + " listed twice");
      spec.species[i] = {number(e, "r"), number(e, "R"), number(e, "a")};
    }
    validate(spec);
    return spec;
  });
}

json domain_spec_to_json(const DomainSpec& spec) {
  json arr = json::array();
  for (const auto& [i, d] : spec.species) arr.push_back({{"i", i}, {"r", d.r}, {"R", d.R}, {"a", d.a}});
  return {{"species", arr}};
}

}  // namespace virialkit
