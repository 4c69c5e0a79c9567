#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "virialkit/assumptions.hpp"
#include "virialkit/bounds.hpp"
#include "virialkit/graph.hpp"
#include "virialkit/potential.hpp"
#include "virialkit/series_json.hpp"
#include "virialkit/synthetic.hpp"

namespace virialkit {

inline constexpr const char* kSchema = "virialkit/1";

// Throws UsageError when "schema" is present and not kSchema.
void check_schema(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

// {"n": 4, "edges": [[1,2], ...], "colours": [...]}; colours default to all 1.
ColouredGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);
nlohmann::json graph_to_json(const ColouredGraph& g);

// One of: a pair potential, a synthetic block model, or an explicit pressure series.
struct Model {
  enum class Kind { potential, synthetic, series };

  Kind kind = Kind::synthetic;
  std::shared_ptr<const PairPotential> potential;
  std::shared_ptr<const SyntheticBlockModel> synthetic;
  std::optional<AnySeries> series;
};

// Model types: "hard_rods_1d", "hard_spheres", "square_well", "constant",
// "patchy", "synthetic", "pressure_series". Size tables are {"1": 1.0, ...}
// or {"linear": scale}.
Model model_from_json(const nlohmann::json& j);
std::shared_ptr<const PairPotential> potential_from_json(const nlohmann::json& j);
SyntheticBlockModel synthetic_from_json(const nlohmann::json& j);

// {"a": 1, "b": 0, "radii": {"1": 0.5, ...}} or
// {"a": 1, "b": 0, "radii_rule": {"prefactor": 0.5, "decay": 2}, "species": 40}.
// species_cap receives "species" (or the largest listed radius).
KpSpec kp_spec_from_json(const nlohmann::json& j, int& species_cap);

// {"species": [{"i": 1, "r": 0.25, "R": 1.0, "a": 1.0}, ...]}
DomainSpec domain_spec_from_json(const nlohmann::json& j);
nlohmann::json domain_spec_to_json(const DomainSpec& spec);

// Values may be numbers or "p/q" strings.
Rational rational_from_json(const nlohmann::json& j);

}  // namespace virialkit
