#include <doctest.h>

#include "virialkit/config.hpp"
#include "virialkit/errors.hpp"
#include "virialkit/series_json.hpp"

using namespace virialkit;
using nlohmann::json;

TEST_CASE("schema") {
  CHECK_NOTHROW(check_schema(json{{"schema", "virialkit/1"}}));
  CHECK_NOTHROW(check_schema(json::object()));
  CHECK_THROWS_AS(check_schema(json{{"schema", "virialkit/2"}}), UsageError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/model.json"), UsageError);
}

TEST_CASE("graph JSON") {
  const ColouredGraph g = graph_from_json(json::parse(R"({"n": 3, "edges": [[1,2],[2,3]]})"));
  CHECK(g.graph.order() == 3);
  CHECK(g.graph.edge_count() == 2);
  CHECK(g.colours == std::vector<Species>{1, 1, 1});
  const ColouredGraph h = graph_from_json(graph_to_json(ColouredGraph(g.graph, {1, 2, 2})));
  CHECK(h.graph == g.graph);
  CHECK(h.colours == std::vector<Species>{1, 2, 2});
  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"n": 2, "edges": [[1,3]]})")), UsageError);
  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges": []})")), UsageError);
}

TEST_CASE("potential models") {
  Model m = model_from_json(json::parse(R"({"schema": "virialkit/1", "type": "hard_rods_1d", "sigma": 1.0, "L": 10})"));
  REQUIRE(m.kind == Model::Kind::potential);
  CHECK(m.potential->name() == "hard_rods_1d");
  CHECK(m.potential->box_length() == 10.0);
  CHECK(*m.potential->abs_zeta_integral(1, 1) == 2.0);

  m = model_from_json(json::parse(R"({"type": "hard_rods_1d", "sigma": {"linear": 1.0}, "L": 100})"));
  CHECK(*m.potential->abs_zeta_integral(2, 3) == 5.0);

  m = model_from_json(json::parse(R"({"type": "square_well", "d": 3, "sigma": {"1": 1.0}, "depth": 0.5, "lambda": 1.5, "L": 8})"));
  CHECK(m.potential->dimension() == 3);
  m = model_from_json(json::parse(R"({"type": "patchy", "d": 2, "sigma": 1.0, "depth": 1, "lambda": 1.5, "cos_delta": 0.5, "L": 6})"));
  CHECK(m.potential->name() == "patchy");
  m = model_from_json(json::parse(R"({"type": "constant", "U": -1, "L": 10})"));
  CHECK(m.potential->name() == "constant");

  CHECK_THROWS_AS(model_from_json(json::parse(R"({"type": "lennard_jones", "L": 10})")), UsageError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"type": "hard_rods_1d", "sigma": 1.0})")), UsageError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"type": "hard_rods_1d", "sigma": {"x": 1}, "L": 10})")), UsageError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"type": "hard_rods_1d", "sigma": "big", "L": 10})")), UsageError);
}

TEST_CASE("synthetic models") {
  const Model m = model_from_json(json::parse(R"({
    "type": "synthetic", "missing": "error",
    "edges": [{"colours": [1, 1], "w": "-2"}, {"colours": [1, 2], "w": "1/3"}],
    "blocks": [{"graph": {"n": 3, "edges": [[1,2],[2,3],[1,3]]}, "w": 5}]
  })"));
  REQUIRE(m.kind == Model::Kind::synthetic);
  const ColouredGraph path(Graph::from_edges(3, {{1, 2}, {2, 3}}), {1, 1, 2});
  CHECK(synthetic_weight(path, *m.synthetic) == Rational(-2, 3));
  CHECK(synthetic_weight(ColouredGraph(Graph::from_edges(3, {{1, 2}, {2, 3}, {1, 3}}), {1, 1, 1}), *m.synthetic) == 5);

  const Model h = model_from_json(json::parse(R"({"type": "synthetic", "missing": "hashed", "seed": 9})"));
  CHECK(h.synthetic->policy() == MissingBlockPolicy::hashed);
  CHECK(h.synthetic->seed() == 9);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"type": "synthetic", "missing": "guess"})")), UsageError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"type": "synthetic", "edges": [{"colours": [1], "w": 1}]})")),
                  UsageError);
}

TEST_CASE("pressure series model") {
  const Model m = model_from_json(json::parse(R"({
    "type": "pressure_series",
    "series": {"truncation": {"degree": 3, "species": 1}, "field": "rational",
               "terms": [{"n": {"1": 1}, "c": "1"}, {"n": {"1": 2}, "c": "1"}]}
  })"));
  REQUIRE(m.kind == Model::Kind::series);
  const auto& s = std::get<Series<Rational>>(*m.series);
  CHECK(s.coefficient(MultiIndex{{1, 2}}) == 1);
}

TEST_CASE("rationals") {
  CHECK(rational_from_json(json("-7/2")) == Rational(-7, 2));
  CHECK(rational_from_json(json(3)) == 3);
  CHECK(rational_from_json(json(0.5)) == Rational(1, 2));
  CHECK_THROWS_AS(rational_from_json(json("1/0")), UsageError);
  CHECK_THROWS_AS(rational_from_json(json::array()), UsageError);
}

TEST_CASE("KP specs") {
  int cap = 0;
  KpSpec s = kp_spec_from_json(json::parse(R"({"a": 1, "radii_rule": {"prefactor": 0.5, "decay": 2}, "species": 40})"), cap);
  CHECK(cap == 40);
  CHECK(s.radius(1) == doctest::Approx(0.5 * std::exp(-2.0)));
  s = kp_spec_from_json(json::parse(R"({"a": 2, "b": 0.1, "radii": {"1": 0.1, "3": 0.2}})"), cap);
  CHECK(cap == 3);
  CHECK(s.b == 0.1);
  CHECK_THROWS_AS(s.radius(2), UsageError);
  CHECK_THROWS_AS(kp_spec_from_json(json::parse(R"({"radii": {"1": 0.1}})"), cap), UsageError);
}

TEST_CASE("domain specs round trip") {
  const DomainSpec d = domain_spec_from_json(
      json::parse(R"({"schema": "virialkit/1", "species": [{"i": 1, "r": 0.25, "R": 1.0, "a": 1.0}, {"i": 2, "r": 0.1, "R": 0.5, "a": 0}]})"));
  CHECK(d.at(2).R == 0.5);
  const DomainSpec e = domain_spec_from_json(domain_spec_to_json(d));
  CHECK(e.at(1).r == 0.25);
  CHECK(e.at(2).a == 0.0);
  CHECK_THROWS_AS(domain_spec_from_json(json::parse(R"({"species": [{"i": 1, "r": 2, "R": 1, "a": 0}]})")), UsageError);
}
