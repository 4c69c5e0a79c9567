#include <doctest.h>

#include <random>
#include <set>

#include "oracles/graph_oracle.hpp"
#include "support/generators.hpp"
#include "virialkit/enumerate.hpp"
#include "virialkit/errors.hpp"
#include "virialkit/graph.hpp"

using namespace virialkit;

namespace {

Graph path3() { return Graph::from_edges(3, {{1, 2}, {2, 3}}); }
Graph triangle() { return Graph::from_edges(3, {{1, 2}, {2, 3}, {1, 3}}); }
Graph triangle_pendant() { return Graph::from_edges(4, {{1, 2}, {2, 3}, {1, 3}, {3, 4}}); }
Graph bowtie() { return Graph::from_edges(5, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {3, 5}}); }

std::uint64_t count(int n, GraphClass c) {
  std::uint64_t k = 0;
  for (const Graph& g : enumerate_graphs(n, c)) {
    (void)g;
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("graph construction") {
  CHECK(Graph(3).order() == 3);
  CHECK(triangle().edge_count() == 3);
  CHECK(triangle().has_edge(3, 1));
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 1}}), UsageError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 2}, {2, 1}}), UsageError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 4}}), UsageError);
  CHECK_THROWS_AS(ColouredGraph(triangle(), {1, 1}), UsageError);
  CHECK_THROWS_AS(ColouredGraph(triangle(), {1, 0, 1}), UsageError);
}

TEST_CASE("connectivity") {
  CHECK(is_connected(Graph(1)));
  CHECK_FALSE(is_connected(Graph(2)));
  CHECK(is_connected(path3()));
  CHECK_FALSE(is_connected(Graph()));
}

TEST_CASE("two-connectivity") {
  CHECK(is_two_connected(Graph::from_edges(2, {{1, 2}})));
  CHECK_FALSE(is_two_connected(path3()));
  CHECK(is_two_connected(triangle()));
  CHECK_FALSE(is_two_connected(Graph(1)));
  CHECK_FALSE(is_two_connected(Graph(2)));
}

TEST_CASE("articulation points") {
  CHECK(articulation_points(triangle()).empty());
  CHECK(articulation_points(path3()) == std::vector<Vertex>{2});
  CHECK(articulation_points(triangle_pendant()) == std::vector<Vertex>{3});
  CHECK_THROWS_AS(articulation_points(Graph(2)), UsageError);
}

TEST_CASE("block decomposition") {
  const auto t = block_decomposition(triangle());
  REQUIRE(t.blocks.size() == 1);
  CHECK(t.blocks[0] == triangle());
  CHECK(t.articulation_points.empty());

  const auto p = block_decomposition(path3());
  REQUIRE(p.blocks.size() == 2);
  CHECK(p.blocks[0].edges() == std::vector<std::pair<Vertex, Vertex>>{{1, 2}});
  CHECK(p.blocks[1].edges() == std::vector<std::pair<Vertex, Vertex>>{{2, 3}});
  CHECK(p.articulation_points == std::vector<Vertex>{2});

  const auto f = block_decomposition(triangle_pendant());
  REQUIRE(f.blocks.size() == 2);
  CHECK(f.blocks[0].edge_count() == 3);
  CHECK(f.blocks[1].edges() == std::vector<std::pair<Vertex, Vertex>>{{3, 4}});

  CHECK_THROWS_AS(block_decomposition(Graph(1)), UsageError);
  CHECK_THROWS_AS(block_decomposition(Graph(3)), UsageError);
}

TEST_CASE("block cut-point tree") {
  const auto t = block_cut_tree(block_decomposition(triangle()));
  CHECK(t.node_count() == 1);
  CHECK(t.edges.empty());
  const auto p = block_cut_tree(block_decomposition(path3()));
  CHECK(p.node_count() == 3);
  CHECK(p.edges.size() == 2);
  const auto b = block_cut_tree(block_decomposition(bowtie()));
  CHECK(b.node_count() == 3);
  CHECK(b.edges.size() == 2);
  BlockDecomposition broken = block_decomposition(path3());
  broken.articulation_points.clear();
  CHECK_THROWS_AS(block_cut_tree(broken), InvariantError);
}

TEST_CASE("canonical colouring") {
  CHECK(canonical_colouring(MultiIndex{{1, 2}}) == std::vector<Species>{1, 1});
  CHECK(canonical_colouring(MultiIndex{{1, 1}, {2, 2}}) == std::vector<Species>{1, 2, 2});
  CHECK(canonical_colouring(MultiIndex{{3, 3}}) == std::vector<Species>{3, 3, 3});
  CHECK_THROWS_AS(canonical_colouring(MultiIndex{}), UsageError);
}

TEST_CASE("dissymmetry counts") {
  auto d = dissymmetry_check(triangle());
  CHECK(d.lhs == 4);
  CHECK(d.rhs == 4);
  d = dissymmetry_check(path3());
  CHECK(d.lhs == 5);
  CHECK(d.rhs == 5);
  d = dissymmetry_check(triangle_pendant());
  CHECK(d.lhs == 6);
  CHECK(d.rhs == 6);
}

TEST_CASE("enumeration") {
  CHECK(count(3, GraphClass::connected) == 4);
  CHECK(count(4, GraphClass::connected) == 38);
  CHECK(count(4, GraphClass::two_connected) == 10);
  CHECK(count(2, GraphClass::two_connected) == 1);
  CHECK_THROWS_AS(enumerate_graphs(9, GraphClass::all), UsageError);
  for (int n = 1; n <= 5; ++n) CHECK(count(n, GraphClass::all) == (std::uint64_t{1} << (n * (n - 1) / 2)));
  CHECK(parse_graph_class("two-connected") == GraphClass::two_connected);
  CHECK_THROWS_AS(parse_graph_class("trees"), UsageError);
}

TEST_CASE("live oracle reproduces its frozen counts") {
  for (int n = 1; n <= 5; ++n) {
    const auto c = oracle::count_labelled(n);
    CHECK(c.connected == oracle::kConnected[n]);
    CHECK(c.two_connected == oracle::kTwoConnected[n]);
  }
}

TEST_CASE("parallel and serial counts agree with the oracle") {
  for (int n = 1; n <= 6; ++n) {
    CHECK(count_graphs(n, GraphClass::connected) == oracle::kConnected[n]);
    CHECK(count_graphs_serial(n, GraphClass::two_connected) == oracle::kTwoConnected[n]);
    CHECK(count_graphs(n, GraphClass::two_connected) == oracle::kTwoConnected[n]);
  }
}

TEST_CASE("property: block structure of every connected graph up to 6 vertices") {
  for (int n = 2; n <= 6; ++n) {
    for (const CatalogEntry& e : connected_catalog(n)) {
      const auto d = block_decomposition(e.graph);
      // Sum of (|V(g_i)| - 1) is n - 1.
      int excess = 0;
      std::uint64_t edge_union = 0;
      std::uint32_t vertex_union = 0;
      for (const Graph& b : d.blocks) {
        excess += b.order() - 1;
        REQUIRE((edge_union & b.edge_mask()) == 0);
        edge_union |= b.edge_mask();
        vertex_union |= b.vertex_mask();
        REQUIRE(is_two_connected(b));
      }
      REQUIRE(excess == n - 1);
      REQUIRE(edge_union == e.graph.edge_mask());
      REQUIRE(vertex_union == e.graph.vertex_mask());
      REQUIRE(is_two_connected(e.graph) == articulation_points(e.graph).empty());
      // Articulation points lie in two or more blocks, other vertices in one.
      for (Vertex v : e.graph.vertices()) {
        int hits = 0;
        for (const Graph& b : d.blocks) hits += b.contains(v) ? 1 : 0;
        const bool ap = std::find(d.articulation_points.begin(), d.articulation_points.end(), v) !=
                        d.articulation_points.end();
        REQUIRE((ap ? hits >= 2 : hits == 1));
      }
      block_cut_tree(d);
    }
  }
}

TEST_CASE("property: canonical form is invariant under colour-preserving relabelling") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const ColouredGraph g(gen::graph(rng, n), gen::colours(rng, n, 3));
    const ColouredGraph h = gen::relabel(g, gen::permutation(rng, n));
    CHECK(canonical_form(g) == canonical_form(h));
    CHECK(stable_hash(canonical_form(g)) == stable_hash(canonical_form(h)));
  }
  // Different colourings of a path are distinguished.
  CHECK_FALSE(canonical_form(ColouredGraph(path3(), {1, 2, 1})) == canonical_form(ColouredGraph(path3(), {1, 1, 2})));
}

TEST_CASE("restrict colouring") {
  const Graph b = triangle_pendant().induced(0b1100);
  const ColouredGraph r = restrict_colouring(b, std::vector<Species>{1, 1, 2, 3});
  CHECK(r.graph.order() == 2);
  CHECK(r.colours == std::vector<Species>{2, 3});
}
