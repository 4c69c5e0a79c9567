#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "virialkit/multi_index.hpp"

namespace virialkit {

using Vertex = int;  // vertex labels start at 1

// Edge bitsets over the pairs of labels 1..kMaxVertices fit in 64 bits.
inline constexpr int kMaxVertices = 11;

// Bit position of the unordered pair {u, v}, u != v, labels 1-based.
constexpr int edge_bit(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (v - 1) * (v - 2) / 2 + (u - 1);
}

// Simple graph: a vertex set (bitmask over labels) and an edge set
// (bitmask over pairs). Subgraphs keep the labels of their parent.
class Graph {
 public:
  Graph() = default;
  // Vertices {1..n}, no edges.
  explicit Graph(int n);

  static Graph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);
  // Edge bits must only join vertices in vertex_mask.
  static Graph from_masks(std::uint32_t vertex_mask, std::uint64_t edge_mask);

  std::uint32_t vertex_mask() const { return vertices_; }
  std::uint64_t edge_mask() const { return edges_; }

  int order() const;
  int edge_count() const;
  bool contains(Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;
  void add_edge(Vertex u, Vertex v);

  std::vector<Vertex> vertices() const;
  // Sorted (u < v) pairs.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  Graph without_vertex(Vertex v) const;
  Graph induced(std::uint32_t vertex_mask) const;
  // Relabels the vertex set to 1..order() preserving order.
  Graph compact() const;
  // True when the vertex set is exactly {1..order()}.
  bool is_compact() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::uint32_t vertices_ = 0;
  std::uint64_t edges_ = 0;
};

// Compact graph with a colour (species) per vertex; colours[v-1] is the colour of v.
struct ColouredGraph {
  Graph graph;
  std::vector<Species> colours;

  ColouredGraph() = default;
  ColouredGraph(Graph g, std::vector<Species> c);
};

bool is_connected(const Graph& g);
bool is_two_connected(const Graph& g);

// Requires a connected graph.
std::vector<Vertex> articulation_points(const Graph& g);

struct BlockDecomposition {
  std::vector<Graph> blocks;  // parent labels, sorted by edge list
  std::vector<Vertex> articulation_points;
};

// Maximal two-connected subgraphs of a connected graph with at least 2 vertices.
BlockDecomposition block_decomposition(const Graph& g);

// Bipartite incidence between blocks (ids 0..blocks-1) and articulation points.
struct BlockCutTree {
  int block_count = 0;
  std::vector<Vertex> articulation_points;
  std::vector<std::pair<int, Vertex>> edges;  // (block id, articulation point)

  int node_count() const { return block_count + static_cast<int>(articulation_points.size()); }
};

// Throws InvariantError if the incidence structure is not a tree.
BlockCutTree block_cut_tree(const BlockDecomposition& d);

// n1 ones, then n2 twos, ...
std::vector<Species> canonical_colouring(const MultiIndex& n);

struct DissymmetryCounts {
  long lhs = 0;  // 1 + sum_i |V(g_i)|
  long rhs = 0;  // n + m
};

DissymmetryCounts dissymmetry_check(const Graph& g);

// Restriction of a colouring (indexed by parent labels) to a subgraph, with
// the subgraph relabelled compactly.
ColouredGraph restrict_colouring(const Graph& sub, std::span<const Species> parent_colours);

// Canonical representative under colour-preserving relabelling: vertices sorted
// by colour, then the lexicographically smallest edge mask over permutations
// inside each colour class.
struct CanonicalKey {
  std::vector<Species> colours;
  std::uint64_t edges = 0;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept;
};

CanonicalKey canonical_form(const ColouredGraph& g);

// canonical_form through a process-wide memo keyed by the raw colours and
// edge mask. Safe to call concurrently.
CanonicalKey canonical_form_cached(const ColouredGraph& g);

// Stable 64-bit hash of a canonical key (independent of std::hash).
std::uint64_t stable_hash(const CanonicalKey& k);

}  // namespace virialkit
