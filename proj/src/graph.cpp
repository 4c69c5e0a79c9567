#include "virialkit/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "virialkit/errors.hpp"

namespace virialkit {

namespace {

struct EdgeTable {
  std::array<std::pair<Vertex, Vertex>, 64> ends{};
  EdgeTable() {
    for (Vertex v = 2; v <= kMaxVertices; ++v) {
      for (Vertex u = 1; u < v; ++u) ends[static_cast<std::size_t>(edge_bit(u, v))] = {u, v};
    }
  }
};

const EdgeTable& edge_table() {
  static const EdgeTable table;
  return table;
}

void check_label(Vertex v) {
  if (v < 1 || v > kMaxVertices) {
    throw UsageError("vertex label " + std::to_string(v) + " outside 1.." + std::to_string(kMaxVertices));
  }
}

struct StarTable {
  // star[v] has the bits of every pair containing v.
  std::array<std::uint64_t, kMaxVertices + 1> star{};
  std::uint64_t all = 0;
  StarTable() {
    for (Vertex v = 2; v <= kMaxVertices; ++v) {
      for (Vertex u = 1; u < v; ++u) {
        const std::uint64_t bit = std::uint64_t{1} << edge_bit(u, v);
        star[static_cast<std::size_t>(u)] |= bit;
        star[static_cast<std::size_t>(v)] |= bit;
        all |= bit;
      }
    }
  }
};

const StarTable& star_table() {
  static const StarTable table;
  return table;
}

std::uint64_t edges_within(std::uint32_t vertex_mask) {
  const auto& t = star_table();
  std::uint64_t m = t.all;
  for (Vertex v = 1; v <= kMaxVertices; ++v) {
    if (!(vertex_mask >> (v - 1) & 1u)) m &= ~t.star[static_cast<std::size_t>(v)];
  }
  return m;
}

// Union-find over at most kMaxVertices labels.
class DisjointSets {
 public:
  DisjointSets() { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(a)] = b;
    return true;
  }

 private:
  std::array<int, kMaxVertices + 1> parent_{};
};

}  // namespace

Graph::Graph(int n) {
  if (n < 0 || n > kMaxVertices) {
    throw UsageError("graph order must lie in 0.." + std::to_string(kMaxVertices));
  }
  vertices_ = n == 0 ? 0u : static_cast<std::uint32_t>((1u << n) - 1u);
}

Graph Graph::from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::from_masks(std::uint32_t vertex_mask, std::uint64_t edge_mask) {
  if (vertex_mask >> kMaxVertices) throw UsageError("vertex mask uses labels beyond the maximum");
  if (edge_mask & ~edges_within(vertex_mask)) throw UsageError("edge mask joins vertices outside the vertex set");
  Graph g;
  g.vertices_ = vertex_mask;
  g.edges_ = edge_mask;
  return g;
}

int Graph::order() const { return std::popcount(vertices_); }
int Graph::edge_count() const { return std::popcount(edges_); }

bool Graph::contains(Vertex v) const { return v >= 1 && v <= kMaxVertices && (vertices_ >> (v - 1) & 1u); }

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u == v || !contains(u) || !contains(v)) return false;
  return edges_ >> edge_bit(u, v) & 1u;
}

void Graph::add_edge(Vertex u, Vertex v) {
  check_label(u);
  check_label(v);
  if (u == v) throw UsageError("self-loops are not allowed");
  if (!contains(u) || !contains(v)) throw UsageError("edge endpoint outside the vertex set");
  const std::uint64_t bit = std::uint64_t{1} << edge_bit(u, v);
  if (edges_ & bit) {
    throw UsageError("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
  edges_ |= bit;
}

std::vector<Vertex> Graph::vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= kMaxVertices; ++v) {
    if (contains(v)) out.push_back(v);
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  const auto& table = edge_table();
  for (std::uint64_t m = edges_; m; m &= m - 1) {
    out.push_back(table.ends[static_cast<std::size_t>(std::countr_zero(m))]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph Graph::without_vertex(Vertex v) const {
  if (!contains(v)) return *this;
  Graph g;
  g.vertices_ = vertices_ & ~(1u << (v - 1));
  g.edges_ = edges_ & ~star_table().star[static_cast<std::size_t>(v)];
  return g;
}

Graph Graph::induced(std::uint32_t vertex_mask) const {
  Graph g;
  g.vertices_ = vertices_ & vertex_mask;
  g.edges_ = edges_ & edges_within(g.vertices_);
  return g;
}

Graph Graph::compact() const {
  std::array<Vertex, kMaxVertices + 1> relabel{};
  Vertex next = 1;
  for (Vertex v = 1; v <= kMaxVertices; ++v) {
    if (contains(v)) relabel[static_cast<std::size_t>(v)] = next++;
  }
  Graph g(next - 1);
  for (const auto& [u, v] : edges()) {
    g.edges_ |= std::uint64_t{1} << edge_bit(relabel[static_cast<std::size_t>(u)], relabel[static_cast<std::size_t>(v)]);
  }
  return g;
}

bool Graph::is_compact() const { return (vertices_ & (vertices_ + 1)) == 0; }

ColouredGraph::ColouredGraph(Graph g, std::vector<Species> c) : graph(g), colours(std::move(c)) {
  if (!graph.is_compact()) throw UsageError("coloured graphs use the vertex set {1..n}");
  if (static_cast<int>(colours.size()) != graph.order()) {
    throw UsageError("colour array length must equal the number of vertices");
  }
  for (Species k : colours) {
    if (k < 1) throw UsageError("colours are species indices >= 1");
  }
}

bool is_connected(const Graph& g) {
  const int n = g.order();
  if (n == 0) return false;
  const auto& table = edge_table();
  DisjointSets sets;
  int components = n;
  for (std::uint64_t m = g.edge_mask(); m; m &= m - 1) {
    const auto& [u, v] = table.ends[static_cast<std::size_t>(std::countr_zero(m))];
    if (sets.unite(u, v)) --components;
  }
  return components == 1;
}

bool is_two_connected(const Graph& g) {
  // Two isolated vertices satisfy the deletion condition vacuously, so
  // connectivity of g itself is required as well.
  if (g.order() < 2 || !is_connected(g)) return false;
  for (Vertex v : g.vertices()) {
    if (!is_connected(g.without_vertex(v))) return false;
  }
  return true;
}

std::vector<Vertex> articulation_points(const Graph& g) {
  if (!is_connected(g)) throw UsageError("articulation_points: graph is not connected");
  std::vector<Vertex> out;
  if (g.order() < 3) return out;
  for (Vertex v : g.vertices()) {
    if (!is_connected(g.without_vertex(v))) out.push_back(v);
  }
  return out;
}

BlockDecomposition block_decomposition(const Graph& g) {
  if (g.order() < 2) throw UsageError("block_decomposition: need at least two vertices");
  if (!is_connected(g)) throw UsageError("block_decomposition: graph is not connected");

  // Maximal two-connected subgraphs are induced, so scan vertex subsets.
  std::vector<std::uint32_t> candidates;
  const std::uint32_t full = g.vertex_mask();
  for (std::uint32_t sub = full; sub; sub = (sub - 1) & full) {
    if (std::popcount(sub) >= 2 && is_two_connected(g.induced(sub))) candidates.push_back(sub);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) > std::popcount(b); });
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t c : candidates) {
    const bool covered = std::any_of(maximal.begin(), maximal.end(), [c](std::uint32_t m) { return (c & m) == c; });
    if (!covered) maximal.push_back(c);
  }

  BlockDecomposition d;
  for (std::uint32_t m : maximal) d.blocks.push_back(g.induced(m));
  std::sort(d.blocks.begin(), d.blocks.end(),
            [](const Graph& a, const Graph& b) { return a.edges() < b.edges(); });
  d.articulation_points = articulation_points(g);

  std::uint64_t seen = 0;
  for (const auto& b : d.blocks) {
    if (seen & b.edge_mask()) throw InvariantError("blocks share an edge");
    seen |= b.edge_mask();
  }
  if (seen != g.edge_mask()) throw InvariantError("blocks do not cover every edge");
  return d;
}

BlockCutTree block_cut_tree(const BlockDecomposition& d) {
  BlockCutTree t;
  t.block_count = static_cast<int>(d.blocks.size());
  t.articulation_points = d.articulation_points;
  for (int b = 0; b < t.block_count; ++b) {
    for (Vertex a : d.articulation_points) {
      if (d.blocks[static_cast<std::size_t>(b)].contains(a)) t.edges.emplace_back(b, a);
    }
  }
  // Tree check: |E| = |V| - 1 and connected.
  const int nodes = t.node_count();
  if (static_cast<int>(t.edges.size()) != nodes - 1) {
    throw InvariantError("block cut-point tree has the wrong number of edges");
  }
  std::vector<int> parent(static_cast<std::size_t>(nodes));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  auto node_of = [&](Vertex a) {
    auto it = std::find(t.articulation_points.begin(), t.articulation_points.end(), a);
    return t.block_count + static_cast<int>(it - t.articulation_points.begin());
  };
  int components = nodes;
  for (const auto& [b, a] : t.edges) {
    const int x = find(b);
    const int y = find(node_of(a));
    if (x != y) {
      parent[static_cast<std::size_t>(x)] = y;
      --components;
    }
  }
  if (components != 1) throw InvariantError("block cut-point tree is disconnected");
  return t;
}

std::vector<Species> canonical_colouring(const MultiIndex& n) {
  if (n.degree() == 0) throw UsageError("canonical_colouring: multi-index must be nonzero");
  std::vector<Species> colours;
  colours.reserve(static_cast<std::size_t>(n.degree()));
  for (const auto& [s, e] : n.entries()) colours.insert(colours.end(), static_cast<std::size_t>(e), s);
  return colours;
}

DissymmetryCounts dissymmetry_check(const Graph& g) {
  const auto d = block_decomposition(g);
  DissymmetryCounts c;
  c.lhs = 1;
  for (const auto& b : d.blocks) c.lhs += b.order();
  c.rhs = g.order() + static_cast<long>(d.blocks.size());
  return c;
}

ColouredGraph restrict_colouring(const Graph& sub, std::span<const Species> parent_colours) {
  std::vector<Species> colours;
  for (Vertex v : sub.vertices()) {
    if (v > static_cast<int>(parent_colours.size())) throw UsageError("restrict_colouring: colouring too short");
    colours.push_back(parent_colours[static_cast<std::size_t>(v - 1)]);
  }
  return ColouredGraph(sub.compact(), std::move(colours));
}

CanonicalKey canonical_form(const ColouredGraph& g) {
  const int n = g.graph.order();
  // order[i] = original vertex placed at canonical position i+1.
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return g.colours[static_cast<std::size_t>(a - 1)] < g.colours[static_cast<std::size_t>(b - 1)];
  });
  CanonicalKey key;
  for (Vertex v : order) key.colours.push_back(g.colours[static_cast<std::size_t>(v - 1)]);

  // Colour classes are contiguous ranges of positions.
  std::vector<std::pair<int, int>> classes;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && key.colours[static_cast<std::size_t>(j)] == key.colours[static_cast<std::size_t>(i)]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }

  const auto edges = g.graph.edges();
  std::vector<Vertex> position(static_cast<std::size_t>(n) + 1);
  std::uint64_t best = ~std::uint64_t{0};
  auto evaluate = [&] {
    for (int i = 0; i < n; ++i) position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i + 1;
    std::uint64_t m = 0;
    for (const auto& [u, v] : edges) {
      m |= std::uint64_t{1} << edge_bit(position[static_cast<std::size_t>(u)], position[static_cast<std::size_t>(v)]);
    }
    best = std::min(best, m);
  };
  // Odometer over the product of per-class permutations.
  for (auto& [b, e] : classes) std::sort(order.begin() + b, order.begin() + e);
  while (true) {
    evaluate();
    std::size_t c = 0;
    for (; c < classes.size(); ++c) {
      auto [b, e] = classes[c];
      if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
    }
    if (c == classes.size()) break;
  }
  key.edges = best;
  return key;
}

CanonicalKey canonical_form_cached(const ColouredGraph& g) {
  static std::shared_mutex mutex;
  static std::unordered_map<CanonicalKey, CanonicalKey, CanonicalKeyHash> memo;
  CanonicalKey raw{g.colours, g.graph.edge_mask()};
  {
    std::shared_lock lock(mutex);
    auto it = memo.find(raw);
    if (it != memo.end()) return it->second;
  }
  CanonicalKey key = canonical_form(g);
  std::unique_lock lock(mutex);
  return memo.emplace(std::move(raw), std::move(key)).first->second;
}

std::uint64_t stable_hash(const CanonicalKey& k) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = mix(k.edges ^ (static_cast<std::uint64_t>(k.colours.size()) << 56));
  for (Species c : k.colours) h = mix(h ^ static_cast<std::uint64_t>(c));
  return h;
}

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& k) const noexcept {
  return static_cast<std::size_t>(stable_hash(k));
}

}  // namespace virialkit
