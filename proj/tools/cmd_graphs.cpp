#include <memory>

#include "cli.hpp"
#include "virialkit/enumerate.hpp"
#include "virialkit/errors.hpp"

namespace vkcli {

using nlohmann::json;
using namespace virialkit;

namespace {

std::string edge_list(const Graph& g) {
  std::string s;
  for (auto [u, v] : g.edges()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(u) + "-" + std::to_string(v);
  }
  return s;
}

Report count(int n, const std::string& cls) {
  const GraphClass c = parse_graph_class(cls);
  const std::uint64_t k = count_graphs(n, c);
  Report r;
  r.doc = {{"command", "graphs count"}, {"n", n}, {"class", to_string(c)}, {"count", k}};
  r.columns = {"n", "class", "count"};
  r.rows.push_back({std::to_string(n), to_string(c), std::to_string(k)});
  return r;
}

Report dissymmetry(int n) {
  if (n < 2) throw UsageError("dissymmetry needs n >= 2");
  Report r;
  r.columns = {"graph", "edges", "blocks", "lhs", "rhs", "pass"};
  json rows = json::array();
  std::uint64_t passed = 0;
  std::uint64_t index = 0;
  auto visit = [&](const Graph& g) {
    const auto d = dissymmetry_check(g);
    const std::size_t blocks = block_decomposition(g).blocks.size();
    const bool ok = d.lhs == d.rhs;
    passed += ok ? 1 : 0;
    rows.push_back({{"graph", index}, {"edges", edge_list(g)}, {"blocks", blocks}, {"lhs", d.lhs}, {"rhs", d.rhs}, {"pass", ok}});
    r.rows.push_back({std::to_string(index), edge_list(g), std::to_string(blocks), std::to_string(d.lhs),
                      std::to_string(d.rhs), ok ? "true" : "false"});
    ++index;
  };
  if (n <= kMaxCatalogVertices) {
    for (const CatalogEntry& e : connected_catalog(n)) visit(e.graph);
  } else {
    for (const Graph& g : enumerate_graphs(n, GraphClass::connected)) visit(g);
  }
  r.ok = passed == index;
  r.doc = {{"command", "graphs dissymmetry"}, {"n", n},   {"graphs", index},
           {"passed", passed},                {"failed", index - passed}, {"rows", rows}};
  return r;
}

Report blocks(const std::string& path) {
  const ColouredGraph g = graph_from_json(read_json_file(path));
  const BlockDecomposition d = block_decomposition(g.graph);
  const BlockCutTree t = block_cut_tree(d);
  Report r;
  json list = json::array();
  r.columns = {"block", "vertices", "edges"};
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    const Graph& b = d.blocks[i];
    json vertices = json::array();
    std::string vs;
    for (Vertex v : b.vertices()) {
      vertices.push_back(v);
      vs += (vs.empty() ? "" : " ") + std::to_string(v);
    }
    json edges = json::array();
    for (auto [u, v] : b.edges()) edges.push_back({u, v});
    list.push_back({{"vertices", vertices}, {"edges", edges}});
    r.rows.push_back({std::to_string(i), vs, edge_list(b)});
  }
  json tree_edges = json::array();
  for (auto [b, v] : t.edges) tree_edges.push_back({{"block", b}, {"articulation_point", v}});
  r.doc = {{"command", "graphs blocks"},
           {"graph", graph_to_json(g)},
           {"block_count", d.blocks.size()},
           {"blocks", list},
           {"articulation_points", d.articulation_points},
           {"tree", {{"nodes", t.node_count()}, {"edges", tree_edges}}}};
  return r;
}

}  // namespace

void add_graphs_commands(CLI::App& app, const GlobalOptions&, Registry& r) {
  CLI::App* graphs = app.add_subcommand("graphs", "Enumerate graphs and check block structure");
  graphs->require_subcommand(1);

  auto count_opts = std::make_shared<std::pair<int, std::string>>(0, "connected");
  CLI::App* c = graphs->add_subcommand("count", "Count labelled graphs on n vertices");
  c->add_option("--n", count_opts->first, "Number of vertices")->required();
  c->add_option("--class", count_opts->second, "all, connected or two-connected")->capture_default_str();
  r.add(c, [count_opts] { return count(count_opts->first, count_opts->second); });

  auto n = std::make_shared<int>(0);
  CLI::App* d = graphs->add_subcommand("dissymmetry", "Check 1 + sum |V(g_i)| = n + m for every connected graph");
  d->add_option("--n", *n, "Number of vertices")->required();
  r.add(d, [n] { return dissymmetry(*n); });

  auto path = std::make_shared<std::string>();
  CLI::App* b = graphs->add_subcommand("blocks", "Block decomposition and block cut-point tree of a graph");
  b->add_option("--input", *path, "Graph JSON file")->required();
  r.add(b, [path] { return blocks(*path); });
}

}  // namespace vkcli
