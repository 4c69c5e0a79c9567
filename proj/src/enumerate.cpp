#include "virialkit/enumerate.hpp"

#include <array>
#include <mutex>
#include <string>

#include <omp.h>

#include "virialkit/errors.hpp"

namespace virialkit {

GraphClass parse_graph_class(std::string_view name) {
  if (name == "all") return GraphClass::all;
  if (name == "connected") return GraphClass::connected;
  if (name == "two_connected" || name == "two-connected") return GraphClass::two_connected;
  throw UsageError("unknown graph class '" + std::string(name) + "' (all | connected | two_connected)");
}

const char* to_string(GraphClass c) {
  switch (c) {
    case GraphClass::all: return "all";
    case GraphClass::connected: return "connected";
    case GraphClass::two_connected: return "two_connected";
  }
  return "?";
}

bool belongs_to(const Graph& g, GraphClass c) {
  switch (c) {
    case GraphClass::all: return true;
    case GraphClass::connected: return is_connected(g);
    case GraphClass::two_connected: return is_two_connected(g);
  }
  return false;
}

namespace {

void check_order(int n) {
  if (n < 0 || n > kMaxEnumerationVertices) {
    throw UsageError("graph enumeration supports 0 <= n <= " + std::to_string(kMaxEnumerationVertices));
  }
}

std::uint32_t full_vertex_mask(int n) { return n == 0 ? 0u : static_cast<std::uint32_t>((1u << n) - 1u); }

std::uint64_t mask_limit(int n) { return std::uint64_t{1} << (n * (n - 1) / 2); }

}  // namespace

GraphStream::GraphStream(int n, GraphClass c)
    : n_(n), class_(c), vertices_(0), limit_(0) {
  check_order(n);
  vertices_ = full_vertex_mask(n);
  limit_ = mask_limit(n);
}

GraphStream::iterator::iterator(const GraphStream* owner, std::uint64_t mask) : owner_(owner), mask_(mask) { skip(); }

GraphStream::iterator& GraphStream::iterator::operator++() {
  ++mask_;
  skip();
  return *this;
}

void GraphStream::iterator::skip() {
  if (owner_ == nullptr) return;
  while (mask_ < owner_->limit_ && !belongs_to(Graph::from_masks(owner_->vertices_, mask_), owner_->class_)) ++mask_;
}

GraphStream enumerate_graphs(int n, GraphClass c) { return GraphStream(n, c); }

std::uint64_t count_graphs(int n, GraphClass c) {
  check_order(n);
  const std::uint32_t vertices = full_vertex_mask(n);
  const auto limit = static_cast<std::int64_t>(mask_limit(n));
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 4096) reduction(+ : total)
  for (std::int64_t mask = 0; mask < limit; ++mask) {
    if (belongs_to(Graph::from_masks(vertices, static_cast<std::uint64_t>(mask)), c)) ++total;
  }
  return total;
}

std::uint64_t count_graphs_serial(int n, GraphClass c) {
  std::uint64_t total = 0;
  for ([[maybe_unused]] const Graph& g : enumerate_graphs(n, c)) ++total;
  return total;
}

CatalogEntry make_catalog_entry(const Graph& g) {
  CatalogEntry e;
  e.graph = g;
  if (g.order() >= 2) {
    const auto d = block_decomposition(g);
    for (const auto& b : d.blocks) {
      e.blocks.push_back(b.compact());
      e.block_vertices.push_back(b.vertices());
    }
    e.two_connected = d.blocks.size() == 1 && d.blocks.front().order() == g.order();
  }
  return e;
}

const std::vector<CatalogEntry>& connected_catalog(int m) {
  if (m < 1 || m > kMaxCatalogVertices) {
    throw UsageError("connected_catalog: 1 <= m <= " + std::to_string(kMaxCatalogVertices));
  }
  static std::array<std::vector<CatalogEntry>, kMaxCatalogVertices + 1> catalogs;
  static std::array<std::once_flag, kMaxCatalogVertices + 1> once;
  std::call_once(once[static_cast<std::size_t>(m)], [m] {
    std::vector<Graph> graphs;
    for (const Graph& g : enumerate_graphs(m, GraphClass::connected)) graphs.push_back(g);
    std::vector<CatalogEntry> entries(graphs.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(graphs.size()); ++i) {
      entries[static_cast<std::size_t>(i)] = make_catalog_entry(graphs[static_cast<std::size_t>(i)]);
    }
    catalogs[static_cast<std::size_t>(m)] = std::move(entries);
  });
  return catalogs[static_cast<std::size_t>(m)];
}

}  // namespace virialkit
