#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "virialkit/graph.hpp"

namespace virialkit {

enum class GraphClass { all, connected, two_connected };

GraphClass parse_graph_class(std::string_view name);
const char* to_string(GraphClass c);

inline constexpr int kMaxEnumerationVertices = 8;

bool belongs_to(const Graph& g, GraphClass c);

// Every graph on {1..n} in the class exactly once, in increasing edge-mask order.
class GraphStream {
 public:
  class iterator {
   public:
    using value_type = Graph;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const GraphStream* owner, std::uint64_t mask);

    Graph operator*() const { return Graph::from_masks(owner_->vertices_, mask_); }
    iterator& operator++();
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

   private:
    void skip();

    const GraphStream* owner_ = nullptr;
    std::uint64_t mask_ = 0;
  };

  GraphStream(int n, GraphClass c);

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, limit_); }

  int order() const { return n_; }
  GraphClass graph_class() const { return class_; }

 private:
  friend class iterator;

  int n_;
  GraphClass class_;
  std::uint32_t vertices_;
  std::uint64_t limit_;  // 2^(n(n-1)/2)
};

GraphStream enumerate_graphs(int n, GraphClass c);

// Parallel count over the edge-mask range.
std::uint64_t count_graphs(int n, GraphClass c);
// Serial reference.
std::uint64_t count_graphs_serial(int n, GraphClass c);

// Connected graph on {1..m} with its blocks precomputed, compact form and
// parent vertex lists side by side.
struct CatalogEntry {
  Graph graph;
  std::vector<Graph> blocks;
  std::vector<std::vector<Vertex>> block_vertices;
  bool two_connected = false;
};

inline constexpr int kMaxCatalogVertices = 6;

// Built once per m and shared; m <= kMaxCatalogVertices.
const std::vector<CatalogEntry>& connected_catalog(int m);

CatalogEntry make_catalog_entry(const Graph& g);

}  // namespace virialkit
