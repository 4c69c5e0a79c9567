#pragma once

// Independent graph counting by adjacency matrices and depth-first search.
// Shares no code with the library.

#include <cstdint>
#include <vector>

namespace oracle {

using Adjacency = std::vector<std::vector<bool>>;

inline Adjacency adjacency_from_code(int n, std::uint64_t code) {
  Adjacency a(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++bit) {
      if (code >> bit & 1U) a[i][j] = a[j][i] = true;
    }
  }
  return a;
}

// Connected after deleting `removed` (-1 for none); the empty graph is not connected.
inline bool connected_without(const Adjacency& a, int removed) {
  const int n = static_cast<int>(a.size());
  int start = -1;
  int alive = 0;
  for (int v = 0; v < n; ++v) {
    if (v == removed) continue;
    ++alive;
    if (start < 0) start = v;
  }
  if (alive == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{start};
  seen[start] = true;
  int reached = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++reached;
    for (int w = 0; w < n; ++w) {
      if (w != removed && a[v][w] && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return reached == alive;
}

inline bool two_connected(const Adjacency& a) {
  const int n = static_cast<int>(a.size());
  if (n < 2 || !connected_without(a, -1)) return false;
  for (int v = 0; v < n; ++v) {
    if (!connected_without(a, v)) return false;
  }
  return true;
}

struct Counts {
  std::uint64_t all = 0;
  std::uint64_t connected = 0;
  std::uint64_t two_connected = 0;
};

inline Counts count_labelled(int n) {
  Counts c;
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code) {
    const Adjacency a = adjacency_from_code(n, code);
    ++c.all;
    if (connected_without(a, -1)) ++c.connected;
    if (two_connected(a)) ++c.two_connected;
  }
  return c;
}

// Values produced by count_labelled before the library existed.
inline constexpr std::uint64_t kConnected[] = {0, 1, 1, 4, 38, 728, 26704};
inline constexpr std::uint64_t kTwoConnected[] = {0, 0, 1, 1, 10, 238, 11368};

}  // namespace oracle
