#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string_view>
#include <unordered_map>

#include "virialkit/graph.hpp"
#include "virialkit/rational.hpp"

namespace virialkit {

// What to do for a block with no explicit weight.
enum class MissingBlockPolicy {
  error,   // UsageError
  zero,    // weight 0
  hashed,  // deterministic pseudo-random rational in [-5, 5] derived from the seed
};

MissingBlockPolicy parse_missing_policy(std::string_view name);
const char* to_string(MissingBlockPolicy p);

// Weights on coloured two-connected graphs, keyed by canonical form, extended
// to connected graphs by the product over blocks.
class SyntheticBlockModel {
 public:
  explicit SyntheticBlockModel(MissingBlockPolicy policy = MissingBlockPolicy::error, std::uint64_t seed = 0);
  SyntheticBlockModel(const SyntheticBlockModel& other);
  SyntheticBlockModel& operator=(const SyntheticBlockModel& other);

  // Block must be two-connected; replaces any previous entry of its class.
  void set_block_weight(const ColouredGraph& block, const Rational& w);
  // Single-edge block with colours {k, l}.
  void set_edge_weight(Species k, Species l, const Rational& w);

  Rational block_weight(const ColouredGraph& block) const;

  MissingBlockPolicy policy() const { return policy_; }
  std::uint64_t seed() const { return seed_; }
  const std::map<CanonicalKey, Rational>& entries() const { return entries_; }

 private:
  Rational lookup(const CanonicalKey& key) const;

  MissingBlockPolicy policy_;
  std::uint64_t seed_;
  std::map<CanonicalKey, Rational> entries_;
  // Raw (uncanonicalised) block -> weight; avoids repeated permutation search.
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<CanonicalKey, Rational, CanonicalKeyHash> memo_;
};

// Product of block weights; 1 for a single vertex. UsageError if disconnected.
Rational synthetic_weight(const ColouredGraph& g, const SyntheticBlockModel& m);

// Hashed value used by MissingBlockPolicy::hashed: p/q with q in 1..4, |p/q| <= 5.
Rational hashed_block_weight(const CanonicalKey& key, std::uint64_t seed);

}  // namespace virialkit
