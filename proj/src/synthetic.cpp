#include "virialkit/synthetic.hpp"

#include <string>

#include "virialkit/errors.hpp"
#include "virialkit/monte_carlo.hpp"

namespace virialkit {

MissingBlockPolicy parse_missing_policy(std::string_view name) {
  if (name == "error") return MissingBlockPolicy::error;
  if (name == "zero") return MissingBlockPolicy::zero;
  if (name == "hashed") return MissingBlockPolicy::hashed;
  throw UsageError("unknown missing-block policy '" + std::string(name) + "'");
}

const char* to_string(MissingBlockPolicy p) {
  switch (p) {
    case MissingBlockPolicy::error: return "error";
    case MissingBlockPolicy::zero: return "zero";
    case MissingBlockPolicy::hashed: return "hashed";
  }
  return "error";
}

SyntheticBlockModel::SyntheticBlockModel(MissingBlockPolicy policy, std::uint64_t seed)
    : policy_(policy), seed_(seed) {}

SyntheticBlockModel::SyntheticBlockModel(const SyntheticBlockModel& other)
    : policy_(other.policy_), seed_(other.seed_), entries_(other.entries_) {}

SyntheticBlockModel& SyntheticBlockModel::operator=(const SyntheticBlockModel& other) {
  if (this != &other) {
    policy_ = other.policy_;
    seed_ = other.seed_;
    entries_ = other.entries_;
    std::lock_guard lock(memo_mutex_);
    memo_.clear();
  }
  return *this;
}

void SyntheticBlockModel::set_block_weight(const ColouredGraph& block, const Rational& w) {
  if (!is_two_connected(block.graph)) throw UsageError("block weights are defined on two-connected graphs only");
  entries_[canonical_form(block)] = w;
  std::lock_guard lock(memo_mutex_);
  memo_.clear();
}

void SyntheticBlockModel::set_edge_weight(Species k, Species l, const Rational& w) {
  set_block_weight(ColouredGraph(Graph::from_edges(2, {{1, 2}}), {k, l}), w);
}

Rational hashed_block_weight(const CanonicalKey& key, std::uint64_t seed) {
  const std::uint64_t h = mix_seed(seed ^ stable_hash(key));
  const long den = 1 + static_cast<long>(h % 4);
  const long num = static_cast<long>((h >> 8) % static_cast<std::uint64_t>(10 * den + 1)) - 5 * den;
  Rational w(num, den);
  w.canonicalize();
  return w;
}

Rational SyntheticBlockModel::lookup(const CanonicalKey& key) const {
  auto it = entries_.find(key);
  if (it != entries_.end()) return it->second;
  switch (policy_) {
    case MissingBlockPolicy::zero: return Rational(0);
    case MissingBlockPolicy::hashed: return hashed_block_weight(key, seed_);
    case MissingBlockPolicy::error: break;
  }
  std::string colours;
  for (Species c : key.colours) colours += (colours.empty() ? "" : ",") + std::to_string(c);
  throw UsageError("no weight for block with " + std::to_string(key.colours.size()) + " vertices, colours [" +
                   colours + "]");
}

Rational SyntheticBlockModel::block_weight(const ColouredGraph& block) const {
  const CanonicalKey raw{block.colours, block.graph.edge_mask()};
  {
    std::lock_guard lock(memo_mutex_);
    auto it = memo_.find(raw);
    if (it != memo_.end()) return it->second;
  }
  if (!is_two_connected(block.graph)) throw UsageError("block_weight: graph is not two-connected");
  Rational w = lookup(canonical_form_cached(block));
  std::lock_guard lock(memo_mutex_);
  memo_.emplace(raw, w);
  return w;
}

Rational synthetic_weight(const ColouredGraph& g, const SyntheticBlockModel& m) {
  if (g.graph.order() == 1) return Rational(1);
  if (!is_connected(g.graph)) throw UsageError("synthetic_weight: graph must be connected");
  const BlockDecomposition d = block_decomposition(g.graph);
  Rational w(1);
  for (const Graph& b : d.blocks) {
    w *= m.block_weight(restrict_colouring(b, g.colours));
    if (w == 0) break;
  }
  return w;
}

}  // namespace virialkit
