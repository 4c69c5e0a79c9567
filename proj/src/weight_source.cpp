#include "virialkit/weight_source.hpp"

#include "virialkit/errors.hpp"

namespace virialkit {

namespace {

std::vector<Species> block_colours(const std::vector<Vertex>& vertices, std::span<const Species> colours) {
  std::vector<Species> out;
  out.reserve(vertices.size());
  for (Vertex v : vertices) out.push_back(colours[static_cast<std::size_t>(v - 1)]);
  return out;
}

}  // namespace

SyntheticWeights::SyntheticWeights(std::shared_ptr<const SyntheticBlockModel> model) : model_(std::move(model)) {
  if (!model_) throw UsageError("SyntheticWeights: null model");
}

Rational SyntheticWeights::weight(const ColouredGraph& g) const { return synthetic_weight(g, *model_); }

Rational SyntheticWeights::weight(const CatalogEntry& e, std::span<const Species> colours) const {
  if (e.graph.order() == 1) return Rational(1);
  Rational w(1);
  for (std::size_t i = 0; i < e.blocks.size(); ++i) {
    w *= model_->block_weight(ColouredGraph(e.blocks[i], block_colours(e.block_vertices[i], colours)));
    if (w == 0) break;
  }
  return w;
}

std::string SyntheticWeights::describe() const {
  return std::string("synthetic block model (") + std::to_string(model_->entries().size()) +
         " explicit blocks, missing=" + to_string(model_->policy()) + ")";
}

FloatWeights::FloatWeights(std::shared_ptr<const WeightSource<Rational>> exact) : exact_(std::move(exact)) {
  if (!exact_) throw UsageError("FloatWeights: null source");
}

double FloatWeights::weight(const ColouredGraph& g) const { return to_double(exact_->weight(g)); }

double FloatWeights::weight(const CatalogEntry& e, std::span<const Species> colours) const {
  return to_double(exact_->weight(e, colours));
}

McWeights::McWeights(std::shared_ptr<const PairPotential> u, McParams params) : u_(std::move(u)), params_(params) {
  if (!u_) throw UsageError("McWeights: null potential");
  validate(params_);
}

McEstimate McWeights::block_estimate(const ColouredGraph& block) const {
  const CanonicalKey key = canonical_form_cached(block);
  {
    std::lock_guard lock(mutex_);
    auto it = estimates_.find(key);
    if (it != estimates_.end()) return it->second;
  }
  McParams p = params_;
  p.seed = mix_seed(params_.seed ^ stable_hash(key));
  const McEstimate e = weight_mc(block, *u_, p);
  std::lock_guard lock(mutex_);
  estimates_.emplace(key, e);
  return e;
}

double McWeights::block_value(const ColouredGraph& block) const {
  double v = block_estimate(block).estimate;
  if (perturbation_ && canonical_form_cached(block) == perturbation_->first) v += perturbation_->second;
  return v;
}

double McWeights::weight(const ColouredGraph& g) const {
  if (g.graph.order() == 1) return 1.0;
  if (!is_connected(g.graph)) throw UsageError("McWeights: graph must be connected");
  double w = 1.0;
  for (const Graph& b : block_decomposition(g.graph).blocks) w *= block_value(restrict_colouring(b, g.colours));
  return w;
}

double McWeights::weight(const CatalogEntry& e, std::span<const Species> colours) const {
  if (e.graph.order() == 1) return 1.0;
  double w = 1.0;
  for (std::size_t i = 0; i < e.blocks.size(); ++i) {
    w *= block_value(ColouredGraph(e.blocks[i], block_colours(e.block_vertices[i], colours)));
  }
  return w;
}

std::string McWeights::describe() const {
  return "monte-carlo weights for " + u_->name() + " (" + std::to_string(params_.sample_count) + " samples, " +
         to_string(params_.scheme) + ", seed " + std::to_string(params_.seed) + ")";
}

std::map<CanonicalKey, McEstimate> McWeights::estimates() const {
  std::lock_guard lock(mutex_);
  return estimates_;
}

void McWeights::set_perturbation(const CanonicalKey& key, double delta) {
  if (delta == 0.0) {
    perturbation_.reset();
  } else {
    perturbation_ = std::make_pair(key, delta);
  }
}

void McWeights::clear_perturbation() { perturbation_.reset(); }

}  // namespace virialkit
