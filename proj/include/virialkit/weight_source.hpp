#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>

#include "virialkit/enumerate.hpp"
#include "virialkit/monte_carlo.hpp"
#include "virialkit/potential.hpp"
#include "virialkit/synthetic.hpp"

namespace virialkit {

// Source of w(g, k) for connected coloured graphs.
template <class F>
class WeightSource {
 public:
  virtual ~WeightSource() = default;

  virtual F weight(const ColouredGraph& g) const = 0;
  // Same value; sources may use the precomputed blocks. colours[v-1] colours v.
  virtual F weight(const CatalogEntry& e, std::span<const Species> colours) const {
    return weight(ColouredGraph(e.graph, std::vector<Species>(colours.begin(), colours.end())));
  }
  // True when w(g) is the product of the weights of the blocks of g.
  virtual bool block_factorizing() const = 0;
  // Whether weight() may be called concurrently.
  virtual bool thread_safe() const { return true; }
  virtual std::string describe() const = 0;
};

class SyntheticWeights final : public WeightSource<Rational> {
 public:
  explicit SyntheticWeights(std::shared_ptr<const SyntheticBlockModel> model);

  Rational weight(const ColouredGraph& g) const override;
  Rational weight(const CatalogEntry& e, std::span<const Species> colours) const override;
  bool block_factorizing() const override { return true; }
  std::string describe() const override;

  const SyntheticBlockModel& model() const { return *model_; }

 private:
  std::shared_ptr<const SyntheticBlockModel> model_;
};

// Exact rational weights viewed in the float field.
class FloatWeights final : public WeightSource<double> {
 public:
  explicit FloatWeights(std::shared_ptr<const WeightSource<Rational>> exact);

  double weight(const ColouredGraph& g) const override;
  double weight(const CatalogEntry& e, std::span<const Species> colours) const override;
  bool block_factorizing() const override { return exact_->block_factorizing(); }
  bool thread_safe() const override { return exact_->thread_safe(); }
  std::string describe() const override { return exact_->describe() + " (float)"; }

 private:
  std::shared_ptr<const WeightSource<Rational>> exact_;
};

// Monte Carlo block weights for a pair potential. Each coloured block class is
// estimated once, with a seed derived from the base seed and the class, and
// graph weights are products of block estimates.
class McWeights final : public WeightSource<double> {
 public:
  McWeights(std::shared_ptr<const PairPotential> u, McParams params);

  double weight(const ColouredGraph& g) const override;
  double weight(const CatalogEntry& e, std::span<const Species> colours) const override;
  bool block_factorizing() const override { return true; }
  bool thread_safe() const override { return false; }
  std::string describe() const override;

  McEstimate block_estimate(const ColouredGraph& block) const;
  // Every block class estimated so far.
  std::map<CanonicalKey, McEstimate> estimates() const;

  // Perturbs one block class by delta in later weight() calls (delta 0 clears).
  void set_perturbation(const CanonicalKey& key, double delta);
  void clear_perturbation();

  const PairPotential& potential() const { return *u_; }
  const McParams& params() const { return params_; }

 private:
  double block_value(const ColouredGraph& block) const;

  std::shared_ptr<const PairPotential> u_;
  McParams params_;
  mutable std::mutex mutex_;
  mutable std::map<CanonicalKey, McEstimate> estimates_;
  std::optional<std::pair<CanonicalKey, double>> perturbation_;
};

}  // namespace virialkit
