#include <benchmark/benchmark.h>

#include <memory>

#include "virialkit/enumerate.hpp"
#include "virialkit/monte_carlo.hpp"
#include "virialkit/potential.hpp"
#include "virialkit/virial.hpp"
#include "virialkit/weight_source.hpp"

using namespace virialkit;

namespace {

void count_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(count_graphs(static_cast<int>(s.range(0)), GraphClass::two_connected));
}
void count_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(count_graphs_serial(static_cast<int>(s.range(0)), GraphClass::two_connected));
}
BENCHMARK(count_parallel)->Arg(6)->Arg(7);
BENCHMARK(count_serial)->Arg(6)->Arg(7);

const ColouredGraph& square() {
  static const ColouredGraph g(Graph::from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}), {1, 1, 1, 1});
  return g;
}

void mc_parallel(benchmark::State& s) {
  const HardRods1D rods(SpeciesTable::linear(1.0), 10.0);
  const McParams p{static_cast<std::uint64_t>(s.range(0)), 1, SamplingScheme::pseudo_random};
  for (auto _ : s) benchmark::DoNotOptimize(weight_mc(square(), rods, p));
}
void mc_serial(benchmark::State& s) {
  const HardRods1D rods(SpeciesTable::linear(1.0), 10.0);
  const McParams p{static_cast<std::uint64_t>(s.range(0)), 1, SamplingScheme::pseudo_random};
  for (auto _ : s) benchmark::DoNotOptimize(weight_mc_serial(square(), rods, p));
}
BENCHMARK(mc_parallel)->Arg(1 << 18);
BENCHMARK(mc_serial)->Arg(1 << 18);

std::shared_ptr<const SyntheticBlockModel> model() {
  auto m = std::make_shared<SyntheticBlockModel>(MissingBlockPolicy::hashed, 5);
  m->set_edge_weight(1, 1, Rational(-1));
  m->set_edge_weight(1, 2, Rational(1, 2));
  m->set_edge_weight(2, 2, Rational(-2));
  return m;
}

const Truncation kTrunc{5, 2};

void pressure_parallel(benchmark::State& s) {
  const SyntheticWeights w(model());
  for (auto _ : s) benchmark::DoNotOptimize(pressure_from_weights(w, kTrunc));
}
void pressure_serial(benchmark::State& s) {
  const SyntheticWeights w(model());
  for (auto _ : s) benchmark::DoNotOptimize(pressure_from_weights_serial(w, kTrunc));
}
BENCHMARK(pressure_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(pressure_serial)->Unit(benchmark::kMillisecond);

void lagrange_good_parallel(benchmark::State& s) {
  const PressureSeries<Rational> p = pressure_from_weights(SyntheticWeights(model()), kTrunc);
  for (auto _ : s) benchmark::DoNotOptimize(virial_lagrange_good(p));
}
void lagrange_good_serial(benchmark::State& s) {
  const PressureSeries<Rational> p = pressure_from_weights(SyntheticWeights(model()), kTrunc);
  for (auto _ : s) benchmark::DoNotOptimize(virial_lagrange_good_serial(p));
}
BENCHMARK(lagrange_good_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(lagrange_good_serial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
