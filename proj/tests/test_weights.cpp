#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/quadrature_oracle.hpp"
#include "support/generators.hpp"
#include "virialkit/assumptions.hpp"
#include "virialkit/errors.hpp"
#include "virialkit/monte_carlo.hpp"
#include "virialkit/potential.hpp"
#include "virialkit/synthetic.hpp"

using namespace virialkit;

namespace {

Molecule rod(double x, Species k = 1) {
  Molecule m;
  m.species = k;
  m.position = {x, 0.0, 0.0};
  return m;
}

HardRods1D unit_rods(double L = 10.0) { return HardRods1D(SpeciesTable({{1, 1.0}, {2, 3.0}}), L); }

ColouredGraph edge(Species a = 1, Species b = 1) { return {Graph::from_edges(2, {{1, 2}}), {a, b}}; }
ColouredGraph triangle() { return {Graph::from_edges(3, {{1, 2}, {2, 3}, {1, 3}}), {1, 1, 1}}; }
ColouredGraph path3() { return {Graph::from_edges(3, {{1, 2}, {2, 3}}), {1, 1, 1}}; }

Rational q(const char* s) { return parse_rational(s); }

}  // namespace

TEST_CASE("zeta") {
  const HardRods1D u = unit_rods();
  CHECK(zeta(u, rod(1.0), rod(1.5)) == -1.0);
  CHECK(zeta(u, rod(1.0), rod(3.0)) == 0.0);
  // Minimum image: 0.2 and 9.9 are 0.3 apart.
  CHECK(zeta(u, rod(0.2), rod(9.9)) == -1.0);
  const ConstantPotential log2(1, std::log(2.0), 10.0);
  CHECK(zeta(log2, rod(0.0), rod(5.0)) == doctest::Approx(-0.5));
}

TEST_CASE("molecule validation") {
  const HardRods1D u = unit_rods();
  CHECK_THROWS_AS(u.validate(rod(10.0)), UsageError);
  CHECK_NOTHROW(u.validate(rod(0.0)));
  const HardSpheres s(2, SpeciesTable({{1, 1.0}}), 5.0);
  Molecule m;
  m.orientation = {0.6, 0.8, 0.0};
  CHECK_NOTHROW(s.validate(m));
  m.orientation = {0.6, 0.6, 0.0};
  CHECK_THROWS_AS(s.validate(m), UsageError);
}

TEST_CASE("exact pair integral") {
  const HardRods1D u = unit_rods();
  CHECK(pair_integral_exact(u, 1, 1) == -2);
  CHECK(pair_integral_exact(u, 1, 2) == -4);
  const HardRods1D points(SpeciesTable({{1, 0.0}}), 10.0);
  CHECK(pair_integral_exact(points, 1, 1) == 0);
  CHECK_THROWS_AS(pair_integral_exact(HardRods1D(SpeciesTable({{1, 3.0}}), 5.0), 1, 1), DomainError);
}

TEST_CASE("quadrature oracle reproduces the analytic hard-rod values") {
  CHECK(oracle::pair_weight(1.0, 10.0, 4000) == doctest::Approx(-2.0).epsilon(1e-4));
  CHECK(oracle::triangle_weight(1.0, 10.0, 2000) == doctest::Approx(-3.0).epsilon(1e-3));
}

TEST_CASE("weight_mc basics") {
  const HardRods1D u = unit_rods();
  McParams p{200000, 7, SamplingScheme::pseudo_random};
  const McEstimate e = weight_mc(edge(), u, p);
  CHECK(e.sample_count == 200000);
  CHECK(e.seed == 7);
  CHECK(std::fabs(e.estimate - (-2.0)) <= 3.0 * e.std_error);

  const ConstantPotential zero(1, 0.0, 10.0);
  CHECK(weight_mc(triangle(), zero, p).estimate == 0.0);

  const ColouredGraph single(Graph(1), {1});
  CHECK(weight_mc(single, u, p).estimate == 1.0);
  CHECK_THROWS_AS(weight_mc(ColouredGraph(Graph(2), {1, 1}), u, p), UsageError);
  CHECK_THROWS_AS(weight_mc(edge(), u, McParams{1, 0, SamplingScheme::pseudo_random}), UsageError);
}

TEST_CASE("weight_mc triangle matches nested quadrature") {
  const HardRods1D u = unit_rods();
  const double oracle_value = oracle::triangle_weight(1.0, 10.0, 4000);
  for (SamplingScheme s : {SamplingScheme::pseudo_random, SamplingScheme::low_discrepancy}) {
    const McEstimate e = weight_mc(triangle(), u, McParams{400000, 3, s});
    CHECK(std::fabs(e.estimate - oracle_value) <= 3.0 * e.std_error + 1e-3);
  }
}

TEST_CASE("weight_mc is reproducible and independent of the execution path") {
  const HardRods1D u = unit_rods();
  for (SamplingScheme s : {SamplingScheme::pseudo_random, SamplingScheme::low_discrepancy}) {
    const McParams p{50000, 99, s};
    const McEstimate a = weight_mc(triangle(), u, p);
    const McEstimate b = weight_mc_serial(triangle(), u, p);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
    CHECK(weight_mc(triangle(), u, p).estimate == a.estimate);
  }
}

TEST_CASE("weight_mc is invariant under translation and rotation") {
  const HardRods1D u = unit_rods();
  const McParams p{100000, 5, SamplingScheme::pseudo_random};
  const McEstimate base = weight_mc(triangle(), u, p);
  Placement shifted;
  shifted.anchor = {7.3, 0.0, 0.0};
  const McEstimate moved = weight_mc(triangle(), u, p, shifted);
  // Translation only moves every sample rigidly, so the estimate is identical.
  CHECK(moved.estimate == doctest::Approx(base.estimate).epsilon(1e-12));
  Placement mirrored;
  mirrored.rotation[0][0] = -1.0;
  const McEstimate flipped = weight_mc(triangle(), u, p, mirrored);
  CHECK(std::fabs(flipped.estimate - base.estimate) <= 3.0 * std::hypot(base.std_error, flipped.std_error) + 1e-9);

  // 2D patchy particles: a quarter turn of everything leaves the estimate within noise.
  const PatchyParticles patchy(2, SpeciesTable({{1, 1.0}}), 2.0, 1.5, 0.5, 6.0);
  const McParams q{100000, 8, SamplingScheme::pseudo_random};
  const McEstimate a = weight_mc(edge(), patchy, q);
  Placement turned;
  turned.anchor = {1.0, 2.0, 0.0};
  turned.rotation = {{{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}};
  const McEstimate b = weight_mc(edge(), patchy, McParams{100000, 9, SamplingScheme::pseudo_random}, turned);
  CHECK(std::fabs(a.estimate - b.estimate) <= 4.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("statistical: pair weight within 3 stderr for at least 99% of seeds") {
  const HardRods1D u = unit_rods();
  int within = 0;
  const int seeds = 400;
  for (int s = 0; s < seeds; ++s) {
    const McEstimate e = weight_mc(edge(), u, McParams{20000, static_cast<std::uint64_t>(s) + 1000, SamplingScheme::pseudo_random});
    if (std::fabs(e.estimate + 2.0) <= 3.0 * e.std_error) ++within;
  }
  CHECK(within >= seeds * 99 / 100);
}

TEST_CASE("zeta symmetry on sampled pairs") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pos(0.0, 6.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  const PatchyParticles u(2, SpeciesTable({{1, 1.0}, {2, 1.4}}), 1.0, 1.6, 0.3, 6.0);
  const SquareWell w(3, SpeciesTable({{1, 1.0}}), 0.7, 1.5, 6.0);
  for (int i = 0; i < 2000; ++i) {
    Molecule a;
    Molecule b;
    a.species = 1 + static_cast<int>(rng() % 2);
    b.species = 1 + static_cast<int>(rng() % 2);
    a.position = {pos(rng), pos(rng), 0.0};
    b.position = {pos(rng), pos(rng), 0.0};
    const double ta = ang(rng);
    const double tb = ang(rng);
    a.orientation = {std::cos(ta), std::sin(ta), 0.0};
    b.orientation = {std::cos(tb), std::sin(tb), 0.0};
    CHECK(zeta(u, a, b) == zeta(u, b, a));
    a.species = b.species = 1;
    a.position[2] = pos(rng);
    b.position[2] = pos(rng);
    CHECK(zeta(w, a, b) == zeta(w, b, a));
  }
}

TEST_CASE("synthetic weights") {
  SyntheticBlockModel m;
  m.set_edge_weight(1, 1, Rational(-2));
  m.set_block_weight(triangle(), Rational(5));
  CHECK(synthetic_weight(ColouredGraph(Graph(1), {1}), m) == 1);
  CHECK(synthetic_weight(path3(), m) == 4);
  CHECK(synthetic_weight(triangle(), m) == 5);
  CHECK_THROWS_AS(synthetic_weight(edge(1, 2), m), UsageError);
  CHECK_THROWS_AS(synthetic_weight(ColouredGraph(Graph(2), {1, 1}), m), UsageError);
  CHECK_THROWS_AS(m.set_block_weight(path3(), Rational(1)), UsageError);

  SyntheticBlockModel zero(MissingBlockPolicy::zero);
  CHECK(synthetic_weight(edge(1, 2), zero) == 0);
  const SyntheticBlockModel hashed(MissingBlockPolicy::hashed, 42);
  const Rational h = synthetic_weight(edge(1, 2), hashed);
  CHECK(h == synthetic_weight(edge(2, 1), hashed));
  CHECK(abs(h) <= 5);
  CHECK(h.get_den() <= 4);
}

TEST_CASE("property: synthetic weights are relabelling invariant and factorize") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const SyntheticBlockModel m = gen::synthetic_model(rng, 3);
    const int n = 2 + static_cast<int>(rng() % 6);
    const ColouredGraph g(gen::connected_graph(rng, n), gen::colours(rng, n, 3));
    const Rational w = synthetic_weight(g, m);
    const ColouredGraph h = gen::relabel(g, gen::permutation(rng, n));
    CHECK(synthetic_weight(h, m) == w);
    // Independent recomputation: product of canonical block lookups on the relabelled copy.
    Rational product(1);
    for (const Graph& b : block_decomposition(h.graph).blocks) {
      product *= m.block_weight(restrict_colouring(b, h.colours));
    }
    CHECK(product == w);
  }
}

TEST_CASE("stability check") {
  const HardRods1D rods = unit_rods();
  const McParams trials{3000, 1, SamplingScheme::pseudo_random};
  CHECK(stability_check(rods, 0.0, trials, 6).passed());
  const ConstantPotential attractive(1, -1.0, 10.0);
  const StabilityReport bad = stability_check(attractive, 0.0, trials, 4);
  CHECK_FALSE(bad.passed());
  CHECK(bad.pair_violations > 0);
  const StabilityReport boundary = stability_check(attractive, 1.0, trials, 2, {1});
  CHECK(boundary.passed());
  CHECK(boundary.worst_pair_excess == doctest::Approx(0.0));
  CHECK_THROWS_AS(stability_check(rods, 0.0, trials, 9), UsageError);
}

TEST_CASE("KP check") {
  const HardRods1D rods(SpeciesTable::linear(1.0), 10.0);
  const McParams quad{1000, 1, SamplingScheme::pseudo_random};
  const int S = 60;
  const KpReport pass = kp_check(rods, KpSpec::geometric(0.5, 2.0, S, 1.0, 0.0), S, quad);
  CHECK(pass.passed());
  CHECK(pass.integral_method == "analytic (R^d)");
  // LHS(k) = 0.5 sum e^{-k'} (k + k').
  const double s0 = 1.0 / (std::exp(1.0) - 1.0);
  const double s1 = std::exp(1.0) / ((std::exp(1.0) - 1.0) * (std::exp(1.0) - 1.0));
  CHECK(pass.rows[0].lhs == doctest::Approx(0.5 * (s0 + s1)).epsilon(1e-9));
  CHECK(pass.rows[4].lhs == doctest::Approx(0.5 * (5 * s0 + s1)).epsilon(1e-9));
  const KpReport fail = kp_check(rods, KpSpec::geometric(1.4, 2.0, S, 1.0, 0.0), S, quad);
  CHECK_FALSE(fail.passed());
  CHECK_FALSE(fail.rows[0].passed);
  CHECK(fail.rows[0].lhs == doctest::Approx(2.10).epsilon(0.01));

  const ConstantPotential none(1, 0.0, 10.0);
  const KpReport trivial = kp_check(none, KpSpec::geometric(0.5, 2.0, 5, 1.0, 0.0), 5, quad);
  CHECK(trivial.passed());
  CHECK(trivial.rows[0].lhs == 0.0);

  const PatchyParticles patchy(2, SpeciesTable({{1, 1.0}}), 1.0, 1.5, 0.5, 6.0);
  KpSpec one;
  one.radii = {{1, 0.01}};
  const KpReport mc = kp_check(patchy, one, 1, McParams{20000, 2, SamplingScheme::pseudo_random});
  CHECK(mc.integral_method == "monte-carlo (box)");
  CHECK(mc.rows[0].lhs > 0.0);
}
