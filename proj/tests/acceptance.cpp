// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/graph_oracle.hpp"
#include "oracles/quadrature_oracle.hpp"
#include "support/generators.hpp"
#include "virialkit/assumptions.hpp"
#include "virialkit/bounds.hpp"
#include "virialkit/enumerate.hpp"
#include "virialkit/inversion.hpp"
#include "virialkit/virial.hpp"
#include "virialkit/weight_source.hpp"

using namespace virialkit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

MultiIndex z(Species i, int e = 1) { return MultiIndex{{i, e}}; }

std::shared_ptr<SyntheticWeights> source(SyntheticBlockModel m) {
  return std::make_shared<SyntheticWeights>(std::make_shared<const SyntheticBlockModel>(std::move(m)));
}

// Random block-factorizing models shared by criteria 1, 2, 4 and 8.
struct ModelRun {
  std::shared_ptr<SyntheticWeights> src;
  Truncation t;
  PressureSeries<Rational> p;
  VirialSeries<Rational> c;
};

constexpr int kModels = 51;
constexpr int kDegree = 6;

std::vector<ModelRun>& corpus() {
  static std::vector<ModelRun> runs;
  return runs;
}

Outcome three_way() {
  std::mt19937_64 rng(20240601);
  std::size_t coefficients = 0;
  std::size_t mismatches = 0;
  for (int i = 0; i < kModels; ++i) {
    const int S = 1 + i % 3;
    const Truncation t{kDegree, S};
    auto src = source(gen::synthetic_model(rng, S));
    PressureSeries<Rational> p = pressure_from_weights(*src, t);
    VirialSeries<Rational> rec = invert_recursive(p);
    const VirialSeries<Rational> lg = virial_lagrange_good(p);
    const VirialSeries<Rational> tc = virial_from_two_connected(*src, t);
    for (const MultiIndex& n : indices_up_to(t.degree, t.species)) {
      if (n.degree() == 0) continue;
      ++coefficients;
      const Rational a = rec.series.coefficient(n);
      if (a != lg.series.coefficient(n) || a != tc.series.coefficient(n)) ++mismatches;
    }
    corpus().push_back({std::move(src), t, std::move(p), std::move(rec)});
  }
  std::ostringstream os;
  os << kModels << " models (S = 1..3, D = " << kDegree << "), " << coefficients << " coefficients, "
     << mismatches << " mismatches";
  return {mismatches == 0, os.str()};
}

Outcome round_trip() {
  int failures = 0;
  for (const ModelRun& r : corpus()) {
    if (substitute(r.c.series, densities(r.p)) != r.p.series) ++failures;
  }
  return {failures == 0 && !corpus().empty(),
          std::to_string(corpus().size()) + " models, " + std::to_string(failures) + " failures"};
}

Outcome worked_instances() {
  SyntheticBlockModel edge(MissingBlockPolicy::zero);
  edge.set_edge_weight(1, 1, Rational(-2));
  SyntheticBlockModel cross(MissingBlockPolicy::zero);
  cross.set_edge_weight(1, 2, Rational(1));
  const auto e = source(edge);
  const auto x = source(cross);
  const Truncation one{4, 1};
  const Truncation two{4, 2};
  const Rational c2 = virial_from_two_connected(*e, one).series.coefficient(z(1, 2));
  const Rational c2r = invert_recursive(pressure_from_weights(*e, one)).series.coefficient(z(1, 2));
  const MultiIndex n11{{1, 1}, {2, 1}};
  const Rational c11 = virial_from_two_connected(*x, two).series.coefficient(n11);
  const Rational c11r = invert_recursive(pressure_from_weights(*x, two)).series.coefficient(n11);
  const bool ok = c2 == 1 && c2r == 1 && c11 == -1 && c11r == -1;
  return {ok, "c(2) = " + format_rational(c2) + " / " + format_rational(c2r) + ", c(1,1) = " + format_rational(c11) + " / " +
                  format_rational(c11r) + " (two-connected / recursive)"};
}

Outcome ghost() {
  int failures = 0;
  for (const ModelRun& r : corpus()) {
    if (!verify_ghost_relation(*r.src, Truncation{5, r.t.species}).holds()) ++failures;
  }
  return {failures == 0 && !corpus().empty(),
          std::to_string(corpus().size()) + " models through D = 5, " + std::to_string(failures) + " failures"};
}

Outcome graph_counts() {
  const std::uint64_t connected[] = {0, 1, 1, 4, 38, 728, 26704};
  const std::uint64_t two_connected[] = {0, 0, 1, 1, 10, 238, 11368};
  bool ok = true;
  std::ostringstream os;
  os << "connected";
  for (int n = 1; n <= 6; ++n) {
    const auto brute = oracle::count_labelled(n);
    const std::uint64_t c = count_graphs(n, GraphClass::connected);
    const std::uint64_t b = count_graphs(n, GraphClass::two_connected);
    ok = ok && c == connected[n] && c == brute.connected && b == two_connected[n] && b == brute.two_connected;
    os << ' ' << c;
  }
  os << "; two-connected";
  for (int n = 2; n <= 6; ++n) os << ' ' << count_graphs(n, GraphClass::two_connected);
  return {ok, os.str()};
}

Outcome dissymmetry() {
  std::size_t graphs = 0;
  std::size_t failures = 0;
  for (int n = 2; n <= 6; ++n) {
    for (const CatalogEntry& e : connected_catalog(n)) {
      ++graphs;
      const auto d = dissymmetry_check(e.graph);
      if (d.lhs != d.rhs) ++failures;
    }
  }
  return {failures == 0, std::to_string(graphs) + " connected graphs, " + std::to_string(failures) + " failures"};
}

Outcome tonks() {
  auto rods = std::make_shared<const HardRods1D>(SpeciesTable({{1, 1.0}}), 10.0);
  McWeights w(rods, McParams{1000000, 7, SamplingScheme::pseudo_random});
  const Truncation t{3, 1};
  const PropagatedSeries r =
      propagate_std_error(w, [&](const WeightSource<double>& s) { return virial_from_two_connected(s, t).series; });
  const double c2 = r.value.coefficient(z(1, 2));
  const double c3 = r.value.coefficient(z(1, 3));
  const double s2 = r.std_error.at(z(1, 2));
  const double s3 = r.std_error.at(z(1, 3));
  // Oracles: c(2) = -w_edge / 2 with the exact pair integral, c(3) = -w_triangle / 3 by quadrature.
  const double o2 = -to_double(pair_integral_exact(*rods, 1, 1)) / 2.0;
  const double o3 = -oracle::triangle_weight(1.0, 10.0, 4000) / 3.0;
  const bool ok = std::fabs(c2 - o2) <= 3.0 * s2 && std::fabs(c3 - o3) <= 3.0 * s3 && std::fabs(c2 - 1.0) <= 3.0 * s2 &&
                  std::fabs(c3 - 1.0) <= 3.0 * s3;
  char buf[256];
  std::snprintf(buf, sizeof buf, "c(2) = %.5f +- %.5f (oracle %.5f), c(3) = %.5f +- %.5f (oracle %.5f), 1e6 samples", c2,
                s2, o2, c3, s3, o3);
  return {ok, buf};
}

Outcome bound_audit() {
  Series<double> p(Truncation{6, 1});
  p.accumulate(z(1), 1.0);
  p.accumulate(z(1, 2), -1.0);
  const DomainSpec spec{{{1, SpeciesDomain{0.25, 1.0, 0.75}}}};
  const AuditReport base = check_coefficient_bounds(p, spec, invert_recursive(make_pressure(p)).series);
  std::size_t violations = base.violations();
  std::size_t audited = 0;
  std::size_t rows = base.rows.size();
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const ModelRun& r = corpus()[i];
    const Series<double> pf = to_float(r.p.series);
    const auto found = find_admissible_spec(pf, 1000, 1000 + i);
    if (!found) continue;
    ++audited;
    const AuditReport a = check_coefficient_bounds(pf, *found, to_float(r.c.series));
    violations += a.violations();
    rows += a.rows.size();
  }
  std::ostringstream os;
  os << "z - z^2 plus " << audited << "/" << corpus().size() << " models with an admissible spec, " << rows
     << " coefficients, " << violations << " violations";
  return {violations == 0, os.str()};
}

Outcome constant() {
  const double c = det_bound_constant(DomainSpec{{{1, SpeciesDomain{0.25, 1.0, 1.0}}}});
  const double one = det_bound_constant(DomainSpec{{{1, SpeciesDomain{0.25, 1.0, 0.0}}}});
  const double err = std::fabs(c - std::exp(1.0 / 3.0));
  char buf[128];
  std::snprintf(buf, sizeof buf, "C = %.15f, |C - e^(1/3)| = %.1e, a = 0 gives %.17g", c, err, one);
  return {err < 1e-12 && one == 1.0, buf};
}

Outcome kp() {
  const HardRods1D rods(SpeciesTable::linear(1.0), 10.0);
  const McParams quad{1000, 1, SamplingScheme::pseudo_random};
  const int S = 60;
  const KpReport pass = kp_check(rods, KpSpec::geometric(0.5, 2.0, S, 1.0, 0.0), S, quad);
  const KpReport fail = kp_check(rods, KpSpec::geometric(0.5 * 2.8, 2.0, S, 1.0, 0.0), S, quad);
  const bool ok = pass.passed() && !fail.passed() && !fail.rows.at(0).passed;
  char buf[192];
  std::snprintf(buf, sizeof buf, "worked spec LHS(1) = %.4f <= 1 passes; x2.8 LHS(1) = %.4f > 1 fails", pass.rows.at(0).lhs,
                fail.rows.at(0).lhs);
  return {ok, buf};
}

Series<Rational> below(const Series<Rational>& s, int d) {
  Series<Rational> out(s.truncation());
  for (const auto& [n, v] : s.terms()) {
    if (n.degree() < d) out.accumulate(n, v);
  }
  return out;
}

Outcome series_algebra() {
  std::mt19937_64 rng(777);
  const int trials = 1000;
  int failures = 0;
  for (int i = 0; i < trials; ++i) {
    const Truncation t = gen::truncation(rng, 8, 4);
    const double density = t.degree >= 7 && t.species >= 3 ? 0.05 : 0.25;
    const auto a = gen::sparse_series(rng, t, density);
    const auto b = gen::sparse_series(rng, t, density);
    const auto c = gen::sparse_series(rng, t, density);
    const auto f = gen::series_with_constant(rng, t, Rational(1), density);
    const auto h = gen::series_with_constant(rng, t, gen::nonzero_rational(rng), density);
    const Species k = 1 + static_cast<Species>(rng() % static_cast<unsigned>(t.species));
    bool ok = (a * b) * c == a * (b * c);
    ok = ok && exp_series(log_series(f)) == f;
    ok = ok && h * reciprocal(h) == Series<Rational>::constant(1, t);
    ok = ok && below(partial_derivative(a * b, k), t.degree) ==
                   below(partial_derivative(a, k) * b + a * partial_derivative(b, k), t.degree);
    if (!ok) ++failures;
  }
  return {failures == 0, std::to_string(trials) + " random series triples (D <= 8, S <= 4), " +
                             std::to_string(failures) + " failures"};
}

Outcome functional_inversion() {
  std::mt19937_64 rng(888);
  const int trials = 300;
  int failures = 0;
  for (int i = 0; i < trials; ++i) {
    const int S = 1 + static_cast<int>(rng() % 3);
    const Truncation t{1 + static_cast<int>(rng() % 5), S};
    InversionProblem<Rational> prob{{}, t};
    for (Species k = 1; k <= S; ++k) {
      prob.functions.emplace(k, gen::series_with_constant(rng, t, gen::nonzero_rational(rng), 0.4));
    }
    const SeriesFamily<Rational> w = inverse_map(prob);
    for (Species k = 1; k <= S; ++k) {
      if (w.at(k) * substitute(prob.functions.at(k), w) != Series<Rational>::variable(k, t)) {
        ++failures;
        break;
      }
    }
  }
  return {failures == 0, std::to_string(trials) + " random systems (S <= 3, D <= 5), " + std::to_string(failures) +
                             " failures"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "three-way exact agreement", three_way},
      {2, "substitution round trip", round_trip},
      {3, "worked two-connected instances", worked_instances},
      {4, "ghost relation", ghost},
      {5, "graph counts against brute force", graph_counts},
      {6, "dissymmetry identity", dissymmetry},
      {7, "hard-rod virial coefficients", tonks},
      {8, "coefficient bound audit", bound_audit},
      {9, "determinant bound constant", constant},
      {10, "KP checker discrimination", kp},
      {11, "series algebra identities", series_algebra},
      {12, "functional inversion round trip", functional_inversion},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %d: %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
