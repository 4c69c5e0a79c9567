#include "virialkit/virial.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <string>

#include "virialkit/enumerate.hpp"
#include "virialkit/errors.hpp"

namespace virialkit {

InversionMethod parse_inversion_method(std::string_view name) {
  if (name == "recursive") return InversionMethod::recursive;
  if (name == "lagrange-good" || name == "lagrange_good") return InversionMethod::lagrange_good;
  if (name == "two-connected" || name == "two_connected") return InversionMethod::two_connected;
  throw UsageError("unknown inversion method '" + std::string(name) + "'");
}

const char* to_string(InversionMethod m) {
  switch (m) {
    case InversionMethod::recursive: return "recursive";
    case InversionMethod::lagrange_good: return "lagrange-good";
    case InversionMethod::two_connected: return "two-connected";
  }
  return "recursive";
}

namespace {

// Collects the first exception thrown inside an OpenMP region.
class ErrorSlot {
 public:
  template <class Fn>
  void run(Fn&& fn) {
    try {
      fn();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

template <class F>
Series<F> retruncate(const Series<F>& a, Truncation t) {
  Series<F> out(t);
  for (const auto& [n, c] : a.terms()) out.accumulate(n, c);
  return out;
}

template <class F>
F divide_by_factorial(const F& sum, const MultiIndex& n) {
  return sum / FieldTraits<F>::from_rational(n.factorial());
}

// Sum of w(g, colours) over the graphs of order m in class c.
template <class F>
F sum_weights(const WeightSource<F>& source, int m, GraphClass c, const std::vector<Species>& colours) {
  if (m <= kMaxCatalogVertices) {
    const auto& catalog = connected_catalog(m);
    constexpr std::size_t kChunk = 512;
    const std::size_t chunks = (catalog.size() + kChunk - 1) / kChunk;
    std::vector<F> partial(chunks, F(0));
    ErrorSlot errors;
    const auto count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1) if (source.thread_safe() && chunks > 1)
    for (std::int64_t ci = 0; ci < count; ++ci) {
      errors.run([&] {
        const auto k = static_cast<std::size_t>(ci);
        F acc(0);
        const std::size_t end = std::min(catalog.size(), (k + 1) * kChunk);
        for (std::size_t i = k * kChunk; i < end; ++i) {
          const CatalogEntry& e = catalog[i];
          if (c == GraphClass::two_connected && !e.two_connected) continue;
          acc += source.weight(e, colours);
        }
        partial[k] = acc;
      });
    }
    errors.rethrow();
    F total(0);
    for (const F& x : partial) total += x;
    return total;
  }
  F total(0);
  for (const Graph& g : enumerate_graphs(m, c)) total += source.weight(ColouredGraph(g, colours));
  return total;
}

template <class F>
Series<F> graph_sum_series(const WeightSource<F>& source, Truncation t, int min_degree, GraphClass c) {
  validate(t);
  Series<F> out(t);
  for (int m = std::max(1, min_degree); m <= t.degree; ++m) {
    for (const MultiIndex& n : indices_of_degree(m, t.species)) {
      const F sum = sum_weights(source, m, c, canonical_colouring(n));
      out.accumulate(n, divide_by_factorial(sum, n));
    }
  }
  return out;
}

template <class F>
void require_linear_terms(const PressureSeries<F>& p, int upto) {
  for (Species i = 1; i <= upto; ++i) {
    if (FieldTraits<F>::is_zero(p.series.coefficient(MultiIndex::unit(i)))) {
      throw DomainError("coefficient of z_" + std::to_string(i) + " is zero; the series cannot be inverted");
    }
  }
}

// Shared pieces of the Lagrange-Good formula for species 1..N.
template <class F>
struct LagrangeGoodContext {
  std::vector<Series<F>> reciprocals;  // index i-1: 1 / dp/dz_i
  Series<F> det;
  Series<F> p;

  LagrangeGoodContext(const Series<F>& pressure, int N, Truncation t) : det(t), p(retruncate(pressure, t)) {
    std::vector<Series<F>> first;
    for (Species i = 1; i <= N; ++i) {
      first.push_back(partial_derivative(p, i));
      reciprocals.push_back(reciprocal(first.back()));
    }
    SeriesMatrix<F> m(N, t);
    for (Species i = 1; i <= N; ++i) {
      const auto& di = first[static_cast<std::size_t>(i - 1)];
      const auto& ri = reciprocals[static_cast<std::size_t>(i - 1)];
      for (Species j = 1; j <= N; ++j) {
        Series<F> e = variable_mul(partial_derivative(di, j), i) * ri;
        if (i == j) e = e + Series<F>::constant(F(1), t);
        m.set(i - 1, j - 1, std::move(e));
      }
    }
    det = determinant(m);
  }

  // [z^n] phi * prod_i (1/dp_i)^{e_i} * det M
  F extract(const Series<F>& phi, const MultiIndex& e, const MultiIndex& n) const {
    Series<F> acc = phi * det;
    for (const auto& [i, k] : e.entries()) {
      for (int r = 0; r < k; ++r) acc = acc * reciprocals[static_cast<std::size_t>(i - 1)];
    }
    return acc.coefficient(n);
  }
};

}  // namespace

template <class F>
PressureSeries<F> make_pressure(Series<F> s, std::string provenance) {
  if (!FieldTraits<F>::is_zero(s.constant_term())) throw UsageError("a pressure series has zero constant term");
  return {std::move(s), std::move(provenance)};
}

template <class F>
PressureSeries<F> pressure_from_weights(const WeightSource<F>& source, Truncation t) {
  return {graph_sum_series(source, t, 1, GraphClass::connected), source.describe()};
}

template <class F>
PressureSeries<F> pressure_from_weights_serial(const WeightSource<F>& source, Truncation t) {
  validate(t);
  Series<F> out(t);
  for (int m = 1; m <= t.degree; ++m) {
    for (const MultiIndex& n : indices_of_degree(m, t.species)) {
      const std::vector<Species> colours = canonical_colouring(n);
      F sum(0);
      for (const Graph& g : enumerate_graphs(m, GraphClass::connected)) sum += source.weight(ColouredGraph(g, colours));
      out.accumulate(n, divide_by_factorial(sum, n));
    }
  }
  return {std::move(out), source.describe()};
}

template <class F>
SeriesFamily<F> densities(const PressureSeries<F>& p) {
  SeriesFamily<F> rho;
  const Truncation& t = p.series.truncation();
  for (Species i = 1; i <= t.species; ++i) rho.emplace(i, variable_mul(partial_derivative(p.series, i), i));
  return rho;
}

template <class F>
VirialSeries<F> invert_recursive(const PressureSeries<F>& p) {
  const Truncation t = p.series.truncation();
  require_linear_terms(p, t.species);
  const SeriesFamily<F> rho = densities(p);
  PowerCache<F> powers(rho, t);
  Series<F> acc(t);
  Series<F> c(t);
  for (const MultiIndex& k : indices_up_to(t.degree, t.species)) {
    if (k.degree() == 0) continue;
    F lead(1);
    for (const auto& [i, e] : k.entries()) {
      const F b = p.series.coefficient(MultiIndex::unit(i));
      for (int r = 0; r < e; ++r) lead *= b;
    }
    const F ck = (p.series.coefficient(k) - acc.coefficient(k)) / lead;
    if (FieldTraits<F>::is_zero(ck)) continue;
    c.accumulate(k, ck);
    acc = acc + powers.monomial(k).scaled(ck);
  }
  return {std::move(c), InversionMethod::recursive};
}

template <class F>
F invert_lagrange_good(const PressureSeries<F>& p, const MultiIndex& n) {
  const Truncation& t = p.series.truncation();
  if (!t.admits(n)) throw UsageError("invert_lagrange_good: multi-index " + n.compact() + " is not admissible");
  if (n.degree() == 0) return F(0);
  const int N = n.max_species();
  require_linear_terms(p, N);
  const LagrangeGoodContext<F> ctx(p.series, N, Truncation{n.degree(), N});
  return ctx.extract(ctx.p, n, n);
}

template <class F>
F inverse_coefficient_lagrange_good(const PressureSeries<F>& p, const MultiIndex& n, const MultiIndex& k) {
  const Truncation& t = p.series.truncation();
  // [z^n] of (dp)^{-(n+k)} needs dp through degree |n|, so p through |n| + 1.
  if (n.degree() + 1 > t.degree || n.max_species() > t.species || k.max_species() > t.species) {
    throw UsageError("inverse_coefficient_lagrange_good: indices outside the truncation");
  }
  const int N = std::max(n.max_species(), k.max_species());
  if (N == 0) return F(1);
  require_linear_terms(p, N);
  const Truncation local{n.degree() + 1, N};
  const LagrangeGoodContext<F> ctx(p.series, N, local);
  return ctx.extract(Series<F>::constant(F(1), local), n + k, n);
}

template <class F>
VirialSeries<F> virial_lagrange_good(const PressureSeries<F>& p) {
  const Truncation t = p.series.truncation();
  require_linear_terms(p, t.species);
  std::vector<MultiIndex> targets;
  for (const MultiIndex& n : indices_up_to(t.degree, t.species)) {
    if (n.degree() > 0) targets.push_back(n);
  }
  std::vector<std::unique_ptr<LagrangeGoodContext<F>>> contexts(static_cast<std::size_t>(t.species) + 1);
  for (Species N = 1; N <= t.species; ++N) {
    contexts[static_cast<std::size_t>(N)] =
        std::make_unique<LagrangeGoodContext<F>>(p.series, N, Truncation{t.degree, N});
  }
  std::vector<F> values(targets.size(), F(0));
  ErrorSlot errors;
  const auto count = static_cast<std::int64_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    errors.run([&] {
      const MultiIndex& n = targets[static_cast<std::size_t>(i)];
      const auto& ctx = *contexts[static_cast<std::size_t>(n.max_species())];
      values[static_cast<std::size_t>(i)] = ctx.extract(ctx.p, n, n);
    });
  }
  errors.rethrow();
  Series<F> c(t);
  for (std::size_t i = 0; i < targets.size(); ++i) c.accumulate(targets[i], values[i]);
  return {std::move(c), InversionMethod::lagrange_good};
}

template <class F>
VirialSeries<F> virial_lagrange_good_serial(const PressureSeries<F>& p) {
  const Truncation t = p.series.truncation();
  Series<F> c(t);
  for (const MultiIndex& n : indices_up_to(t.degree, t.species)) {
    if (n.degree() > 0) c.accumulate(n, invert_lagrange_good(p, n));
  }
  return {std::move(c), InversionMethod::lagrange_good};
}

template <class F>
TwoConnectedGF<F> two_connected_gf(const WeightSource<F>& source, Truncation t) {
  if (!source.block_factorizing()) {
    throw UsageError("the two-connected formula needs a block-factorizing weight source");
  }
  return {graph_sum_series(source, t, 2, GraphClass::two_connected)};
}

template <class F>
VirialSeries<F> virial_from_two_connected(const WeightSource<F>& source, Truncation t) {
  const TwoConnectedGF<F> b = two_connected_gf(source, t);
  Series<F> c(t);
  for (Species k = 1; k <= t.species && t.degree >= 1; ++k) c.accumulate(MultiIndex::unit(k), F(1));
  for (const auto& [n, v] : b.series.terms()) c.accumulate(n, -v * FieldTraits<F>::from_int(n.degree() - 1));
  return {std::move(c), InversionMethod::two_connected};
}

template <class F>
Series<F> chemical_potential(const WeightSource<F>& source, Truncation t, Species k) {
  if (k < 1 || k > t.species) throw UsageError("chemical_potential: species outside the truncation");
  // B one degree higher so the derivative is exact through t.degree.
  const Series<F> d = partial_derivative(two_connected_gf(source, Truncation{t.degree + 1, t.species}).series, k);
  Series<F> out(t);
  for (const auto& [n, c] : d.terms()) {
    if (n.degree() <= t.degree) out.accumulate(n, -c);
  }
  return out;
}

template <class F>
bool GhostReport<F>::holds() const {
  for (const auto& [k, ok] : equal) {
    if (!ok) return false;
  }
  return true;
}

template <class F>
GhostReport<F> verify_ghost_relation(const WeightSource<F>& source, Truncation t) {
  const PressureSeries<F> p = pressure_from_weights(source, t);
  const SeriesFamily<F> rho = densities(p);
  const Series<F> B = two_connected_gf(source, t).series;
  GhostReport<F> report;
  for (Species k = 1; k <= t.species; ++k) {
    const Series<F> inner = substitute(partial_derivative(B, k), rho);
    const Series<F> rhs = variable_mul(exp_series(inner), k);
    const Series<F> diff = rho.at(k) - rhs;
    double scale = 1.0;
    double residual = 0.0;
    for (const auto& [n, c] : rho.at(k).terms()) scale = std::max(scale, std::fabs(to_double(c)));
    for (const auto& [n, c] : diff.terms()) residual = std::max(residual, std::fabs(to_double(c)));
    report.max_residual = std::max(report.max_residual, residual);
    if constexpr (FieldTraits<F>::exact) {
      report.equal[k] = diff.is_zero();
    } else {
      report.equal[k] = residual <= 1e-9 * scale;
    }
  }
  return report;
}

PropagatedSeries propagate_std_error(McWeights& source,
                                     const std::function<Series<double>(const WeightSource<double>&)>& pipeline) {
  source.clear_perturbation();
  PropagatedSeries out{pipeline(source), {}};
  for (const auto& [n, c] : out.value.terms()) out.std_error[n] = 0.0;
  for (const auto& [key, est] : source.estimates()) {
    if (est.std_error == 0.0) continue;
    const double h = std::max(est.std_error, 1e-6 * std::max(1.0, std::fabs(est.estimate)));
    source.set_perturbation(key, h);
    const Series<double> plus = pipeline(source);
    source.set_perturbation(key, -h);
    const Series<double> minus = pipeline(source);
    source.clear_perturbation();
    const Series<double> slope = (plus - minus).scaled(1.0 / (2.0 * h));
    for (const auto& [n, d] : slope.terms()) {
      const double contrib = d * est.std_error;
      out.std_error[n] += contrib * contrib;
    }
  }
  for (auto& [n, v] : out.std_error) v = std::sqrt(v);
  return out;
}

#define VIRIALKIT_VIRIAL_INSTANTIATE(F)                                                                   \
  template PressureSeries<F> make_pressure(Series<F>, std::string);                                      \
  template PressureSeries<F> pressure_from_weights(const WeightSource<F>&, Truncation);                   \
  template PressureSeries<F> pressure_from_weights_serial(const WeightSource<F>&, Truncation);            \
  template SeriesFamily<F> densities(const PressureSeries<F>&);                                           \
  template VirialSeries<F> invert_recursive(const PressureSeries<F>&);                                    \
  template F invert_lagrange_good(const PressureSeries<F>&, const MultiIndex&);                           \
  template F inverse_coefficient_lagrange_good(const PressureSeries<F>&, const MultiIndex&, const MultiIndex&); \
  template VirialSeries<F> virial_lagrange_good(const PressureSeries<F>&);                                \
  template VirialSeries<F> virial_lagrange_good_serial(const PressureSeries<F>&);                         \
  template VirialSeries<F> virial_from_two_connected(const WeightSource<F>&, Truncation);                 \
  template TwoConnectedGF<F> two_connected_gf(const WeightSource<F>&, Truncation);                        \
  template Series<F> chemical_potential(const WeightSource<F>&, Truncation, Species);                     \
  template struct GhostReport<F>;                                                                         \
  template GhostReport<F> verify_ghost_relation(const WeightSource<F>&, Truncation);

VIRIALKIT_VIRIAL_INSTANTIATE(Rational)
VIRIALKIT_VIRIAL_INSTANTIATE(double)

}  // namespace virialkit
