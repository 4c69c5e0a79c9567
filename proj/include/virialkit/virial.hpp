#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "virialkit/series.hpp"
#include "virialkit/weight_source.hpp"

namespace virialkit {

enum class InversionMethod { recursive, lagrange_good, two_connected };

InversionMethod parse_inversion_method(std::string_view name);
const char* to_string(InversionMethod m);

// p(z) with zero constant term.
template <class F>
struct PressureSeries {
  Series<F> series;
  std::string provenance;
};

// Throws UsageError on a nonzero constant term.
template <class F>
PressureSeries<F> make_pressure(Series<F> s, std::string provenance = "explicit series");

// p(rho) in density variables.
template <class F>
struct VirialSeries {
  Series<F> series;
  InversionMethod method = InversionMethod::recursive;
};

// B(rho), terms of degree >= 2 only.
template <class F>
struct TwoConnectedGF {
  Series<F> series;
};

// b(n) = (1/n!) sum over connected graphs on |n| vertices of w(g, canonical colouring).
template <class F>
PressureSeries<F> pressure_from_weights(const WeightSource<F>& source, Truncation t);
// Enumerates graphs afresh and evaluates every weight from scratch, one thread.
template <class F>
PressureSeries<F> pressure_from_weights_serial(const WeightSource<F>& source, Truncation t);

// rho_i = z_i dp/dz_i for i = 1..S.
template <class F>
SeriesFamily<F> densities(const PressureSeries<F>& p);

// Solves b(k) = sum_{n <= k} c(n) [z^k] rho^n in graded order.
// DomainError when some b(e_i) = 0, i <= S.
template <class F>
VirialSeries<F> invert_recursive(const PressureSeries<F>& p);

// c(n) = [z^n] p (dp/dz)^{-n} det M(z), M over species 1..N, N = max species of n.
template <class F>
F invert_lagrange_good(const PressureSeries<F>& p, const MultiIndex& n);
// [rho^n] z^k / rho^k = [z^n] (dp/dz)^{-(n+k)} det M(z). Needs |n| < D.
template <class F>
F inverse_coefficient_lagrange_good(const PressureSeries<F>& p, const MultiIndex& n, const MultiIndex& k);

// All admissible c(n), coefficients computed in parallel.
template <class F>
VirialSeries<F> virial_lagrange_good(const PressureSeries<F>& p);
template <class F>
VirialSeries<F> virial_lagrange_good_serial(const PressureSeries<F>& p);

// c(e_k) = 1 and c(n) = -(|n|-1)/n! sum over two-connected graphs of w.
// UsageError unless the source is block-factorizing.
template <class F>
VirialSeries<F> virial_from_two_connected(const WeightSource<F>& source, Truncation t);

template <class F>
TwoConnectedGF<F> two_connected_gf(const WeightSource<F>& source, Truncation t);

// -dB/drho_k, i.e. log z_k - log rho_k as a series in rho, exact through t.degree.
template <class F>
Series<F> chemical_potential(const WeightSource<F>& source, Truncation t, Species k);

template <class F>
struct GhostReport {
  std::map<Species, bool> equal;
  double max_residual = 0.0;
  bool holds() const;
};

// Compares rho_k(z) with z_k exp(dB/drho_k (rho(z))) for every k <= S.
template <class F>
GhostReport<F> verify_ghost_relation(const WeightSource<F>& source, Truncation t);

// First-order propagation of Monte Carlo standard errors through a float
// pipeline: each block estimate is perturbed by a central difference and the
// per-coefficient sensitivities are combined in quadrature.
struct PropagatedSeries {
  Series<double> value;
  std::map<MultiIndex, double> std_error;
};

PropagatedSeries propagate_std_error(McWeights& source,
                                     const std::function<Series<double>(const WeightSource<double>&)>& pipeline);

#define VIRIALKIT_VIRIAL_EXTERN(F)                                                                    \
  extern template PressureSeries<F> make_pressure(Series<F>, std::string);                            \
  extern template PressureSeries<F> pressure_from_weights(const WeightSource<F>&, Truncation);        \
  extern template PressureSeries<F> pressure_from_weights_serial(const WeightSource<F>&, Truncation); \
  extern template SeriesFamily<F> densities(const PressureSeries<F>&);                                \
  extern template VirialSeries<F> invert_recursive(const PressureSeries<F>&);                         \
  extern template F invert_lagrange_good(const PressureSeries<F>&, const MultiIndex&);                \
  extern template F inverse_coefficient_lagrange_good(const PressureSeries<F>&, const MultiIndex&,    \
                                                      const MultiIndex&);                             \
  extern template VirialSeries<F> virial_lagrange_good(const PressureSeries<F>&);                     \
  extern template VirialSeries<F> virial_lagrange_good_serial(const PressureSeries<F>&);              \
  extern template VirialSeries<F> virial_from_two_connected(const WeightSource<F>&, Truncation);      \
  extern template TwoConnectedGF<F> two_connected_gf(const WeightSource<F>&, Truncation);             \
  extern template Series<F> chemical_potential(const WeightSource<F>&, Truncation, Species);          \
  extern template struct GhostReport<F>;                                                              \
  extern template GhostReport<F> verify_ghost_relation(const WeightSource<F>&, Truncation);

VIRIALKIT_VIRIAL_EXTERN(Rational)
VIRIALKIT_VIRIAL_EXTERN(double)

#undef VIRIALKIT_VIRIAL_EXTERN

}  // namespace virialkit
