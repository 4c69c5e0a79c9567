#pragma once

#include "virialkit/series.hpp"

namespace virialkit {

// Functions F_k(w), F_k(0) != 0, sharing one truncation. The unknown is the
// family G_k(u) with w_k(u) = u_k G_k(u) and w_k F_k(w) = u_k.
template <class F>
struct InversionProblem {
  SeriesFamily<F> functions;
  Truncation truncation;
};

// UsageError on mismatched truncations, DomainError when some F_k(0) = 0.
template <class F>
void validate(const InversionProblem<F>& problem);

// G_k for every k in the problem, by fixed-point iteration G <- 1/F(u G),
// which gains one order per step.
template <class F>
SeriesFamily<F> solve_inverse(const InversionProblem<F>& problem);

// w_k(u) = u_k G_k(u).
template <class F>
SeriesFamily<F> inverse_map(const InversionProblem<F>& problem);

// [u^n] G_k(u).
template <class F>
F invert_functional(const InversionProblem<F>& problem, Species k, const MultiIndex& n);

// Problem with F_k = dp/dz_k, whose solution gives z_k(rho) = rho_k G_k(rho).
template <class F>
InversionProblem<F> virial_inversion_problem(const Series<F>& p);

extern template void validate(const InversionProblem<Rational>&);
extern template void validate(const InversionProblem<double>&);
extern template SeriesFamily<Rational> solve_inverse(const InversionProblem<Rational>&);
extern template SeriesFamily<double> solve_inverse(const InversionProblem<double>&);
extern template SeriesFamily<Rational> inverse_map(const InversionProblem<Rational>&);
extern template SeriesFamily<double> inverse_map(const InversionProblem<double>&);
extern template Rational invert_functional(const InversionProblem<Rational>&, Species, const MultiIndex&);
extern template double invert_functional(const InversionProblem<double>&, Species, const MultiIndex&);
extern template InversionProblem<Rational> virial_inversion_problem(const Series<Rational>&);
extern template InversionProblem<double> virial_inversion_problem(const Series<double>&);

}  // namespace virialkit
