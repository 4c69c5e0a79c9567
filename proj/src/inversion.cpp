#include "virialkit/inversion.hpp"

#include <string>

#include "virialkit/errors.hpp"

namespace virialkit {

template <class F>
void validate(const InversionProblem<F>& problem) {
  validate(problem.truncation);
  if (problem.functions.empty()) throw UsageError("inversion problem has no functions");
  for (const auto& [k, f] : problem.functions) {
    if (k < 1 || k > problem.truncation.species) throw UsageError("inversion problem species outside the truncation");
    if (!(f.truncation() == problem.truncation)) throw UsageError("inversion problem truncations differ");
    if (FieldTraits<F>::is_zero(f.constant_term())) {
      throw DomainError("F_" + std::to_string(k) + "(0) = 0; the inverse does not exist");
    }
  }
}

template <class F>
SeriesFamily<F> solve_inverse(const InversionProblem<F>& problem) {
  validate(problem);
  const Truncation& t = problem.truncation;
  SeriesFamily<F> g;
  for (const auto& [k, f] : problem.functions) g.emplace(k, Series<F>::constant(F(1) / f.constant_term(), t));
  for (int step = 0; step <= t.degree; ++step) {
    SeriesFamily<F> w;
    for (const auto& [k, gk] : g) w.emplace(k, variable_mul(gk, k));
    SeriesFamily<F> next;
    for (const auto& [k, f] : problem.functions) next.emplace(k, reciprocal(substitute(f, w)));
    if (next == g) break;
    g = std::move(next);
  }
  return g;
}

template <class F>
SeriesFamily<F> inverse_map(const InversionProblem<F>& problem) {
  SeriesFamily<F> w;
  for (const auto& [k, gk] : solve_inverse(problem)) w.emplace(k, variable_mul(gk, k));
  return w;
}

template <class F>
F invert_functional(const InversionProblem<F>& problem, Species k, const MultiIndex& n) {
  if (!problem.functions.contains(k)) throw UsageError("invert_functional: no function for species " + std::to_string(k));
  return solve_inverse(problem).at(k).coefficient(n);
}

template <class F>
InversionProblem<F> virial_inversion_problem(const Series<F>& p) {
  InversionProblem<F> problem{{}, p.truncation()};
  for (Species k = 1; k <= p.truncation().species; ++k) problem.functions.emplace(k, partial_derivative(p, k));
  return problem;
}

template void validate(const InversionProblem<Rational>&);
template void validate(const InversionProblem<double>&);
template SeriesFamily<Rational> solve_inverse(const InversionProblem<Rational>&);
template SeriesFamily<double> solve_inverse(const InversionProblem<double>&);
template SeriesFamily<Rational> inverse_map(const InversionProblem<Rational>&);
template SeriesFamily<double> inverse_map(const InversionProblem<double>&);
template Rational invert_functional(const InversionProblem<Rational>&, Species, const MultiIndex&);
template double invert_functional(const InversionProblem<double>&, Species, const MultiIndex&);
template InversionProblem<Rational> virial_inversion_problem(const Series<Rational>&);
template InversionProblem<double> virial_inversion_problem(const Series<double>&);

}  // namespace virialkit
