#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "virialkit/monte_carlo.hpp"
#include "virialkit/potential.hpp"

namespace virialkit {

// Sampling falsification of the stability bounds
//   prod_{i<j} |1 + zeta_ij| <= prod_i e^{b k_i}   and   |1 + zeta(X,Y)| <= e^{b min(k,l)}.
struct StabilityReport {
  std::uint64_t configurations = 0;
  std::uint64_t pairs = 0;
  std::uint64_t many_body_violations = 0;
  std::uint64_t pair_violations = 0;
  // Largest observed log-excess (lhs over rhs); negative when no violation.
  double worst_many_body_excess = -kInfiniteEnergy;
  double worst_pair_excess = -kInfiniteEnergy;
  bool passed() const { return many_body_violations == 0 && pair_violations == 0; }
};

// species: which species to draw from; empty means the model's own list, or {1}.
StabilityReport stability_check(const PairPotential& u, double b, const McParams& trials, int max_n,
                                std::vector<Species> species = {});

struct KpSpec {
  std::map<Species, double> radii;
  double a = 1.0;
  double b = 0.0;

  double radius(Species k) const;
  // R_k = prefactor * e^{-decay k}, k = 1..species_cap.
  static KpSpec geometric(double prefactor, double decay, int species_cap, double a, double b);
};

void validate(const KpSpec& s);

struct KpRow {
  Species k = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = false;
};

struct KpReport {
  std::vector<KpRow> rows;
  // sum_{k' <= S} R_{k'} e^{(a+3b)k'}
  double summability_partial_sum = 0.0;
  // "analytic (R^d)" or "monte-carlo (box)".
  std::string integral_method;
  bool passed() const;
};

// LHS(k) = sum_{k' <= S} R_{k'} e^{(a+3b)k'} int |zeta(X, X')| dX', RHS = a k.
KpReport kp_check(const PairPotential& u, const KpSpec& spec, int species_cap, const McParams& quadrature);

// int |zeta| against a partner of species l, over R^d when closed form is
// known, else Monte Carlo over the box.
double abs_zeta_integral_mc(const PairPotential& u, Species k, Species l, const McParams& p);

}  // namespace virialkit
