#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "virialkit/multi_index.hpp"
#include "virialkit/rational.hpp"
#include "virialkit/series.hpp"

namespace virialkit {

struct SpeciesDomain {
  double r = 0.0;
  double R = 0.0;
  double a = 0.0;
};

// Radii 0 < r_i < R_i and log-bounds a_i >= 0 per species.
struct DomainSpec {
  std::map<Species, SpeciesDomain> species;

  const SpeciesDomain& at(Species i) const;
};

void validate(const DomainSpec& spec);

// C = exp[ sum_i r_i / (u_i (R_i - r_i)) * sqrt(sum_j u_j^2 a_j^2) ], u_j = sqrt(r_j / R_j).
double det_bound_constant(const DomainSpec& spec);
// The exponent of C as an exact rational, when every square root in it is rational.
std::optional<Rational> det_bound_exponent_exact(const DomainSpec& spec);

// C * sup_p * prod_i (e^{a_i} / r_i)^{n_i}
double virial_bound(const DomainSpec& spec, double sup_p, const MultiIndex& n);
// C * prod_i e^{a_i (n_i + k_i)} / r_i^{n_i}
double inverse_bound(const DomainSpec& spec, const MultiIndex& n, const MultiIndex& k);

struct DensityDomain {
  std::map<Species, double> radii;  // r_i e^{-a_i}
  std::map<Species, double> scale;  // e^{a_i} / r_i

  bool contains(const std::map<Species, double>& rho) const;
  // sum_i |rho_i| e^{a_i} / r_i
  double weighted_sum(const std::map<Species, double>& rho) const;
};

DensityDomain density_domain(const DomainSpec& spec);

// C |rho_i| e^{a_i} prod_j (1 - e^{a_j} |rho_j| / r_j)^{-1}; DomainError unless rho lies strictly in D'.
double z_of_rho_bound(const DomainSpec& spec, const std::map<Species, double>& rho, Species i);

// Evaluates a float series at a complex point; z[i-1] is the value of z_i.
std::complex<double> evaluate(const Series<double>& s, const std::vector<std::complex<double>>& z);

struct LogDerivativeCheck {
  Species i = 1;
  double max_abs_log = 0.0;
  double a = 0.0;
  bool zero_found = false;
  bool passed = false;
};

struct HypothesisReport {
  // sum |b(n)| R^n over the stored terms: an upper bound for sup_D |p| at truncation order.
  double abs_coefficient_sum = 0.0;
  std::vector<LogDerivativeCheck> log_derivatives;
  double sqrt_ratio_sum = 0.0;  // sum_i sqrt(r_i / R_i)
  double weighted_a_sum = 0.0;  // sum_i r_i a_i^2 / R_i
  std::uint64_t sample_points = 0;
  bool passed() const;
};

// Samples the closed polydisk |z_i| <= R_i: its distinguished boundary, random
// interior points, the torus |z_i| = r_i and the real axis extremes. Zeros of
// dp/dz_i are detected by winding numbers of one-variable slices.
HypothesisReport hypothesis_check(const Series<double>& p, const DomainSpec& spec, std::uint64_t samples,
                                  std::uint64_t seed);

struct AuditRow {
  MultiIndex n;
  double c = 0.0;
  double bound = 0.0;
  bool within = false;
};

struct AuditReport {
  double constant = 1.0;
  double sup_p = 0.0;
  std::vector<AuditRow> rows;
  std::size_t violations() const;
};

// Compares every computed |c(n)| with virial_bound(n), sup_p = sum |b(n)| R^n.
AuditReport check_coefficient_bounds(const Series<double>& p, const DomainSpec& spec, const Series<double>& c);

// Largest common R = 2^{-j} (j = 1..30) with a_i = 1.1 * sampled max |log dp/dz_i| + 1e-3 and
// r_i = R / 2 for which hypothesis_check passes; nullopt if none does.
std::optional<DomainSpec> find_admissible_spec(const Series<double>& p, std::uint64_t samples, std::uint64_t seed);

}  // namespace virialkit
