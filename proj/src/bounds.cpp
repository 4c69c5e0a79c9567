#include "virialkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "virialkit/errors.hpp"
#include "virialkit/monte_carlo.hpp"

namespace virialkit {

const SpeciesDomain& DomainSpec::at(Species i) const {
  auto it = species.find(i);
  if (it == species.end()) throw UsageError("domain spec has no entry for species " + std::to_string(i));
  return it->second;
}

void validate(const DomainSpec& spec) {
  for (const auto& [i, d] : spec.species) {
    if (i < 1) throw UsageError("species indices start at 1");
    if (!(d.r > 0.0 && d.r < d.R) || !std::isfinite(d.R)) {
      throw UsageError("species " + std::to_string(i) + ": need 0 < r < R");
    }
    if (!(d.a >= 0.0) || !std::isfinite(d.a)) throw UsageError("species " + std::to_string(i) + ": need a >= 0");
  }
}

double det_bound_constant(const DomainSpec& spec) {
  validate(spec);
  double outer = 0.0;
  double inner = 0.0;
  for (const auto& [i, d] : spec.species) {
    const double u = std::sqrt(d.r / d.R);
    outer += d.r / (u * (d.R - d.r));
    inner += u * u * d.a * d.a;
  }
  return std::exp(outer * std::sqrt(inner));
}

namespace {

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class sn;
  mpz_class sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Rational out(sn, sd);
  out.canonicalize();
  return out;
}

}  // namespace

std::optional<Rational> det_bound_exponent_exact(const DomainSpec& spec) {
  validate(spec);
  Rational outer(0);
  Rational inner(0);
  for (const auto& [i, d] : spec.species) {
    const Rational r = rational_from_double(d.r);
    const Rational R = rational_from_double(d.R);
    const Rational a = rational_from_double(d.a);
    // r / (u (R - r)) with u = sqrt(r/R) equals sqrt(r R) / (R - r).
    auto root = exact_sqrt(r * R);
    if (!root) return std::nullopt;
    outer += *root / (R - r);
    inner += r / R * a * a;
  }
  auto root = exact_sqrt(inner);
  if (!root) return std::nullopt;
  Rational out = outer * *root;
  out.canonicalize();
  return out;
}

double virial_bound(const DomainSpec& spec, double sup_p, const MultiIndex& n) {
  if (!(sup_p >= 0.0)) throw UsageError("sup_p must be nonnegative");
  double out = det_bound_constant(spec) * sup_p;
  for (const auto& [i, e] : n.entries()) {
    const SpeciesDomain& d = spec.at(i);
    out *= std::pow(std::exp(d.a) / d.r, e);
  }
  return out;
}

double inverse_bound(const DomainSpec& spec, const MultiIndex& n, const MultiIndex& k) {
  double out = det_bound_constant(spec);
  for (const auto& [i, e] : n.entries()) out *= std::exp(spec.at(i).a * e) / std::pow(spec.at(i).r, e);
  for (const auto& [i, e] : k.entries()) out *= std::exp(spec.at(i).a * e);
  return out;
}

bool DensityDomain::contains(const std::map<Species, double>& rho) const {
  for (const auto& [i, v] : rho) {
    auto it = radii.find(i);
    if (it == radii.end()) {
      if (v != 0.0) return false;
      continue;
    }
    if (!(std::fabs(v) < it->second)) return false;
  }
  return std::isfinite(weighted_sum(rho));
}

double DensityDomain::weighted_sum(const std::map<Species, double>& rho) const {
  double s = 0.0;
  for (const auto& [i, v] : rho) {
    if (v == 0.0) continue;
    auto it = scale.find(i);
    if (it == scale.end()) return std::numeric_limits<double>::infinity();
    s += std::fabs(v) * it->second;
  }
  return s;
}

DensityDomain density_domain(const DomainSpec& spec) {
  validate(spec);
  DensityDomain d;
  for (const auto& [i, s] : spec.species) {
    d.radii[i] = s.r * std::exp(-s.a);
    d.scale[i] = std::exp(s.a) / s.r;
  }
  return d;
}

double z_of_rho_bound(const DomainSpec& spec, const std::map<Species, double>& rho, Species i) {
  validate(spec);
  for (const auto& [j, v] : rho) {
    if (v != 0.0 && !spec.species.contains(j)) throw UsageError("rho has species " + std::to_string(j) + " outside the spec");
  }
  double out = det_bound_constant(spec);
  auto it = rho.find(i);
  const double rho_i = it == rho.end() ? 0.0 : std::fabs(it->second);
  out *= rho_i * std::exp(spec.at(i).a);
  for (const auto& [j, d] : spec.species) {
    auto jt = rho.find(j);
    const double rj = jt == rho.end() ? 0.0 : std::fabs(jt->second);
    const double factor = 1.0 - std::exp(d.a) * rj / d.r;
    if (!(factor > 0.0)) throw DomainError("rho lies on or outside the boundary of D'");
    out /= factor;
  }
  return out;
}

std::complex<double> evaluate(const Series<double>& s, const std::vector<std::complex<double>>& z) {
  std::complex<double> total{0.0, 0.0};
  for (const auto& [n, c] : s.terms()) {
    std::complex<double> term{c, 0.0};
    for (const auto& [i, e] : n.entries()) {
      if (i < 1 || static_cast<std::size_t>(i) > z.size()) throw UsageError("evaluate: point has too few coordinates");
      term *= std::pow(z[static_cast<std::size_t>(i - 1)], e);
    }
    total += term;
  }
  return total;
}

bool HypothesisReport::passed() const {
  return std::all_of(log_derivatives.begin(), log_derivatives.end(),
                     [](const LogDerivativeCheck& c) { return c.passed; }) &&
         std::isfinite(abs_coefficient_sum) && std::isfinite(sqrt_ratio_sum) && std::isfinite(weighted_a_sum);
}

namespace {

struct SampleMax {
  std::vector<double> max_abs_log;
  std::vector<char> zero;
};

// Point number `index` of the deterministic sampling plan.
std::vector<std::complex<double>> sample_point(const DomainSpec& spec, int S, std::uint64_t index,
                                               std::uint64_t seed) {
  std::vector<std::complex<double>> z(static_cast<std::size_t>(S));
  std::mt19937_64 rng(mix_seed(seed ^ mix_seed(index)));
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const int mode = static_cast<int>(index % 3);
  for (int i = 1; i <= S; ++i) {
    const SpeciesDomain& d = spec.at(i);
    double radius = d.R;
    if (mode == 1) radius = d.R * std::sqrt(unit());
    if (mode == 2) radius = d.r;
    const double phase = 2.0 * std::numbers::pi * unit();
    z[static_cast<std::size_t>(i - 1)] = std::polar(radius, phase);
  }
  return z;
}

void record(const std::vector<Series<double>>& derivs, const std::vector<std::complex<double>>& z, SampleMax& m) {
  for (std::size_t i = 0; i < derivs.size(); ++i) {
    const std::complex<double> v = evaluate(derivs[i], z);
    if (std::abs(v) < 1e-300) {
      m.zero[i] = 1;
      continue;
    }
    m.max_abs_log[i] = std::max(m.max_abs_log[i], std::abs(std::log(v)));
  }
}

SampleMax sample_log_derivatives(const Series<double>& p, const DomainSpec& spec, std::uint64_t samples,
                                 std::uint64_t seed, std::uint64_t& points) {
  const int S = p.truncation().species;
  std::vector<Series<double>> derivs;
  for (Species i = 1; i <= S; ++i) derivs.push_back(partial_derivative(p, i));
  SampleMax total{std::vector<double>(static_cast<std::size_t>(S), 0.0), std::vector<char>(static_cast<std::size_t>(S), 0)};

  // Real-axis corners of the closed polydisk: all-positive, all-negative and single flips.
  std::vector<std::vector<std::complex<double>>> fixed;
  for (int sign : {1, -1}) {
    std::vector<std::complex<double>> z;
    for (Species i = 1; i <= S; ++i) z.emplace_back(sign * spec.at(i).R, 0.0);
    fixed.push_back(z);
    for (Species j = 1; j <= S; ++j) {
      auto flipped = z;
      flipped[static_cast<std::size_t>(j - 1)] *= -1.0;
      fixed.push_back(flipped);
    }
  }
  for (const auto& z : fixed) record(derivs, z, total);

  const auto count = static_cast<std::int64_t>(samples);
  std::vector<SampleMax> partial;
  constexpr std::int64_t kChunk = 256;
  const std::int64_t chunks = (count + kChunk - 1) / kChunk;
  partial.assign(static_cast<std::size_t>(chunks), total);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    SampleMax& m = partial[static_cast<std::size_t>(c)];
    for (std::int64_t s = c * kChunk; s < std::min(count, (c + 1) * kChunk); ++s) {
      record(derivs, sample_point(spec, S, static_cast<std::uint64_t>(s), seed), m);
    }
  }
  for (const SampleMax& m : partial) {
    for (std::size_t i = 0; i < total.max_abs_log.size(); ++i) {
      total.max_abs_log[i] = std::max(total.max_abs_log[i], m.max_abs_log[i]);
      total.zero[i] = static_cast<char>(total.zero[i] || m.zero[i]);
    }
  }
  points = samples + fixed.size();

  // Argument principle on one-variable slices: a zero of dp/dz_i inside
  // |z_i| < R_i shows up as a nonzero winding of the image of that circle.
  const std::uint64_t slices = std::min<std::uint64_t>(samples, 64) + 1;
  const int steps = std::max(256, 64 * p.truncation().degree);
  for (std::uint64_t s = 0; s < slices; ++s) {
    std::vector<std::complex<double>> z(static_cast<std::size_t>(S), 0.0);
    if (s > 0) z = sample_point(spec, S, s - 1, mix_seed(seed + 7));
    for (Species i = 1; i <= S; ++i) {
      const auto idx = static_cast<std::size_t>(i - 1);
      if (total.zero[idx] != 0) continue;
      double turn = 0.0;
      auto at = [&](int k) {
        z[idx] = std::polar(spec.at(i).R, 2.0 * std::numbers::pi * k / steps);
        return evaluate(derivs[idx], z);
      };
      std::complex<double> prev = at(0);
      for (int k = 1; k <= steps; ++k) {
        const std::complex<double> next = at(k);
        turn += std::arg(next / prev);
        prev = next;
      }
      if (std::fabs(turn) > std::numbers::pi) total.zero[idx] = 1;
    }
    points += static_cast<std::uint64_t>(steps) * static_cast<std::uint64_t>(S);
  }
  return total;
}

}  // namespace

HypothesisReport hypothesis_check(const Series<double>& p, const DomainSpec& spec, std::uint64_t samples,
                                  std::uint64_t seed) {
  validate(spec);
  const int S = p.truncation().species;
  for (Species i = 1; i <= S; ++i) spec.at(i);
  HypothesisReport r;
  for (const auto& [n, c] : p.terms()) {
    double term = std::fabs(c);
    for (const auto& [i, e] : n.entries()) term *= std::pow(spec.at(i).R, e);
    r.abs_coefficient_sum += term;
  }
  for (const auto& [i, d] : spec.species) {
    r.sqrt_ratio_sum += std::sqrt(d.r / d.R);
    r.weighted_a_sum += d.r * d.a * d.a / d.R;
  }
  const SampleMax m = sample_log_derivatives(p, spec, samples, seed, r.sample_points);
  for (Species i = 1; i <= S; ++i) {
    LogDerivativeCheck c;
    c.i = i;
    c.max_abs_log = m.max_abs_log[static_cast<std::size_t>(i - 1)];
    c.zero_found = m.zero[static_cast<std::size_t>(i - 1)] != 0;
    c.a = spec.at(i).a;
    c.passed = !c.zero_found && c.max_abs_log < c.a;
    r.log_derivatives.push_back(c);
  }
  return r;
}

std::size_t AuditReport::violations() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const AuditRow& r) { return !r.within; }));
}

AuditReport check_coefficient_bounds(const Series<double>& p, const DomainSpec& spec, const Series<double>& c) {
  validate(spec);
  AuditReport a;
  a.constant = det_bound_constant(spec);
  for (const auto& [n, b] : p.terms()) {
    double term = std::fabs(b);
    for (const auto& [i, e] : n.entries()) term *= std::pow(spec.at(i).R, e);
    a.sup_p += term;
  }
  for (const auto& [n, v] : c.terms()) {
    AuditRow row;
    row.n = n;
    row.c = v;
    row.bound = virial_bound(spec, a.sup_p, n);
    row.within = std::fabs(v) <= row.bound;
    a.rows.push_back(row);
  }
  return a;
}

std::optional<DomainSpec> find_admissible_spec(const Series<double>& p, std::uint64_t samples, std::uint64_t seed) {
  const int S = p.truncation().species;
  for (int j = 1; j <= 30; ++j) {
    const double R = std::ldexp(1.0, -j);
    DomainSpec probe;
    for (Species i = 1; i <= S; ++i) probe.species[i] = {R / 2.0, R, 0.0};
    std::uint64_t points = 0;
    const SampleMax m = sample_log_derivatives(p, probe, samples, seed, points);
    if (std::any_of(m.zero.begin(), m.zero.end(), [](char z) { return z != 0; })) continue;
    DomainSpec spec = probe;
    for (Species i = 1; i <= S; ++i) spec.species[i].a = 1.1 * m.max_abs_log[static_cast<std::size_t>(i - 1)] + 1e-3;
    if (hypothesis_check(p, spec, samples, mix_seed(seed + 1)).passed()) return spec;
  }
  return std::nullopt;
}

}  // namespace virialkit
