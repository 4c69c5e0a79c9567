#include "virialkit/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "virialkit/errors.hpp"

namespace virialkit {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double log_abs_one_plus_zeta(const PairPotential& u, const Molecule& a, const Molecule& b) {
  const double e = u.energy(a, b);
  return e == kInfiniteEnergy ? -kInfiniteEnergy : -e;
}

bool exceeds(double excess, double scale) { return excess > 1e-12 * std::max(1.0, std::fabs(scale)); }

Molecule random_molecule(const PairPotential& u, std::mt19937_64& rng, Species k, const Vec3& centre, double side) {
  Molecule m;
  m.species = k;
  const double L = u.box_length();
  for (int c = 0; c < u.dimension(); ++c) {
    double x = std::fmod(centre[static_cast<std::size_t>(c)] + side * (unit(rng) - 0.5) + L, L);
    if (x >= L || x < 0.0) x = 0.0;
    m.position[static_cast<std::size_t>(c)] = x;
  }
  const double u1 = unit(rng);
  const double u2 = unit(rng);
  m.orientation = orientation_from_unit(u.dimension(), u1, u2);
  return m;
}

}  // namespace

StabilityReport stability_check(const PairPotential& u, double b, const McParams& trials, int max_n,
                                std::vector<Species> species) {
  validate(trials);
  if (max_n < 2 || max_n > 8) throw UsageError("stability_check: max_n must lie in 2..8");
  if (!(b >= 0.0)) throw UsageError("stability constant b must be nonnegative");
  if (species.empty()) species = u.species();
  if (species.empty()) species = {1};

  std::mt19937_64 rng(mix_seed(trials.seed));
  StabilityReport r;
  const double L = u.box_length();
  const std::array<double, 3> scales{L, L / 8.0, L / 64.0};
  std::vector<Molecule> mols;
  for (std::uint64_t t = 0; t < trials.sample_count; ++t) {
    const int n = 2 + static_cast<int>(t % static_cast<std::uint64_t>(max_n - 1));
    const double side = scales[(t / static_cast<std::uint64_t>(max_n - 1)) % scales.size()];
    Vec3 centre{unit(rng) * L, unit(rng) * L, unit(rng) * L};
    mols.clear();
    double rhs = 0.0;
    for (int i = 0; i < n; ++i) {
      const Species k = species[static_cast<std::size_t>(rng() % species.size())];
      mols.push_back(random_molecule(u, rng, k, centre, side));
      rhs += b * static_cast<double>(k);
    }
    double lhs = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const auto& x = mols[static_cast<std::size_t>(i)];
        const auto& y = mols[static_cast<std::size_t>(j)];
        const double l = log_abs_one_plus_zeta(u, x, y);
        lhs += l;
        const double pair_rhs = b * static_cast<double>(std::min(x.species, y.species));
        const double pex = l - pair_rhs;
        ++r.pairs;
        r.worst_pair_excess = std::max(r.worst_pair_excess, pex);
        if (exceeds(pex, pair_rhs)) ++r.pair_violations;
      }
    }
    const double ex = lhs - rhs;
    ++r.configurations;
    r.worst_many_body_excess = std::max(r.worst_many_body_excess, ex);
    if (exceeds(ex, rhs)) ++r.many_body_violations;
  }
  return r;
}

double KpSpec::radius(Species k) const {
  auto it = radii.find(k);
  if (it == radii.end()) throw UsageError("KP spec has no radius for species " + std::to_string(k));
  return it->second;
}

KpSpec KpSpec::geometric(double prefactor, double decay, int species_cap, double a, double b) {
  KpSpec s;
  s.a = a;
  s.b = b;
  for (Species k = 1; k <= species_cap; ++k) s.radii[k] = prefactor * std::exp(-decay * static_cast<double>(k));
  validate(s);
  return s;
}

void validate(const KpSpec& s) {
  if (!(s.a > 0.0)) throw UsageError("KP constant a must be positive");
  if (!(s.b >= 0.0)) throw UsageError("KP constant b must be nonnegative");
  for (const auto& [k, r] : s.radii) {
    if (k < 1) throw UsageError("species indices start at 1");
    if (!(r > 0.0)) throw UsageError("KP radii must be positive");
  }
}

bool KpReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const KpRow& r) { return r.passed; });
}

double abs_zeta_integral_mc(const PairPotential& u, Species k, Species l, const McParams& p) {
  if (auto exact = u.abs_zeta_integral(k, l)) return *exact;
  validate(p);
  std::mt19937_64 rng(mix_seed(p.seed ^ mix_seed(static_cast<std::uint64_t>(k) * 1000003ULL + static_cast<std::uint64_t>(l))));
  Molecule x;
  x.species = k;
  const double L = u.box_length();
  const Vec3 centre{0.0, 0.0, 0.0};
  double sum = 0.0;
  for (std::uint64_t i = 0; i < p.sample_count; ++i) {
    const Molecule y = random_molecule(u, rng, l, centre, L);
    sum += std::fabs(zeta(u, x, y));
  }
  return u.volume() * sum / static_cast<double>(p.sample_count);
}

KpReport kp_check(const PairPotential& u, const KpSpec& spec, int species_cap, const McParams& quadrature) {
  validate(spec);
  if (species_cap < 1) throw UsageError("kp_check: species cap must be >= 1");
  KpReport r;
  std::vector<double> weight(static_cast<std::size_t>(species_cap) + 1, 0.0);
  for (Species kp = 1; kp <= species_cap; ++kp) {
    weight[static_cast<std::size_t>(kp)] = spec.radius(kp) * std::exp((spec.a + 3.0 * spec.b) * kp);
    r.summability_partial_sum += weight[static_cast<std::size_t>(kp)];
  }
  bool analytic = true;
  for (Species k = 1; k <= species_cap; ++k) {
    KpRow row;
    row.k = k;
    for (Species kp = 1; kp <= species_cap; ++kp) {
      analytic = analytic && u.abs_zeta_integral(k, kp).has_value();
      const double w = weight[static_cast<std::size_t>(kp)];
      const double integral = abs_zeta_integral_mc(u, k, kp, quadrature);
      if (integral != 0.0) row.lhs += w * integral;
    }
    row.rhs = spec.a * static_cast<double>(k);
    row.passed = row.lhs <= row.rhs;
    r.rows.push_back(row);
  }
  r.integral_method = analytic ? "analytic (R^d)" : "monte-carlo (box)";
  return r;
}

}  // namespace virialkit
