#include "virialkit/potential.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "virialkit/errors.hpp"

namespace virialkit {

SpeciesTable::SpeciesTable(std::map<Species, double> values) : values_(std::move(values)) {
  for (const auto& [k, v] : values_) {
    if (k < 1) throw UsageError("species indices start at 1");
    if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("species sizes must be finite and nonnegative");
  }
}

SpeciesTable SpeciesTable::linear(double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw UsageError("linear size rule needs a finite scale >= 0");
  SpeciesTable t;
  t.rule_scale_ = scale;
  return t;
}

double SpeciesTable::at(Species k) const {
  if (k < 1) throw UsageError("species indices start at 1");
  if (rule_scale_) return *rule_scale_ * static_cast<double>(k);
  auto it = values_.find(k);
  if (it == values_.end()) throw UsageError("no size parameter for species " + std::to_string(k));
  return it->second;
}

std::vector<Species> SpeciesTable::listed() const {
  std::vector<Species> out;
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

PairPotential::PairPotential(int dimension, double box_length) : dimension_(dimension), box_length_(box_length) {
  if (dimension < 1 || dimension > 3) throw UsageError("dimension must be 1, 2 or 3");
  if (!(box_length > 0.0) || !std::isfinite(box_length)) throw UsageError("box length must be positive");
}

double PairPotential::volume() const { return std::pow(box_length_, dimension_); }

std::optional<double> PairPotential::abs_zeta_integral(Species, Species) const { return std::nullopt; }

Vec3 PairPotential::separation(const Molecule& a, const Molecule& b) const {
  Vec3 d{0.0, 0.0, 0.0};
  for (int i = 0; i < dimension_; ++i) {
    double x = b.position[static_cast<std::size_t>(i)] - a.position[static_cast<std::size_t>(i)];
    x -= box_length_ * std::round(x / box_length_);
    d[static_cast<std::size_t>(i)] = x;
  }
  return d;
}

double PairPotential::distance(const Molecule& a, const Molecule& b) const {
  const Vec3 d = separation(a, b);
  return std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
}

void PairPotential::validate(const Molecule& m) const {
  if (m.species < 1) throw UsageError("molecule species must be >= 1");
  double norm2 = 0.0;
  for (int i = 0; i < dimension_; ++i) {
    const double x = m.position[static_cast<std::size_t>(i)];
    if (!(x >= 0.0 && x < box_length_)) throw UsageError("molecule position outside [0, L)");
    norm2 += m.orientation[static_cast<std::size_t>(i)] * m.orientation[static_cast<std::size_t>(i)];
  }
  if (dimension_ > 1 && std::fabs(std::sqrt(norm2) - 1.0) > 1e-12) {
    throw UsageError("molecule orientation must be a unit vector");
  }
}

double zeta(const PairPotential& u, const Molecule& x1, const Molecule& x2) {
  const double e = u.energy(x1, x2);
  if (e == kInfiniteEnergy) return -1.0;
  return std::expm1(-e);
}

double ball_volume(int dimension, double radius) {
  switch (dimension) {
    case 1: return 2.0 * radius;
    case 2: return std::numbers::pi * radius * radius;
    case 3: return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
    default: throw UsageError("ball_volume: dimension must be 1, 2 or 3");
  }
}

namespace {

double contact(const SpeciesTable& sigma, Species k, Species l) { return 0.5 * (sigma.at(k) + sigma.at(l)); }

}  // namespace

HardRods1D::HardRods1D(SpeciesTable sigma, double box_length)
    : PairPotential(1, box_length), sigma_(std::move(sigma)) {}

double HardRods1D::energy(const Molecule& a, const Molecule& b) const {
  return distance(a, b) < contact(sigma_, a.species, b.species) ? kInfiniteEnergy : 0.0;
}

std::optional<double> HardRods1D::abs_zeta_integral(Species k, Species l) const {
  return sigma_.at(k) + sigma_.at(l);
}

Rational pair_integral_exact(const HardRods1D& model, Species k, Species l) {
  const Rational sk = rational_from_double(model.sigma().at(k));
  const Rational sl = rational_from_double(model.sigma().at(l));
  if (!(rational_from_double(model.box_length()) > sk + sl)) {
    throw DomainError("pair_integral_exact: box length must exceed sigma_k + sigma_l");
  }
  Rational out = -(sk + sl);
  out.canonicalize();
  return out;
}

HardSpheres::HardSpheres(int dimension, SpeciesTable sigma, double box_length)
    : PairPotential(dimension, box_length), sigma_(std::move(sigma)) {}

double HardSpheres::energy(const Molecule& a, const Molecule& b) const {
  return distance(a, b) < contact(sigma_, a.species, b.species) ? kInfiniteEnergy : 0.0;
}

std::optional<double> HardSpheres::abs_zeta_integral(Species k, Species l) const {
  return ball_volume(dimension(), contact(sigma_, k, l));
}

SquareWell::SquareWell(int dimension, SpeciesTable sigma, double depth, double lambda, double box_length)
    : PairPotential(dimension, box_length), sigma_(std::move(sigma)), depth_(depth), lambda_(lambda) {
  if (!(lambda >= 1.0)) throw UsageError("square well range factor lambda must be >= 1");
  if (!std::isfinite(depth)) throw UsageError("square well depth must be finite");
}

double SquareWell::energy(const Molecule& a, const Molecule& b) const {
  const double r = distance(a, b);
  const double s = contact(sigma_, a.species, b.species);
  if (r < s) return kInfiniteEnergy;
  if (r < lambda_ * s) return -depth_;
  return 0.0;
}

std::optional<double> SquareWell::abs_zeta_integral(Species k, Species l) const {
  const double s = contact(sigma_, k, l);
  const double core = ball_volume(dimension(), s);
  const double shell = ball_volume(dimension(), lambda_ * s) - core;
  return core + shell * std::fabs(std::expm1(depth_));
}

ConstantPotential::ConstantPotential(int dimension, double value, double box_length)
    : PairPotential(dimension, box_length), value_(value) {
  if (std::isnan(value)) throw UsageError("constant potential value must not be NaN");
}

double ConstantPotential::energy(const Molecule&, const Molecule&) const { return value_; }

std::optional<double> ConstantPotential::abs_zeta_integral(Species, Species) const {
  if (value_ == 0.0) return 0.0;
  return std::numeric_limits<double>::infinity();
}

PatchyParticles::PatchyParticles(int dimension, SpeciesTable sigma, double depth, double lambda, double cos_delta,
                                 double box_length)
    : PairPotential(dimension, box_length),
      sigma_(std::move(sigma)),
      depth_(depth),
      lambda_(lambda),
      cos_delta_(cos_delta) {
  if (dimension < 2) throw UsageError("patchy particles need d = 2 or 3");
  if (!(lambda >= 1.0)) throw UsageError("patch range factor lambda must be >= 1");
  if (!(cos_delta >= -1.0 && cos_delta <= 1.0)) throw UsageError("cos_delta must lie in [-1, 1]");
}

double PatchyParticles::energy(const Molecule& a, const Molecule& b) const {
  const Vec3 d = separation(a, b);
  const double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  const double s = contact(sigma_, a.species, b.species);
  if (r < s) return kInfiniteEnergy;
  if (r >= lambda_ * s) return 0.0;
  double ca = 0.0;
  double cb = 0.0;
  for (int i = 0; i < dimension(); ++i) {
    const auto j = static_cast<std::size_t>(i);
    ca += a.orientation[j] * d[j] / r;
    cb -= b.orientation[j] * d[j] / r;
  }
  return (ca >= cos_delta_ && cb >= cos_delta_) ? -depth_ : 0.0;
}

}  // namespace virialkit
