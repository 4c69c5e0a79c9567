#pragma once

#include <array>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "virialkit/multi_index.hpp"
#include "virialkit/rational.hpp"

namespace virialkit {

using Vec3 = std::array<double, 3>;

// Rigid molecule X = (species, position in the torus [0,L)^d, orientation in S^{d-1}).
// Only the first d components of position and orientation are used; for d = 1
// the orientation is ignored.
struct Molecule {
  Species species = 1;
  Vec3 position{0.0, 0.0, 0.0};
  Vec3 orientation{1.0, 0.0, 0.0};
};

inline constexpr double kInfiniteEnergy = std::numeric_limits<double>::infinity();

// Per-species size parameter: an explicit table or the rule sigma_k = scale * k.
class SpeciesTable {
 public:
  SpeciesTable() = default;
  explicit SpeciesTable(std::map<Species, double> values);
  static SpeciesTable linear(double scale);

  double at(Species k) const;
  // Explicitly listed species; empty for a rule.
  std::vector<Species> listed() const;
  bool is_rule() const { return rule_scale_.has_value(); }
  std::optional<double> rule_scale() const { return rule_scale_; }
  const std::map<Species, double>& values() const { return values_; }

 private:
  std::map<Species, double> values_;
  std::optional<double> rule_scale_;
};

// Pair interaction U(X1, X2) on a periodic box. Implementations must be
// symmetric, periodic, translation and rotation invariant.
class PairPotential {
 public:
  PairPotential(int dimension, double box_length);
  virtual ~PairPotential() = default;

  int dimension() const { return dimension_; }
  double box_length() const { return box_length_; }
  double volume() const;

  // May return kInfiniteEnergy (hard-core overlap).
  virtual double energy(const Molecule& a, const Molecule& b) const = 0;

  // Integral of |zeta| over R^d and the partner's orientation, when known in
  // closed form.
  virtual std::optional<double> abs_zeta_integral(Species k, Species l) const;

  // Species the model defines explicitly (used when sampling configurations).
  virtual std::vector<Species> species() const { return {}; }

  virtual std::string name() const = 0;

  // Minimum-image separation b - a, first d components.
  Vec3 separation(const Molecule& a, const Molecule& b) const;
  double distance(const Molecule& a, const Molecule& b) const;

  // Throws UsageError for positions outside [0,L) or non-unit orientations.
  void validate(const Molecule& m) const;

 private:
  int dimension_;
  double box_length_;
};

// Mayer function e^{-U} - 1; hard-core overlap maps to -1.
double zeta(const PairPotential& u, const Molecule& x1, const Molecule& x2);

// Volume of the d-ball of radius r.
double ball_volume(int dimension, double radius);

// 1D rods of length sigma_k; rods overlap iff |x - x'| < (sigma_k + sigma_l) / 2.
class HardRods1D final : public PairPotential {
 public:
  HardRods1D(SpeciesTable sigma, double box_length);

  double energy(const Molecule& a, const Molecule& b) const override;
  std::optional<double> abs_zeta_integral(Species k, Species l) const override;
  std::vector<Species> species() const override { return sigma_.listed(); }
  std::string name() const override { return "hard_rods_1d"; }

  const SpeciesTable& sigma() const { return sigma_; }

 private:
  SpeciesTable sigma_;
};

// Exact integral of zeta over the partner position with one rod fixed at the
// origin: -(sigma_k + sigma_l). Requires L > sigma_k + sigma_l.
Rational pair_integral_exact(const HardRods1D& model, Species k, Species l);

// Additive hard spheres (diameters sigma_k) in d = 1, 2, 3.
class HardSpheres final : public PairPotential {
 public:
  HardSpheres(int dimension, SpeciesTable sigma, double box_length);

  double energy(const Molecule& a, const Molecule& b) const override;
  std::optional<double> abs_zeta_integral(Species k, Species l) const override;
  std::vector<Species> species() const override { return sigma_.listed(); }
  std::string name() const override { return "hard_spheres"; }

 private:
  SpeciesTable sigma_;
};

// Hard core of contact distance s = (sigma_k + sigma_l)/2 plus an attractive
// well of depth `depth` out to lambda * s.
class SquareWell final : public PairPotential {
 public:
  SquareWell(int dimension, SpeciesTable sigma, double depth, double lambda, double box_length);

  double energy(const Molecule& a, const Molecule& b) const override;
  std::optional<double> abs_zeta_integral(Species k, Species l) const override;
  std::vector<Species> species() const override { return sigma_.listed(); }
  std::string name() const override { return "square_well"; }

 private:
  SpeciesTable sigma_;
  double depth_;
  double lambda_;
};

// U = value for every pair, regardless of position.
class ConstantPotential final : public PairPotential {
 public:
  ConstantPotential(int dimension, double value, double box_length);

  double energy(const Molecule& a, const Molecule& b) const override;
  std::optional<double> abs_zeta_integral(Species k, Species l) const override;
  std::string name() const override { return "constant"; }

 private:
  double value_;
};

// Kern-Frenkel patchy particles (d = 2 or 3): hard core plus an attraction of
// depth `depth` within lambda * s when each particle's patch axis points at
// the other within the cone cos(angle) >= cos_delta.
class PatchyParticles final : public PairPotential {
 public:
  PatchyParticles(int dimension, SpeciesTable sigma, double depth, double lambda, double cos_delta,
                  double box_length);

  double energy(const Molecule& a, const Molecule& b) const override;
  std::vector<Species> species() const override { return sigma_.listed(); }
  std::string name() const override { return "patchy"; }

 private:
  SpeciesTable sigma_;
  double depth_;
  double lambda_;
  double cos_delta_;
};

}  // namespace virialkit
