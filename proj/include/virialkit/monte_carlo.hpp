#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "virialkit/graph.hpp"
#include "virialkit/potential.hpp"

namespace virialkit {

enum class SamplingScheme { pseudo_random, low_discrepancy };

SamplingScheme parse_sampling_scheme(std::string_view name);
const char* to_string(SamplingScheme s);

struct McParams {
  std::uint64_t sample_count = 100000;
  std::uint64_t seed = 0;
  SamplingScheme scheme = SamplingScheme::pseudo_random;
};

void validate(const McParams& p);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

inline constexpr Matrix3 kIdentity3{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};

// Where molecule 1 sits and a global rotation applied to every sampled
// offset and orientation. The default is the origin and the identity.
struct Placement {
  Vec3 anchor{0.0, 0.0, 0.0};
  Matrix3 rotation = kIdentity3;
};

// Estimate of (1/V) int prod_{ij in E} zeta over positions and orientations.
// Molecule 1 is fixed at the anchor; the others are sampled uniformly in the
// cell of side L centred on it. Result is independent of the thread count.
McEstimate weight_mc(const ColouredGraph& g, const PairPotential& u, const McParams& p,
                     const Placement& placement = {});
// Same stream, one thread.
McEstimate weight_mc_serial(const ColouredGraph& g, const PairPotential& u, const McParams& p,
                            const Placement& placement = {});

// splitmix64 step, exposed for seed derivation.
std::uint64_t mix_seed(std::uint64_t x);

// Uniform point on S^{d-1} from d-1 numbers in [0,1).
Vec3 orientation_from_unit(int dimension, double u1, double u2);

}  // namespace virialkit
