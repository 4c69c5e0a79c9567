#include "virialkit/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "virialkit/errors.hpp"

namespace virialkit {

SamplingScheme parse_sampling_scheme(std::string_view name) {
  if (name == "pseudo-random" || name == "pseudo_random" || name == "pseudo") return SamplingScheme::pseudo_random;
  if (name == "low-discrepancy" || name == "low_discrepancy" || name == "halton") {
    return SamplingScheme::low_discrepancy;
  }
  throw UsageError("unknown sampling scheme '" + std::string(name) + "'");
}

const char* to_string(SamplingScheme s) {
  return s == SamplingScheme::pseudo_random ? "pseudo-random" : "low-discrepancy";
}

void validate(const McParams& p) {
  if (p.sample_count < 2) throw UsageError("sample_count must be at least 2");
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vec3 orientation_from_unit(int dimension, double u1, double u2) {
  switch (dimension) {
    case 1: return {1.0, 0.0, 0.0};
    case 2: {
      const double t = 2.0 * std::numbers::pi * u1;
      return {std::cos(t), std::sin(t), 0.0};
    }
    default: {
      const double z = 2.0 * u1 - 1.0;
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double t = 2.0 * std::numbers::pi * u2;
      return {s * std::cos(t), s * std::sin(t), z};
    }
  }
}

namespace {

constexpr std::uint64_t kChunk = 4096;
constexpr std::uint64_t kReplicates = 16;

constexpr std::array<int, 40> kPrimes{2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
                                      47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
                                      109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

double radical_inverse(std::uint64_t i, int base) {
  const double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Vec3 rotate(const Matrix3& r, const Vec3& v, int d) {
  Vec3 out{0.0, 0.0, 0.0};
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

// Evaluates prod zeta for one point of the unit cube.
class Integrand {
 public:
  Integrand(const ColouredGraph& g, const PairPotential& u, const Placement& placement)
      : u_(u), placement_(placement), n_(g.graph.order()), d_(u.dimension()) {
    for (auto [a, b] : g.graph.edges()) edges_.emplace_back(a - 1, b - 1);
    molecules_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) molecules_[static_cast<std::size_t>(i)].species = g.colours[static_cast<std::size_t>(i)];
    orientation_dims_ = d_ == 1 ? 0 : d_ - 1;
    dims_ = (n_ - 1) * d_ + n_ * orientation_dims_;
  }

  int dimensions() const { return dims_; }

  double operator()(const double* x) {
    std::vector<Molecule>& m = molecules_;
    const double L = u_.box_length();
    m[0].position = wrap(placement_.anchor);
    for (int i = 1; i < n_; ++i) {
      Vec3 off{0.0, 0.0, 0.0};
      for (int c = 0; c < d_; ++c) off[static_cast<std::size_t>(c)] = L * (x[(i - 1) * d_ + c] - 0.5);
      off = rotate(placement_.rotation, off, d_);
      Vec3 p = placement_.anchor;
      for (int c = 0; c < d_; ++c) p[static_cast<std::size_t>(c)] += off[static_cast<std::size_t>(c)];
      m[static_cast<std::size_t>(i)].position = wrap(p);
    }
    const double* o = x + (n_ - 1) * d_;
    for (int i = 0; i < n_; ++i) {
      const double u1 = orientation_dims_ > 0 ? o[i * orientation_dims_] : 0.0;
      const double u2 = orientation_dims_ > 1 ? o[i * orientation_dims_ + 1] : 0.0;
      m[static_cast<std::size_t>(i)].orientation = rotate(placement_.rotation, orientation_from_unit(d_, u1, u2), d_);
      if (d_ == 1) m[static_cast<std::size_t>(i)].orientation = {1.0, 0.0, 0.0};
    }
    double prod = 1.0;
    for (auto [a, b] : edges_) {
      prod *= zeta(u_, m[static_cast<std::size_t>(a)], m[static_cast<std::size_t>(b)]);
      if (prod == 0.0) break;
    }
    return prod;
  }

 private:
  Vec3 wrap(Vec3 p) const {
    const double L = u_.box_length();
    for (int c = 0; c < d_; ++c) {
      double v = std::fmod(p[static_cast<std::size_t>(c)], L);
      if (v < 0.0) v += L;
      if (v >= L) v = 0.0;
      p[static_cast<std::size_t>(c)] = v;
    }
    return p;
  }

  const PairPotential& u_;
  const Placement& placement_;
  int n_;
  int d_;
  int orientation_dims_ = 0;
  int dims_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Molecule> molecules_;
};

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Work unit: samples [begin, end) of a replicate (pseudo-random uses replicate 0).
struct Chunk {
  std::uint64_t replicate = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

std::vector<Chunk> plan_chunks(const McParams& p, std::uint64_t replicates) {
  std::vector<Chunk> out;
  for (std::uint64_t r = 0; r < replicates; ++r) {
    const std::uint64_t lo = p.sample_count * r / replicates;
    const std::uint64_t hi = p.sample_count * (r + 1) / replicates;
    for (std::uint64_t b = lo; b < hi; b += kChunk) out.push_back({r, b - lo, std::min(hi, b + kChunk) - lo});
  }
  return out;
}

ChunkSums run_chunk(const ColouredGraph& g, const PairPotential& u, const McParams& p, const Placement& placement,
                    const Chunk& c, std::uint64_t chunk_id) {
  Integrand f(g, u, placement);
  std::vector<double> x(static_cast<std::size_t>(f.dimensions()) + 1, 0.0);
  ChunkSums s;
  if (p.scheme == SamplingScheme::pseudo_random) {
    std::mt19937_64 rng(mix_seed(p.seed ^ mix_seed(chunk_id + 1)));
    for (std::uint64_t i = c.begin; i < c.end; ++i) {
      for (int k = 0; k < f.dimensions(); ++k) x[static_cast<std::size_t>(k)] = unit_double(rng);
      const double v = f(x.data());
      s.sum += v;
      s.sum_sq += v * v;
    }
  } else {
    if (f.dimensions() > static_cast<int>(kPrimes.size())) {
      throw UsageError("low-discrepancy sampling supports at most 40 dimensions");
    }
    std::mt19937_64 rng(mix_seed(p.seed ^ mix_seed(~c.replicate)));
    std::vector<double> shift(static_cast<std::size_t>(f.dimensions()));
    for (double& v : shift) v = unit_double(rng);
    for (std::uint64_t i = c.begin; i < c.end; ++i) {
      for (int k = 0; k < f.dimensions(); ++k) {
        double v = radical_inverse(i + 1, kPrimes[static_cast<std::size_t>(k)]) + shift[static_cast<std::size_t>(k)];
        if (v >= 1.0) v -= 1.0;
        x[static_cast<std::size_t>(k)] = v;
      }
      const double v = f(x.data());
      s.sum += v;
      s.sum_sq += v * v;
    }
  }
  return s;
}

McEstimate weight_mc_impl(const ColouredGraph& g, const PairPotential& u, const McParams& p,
                          const Placement& placement, bool parallel) {
  validate(p);
  const int n = g.graph.order();
  McEstimate out;
  out.sample_count = p.sample_count;
  out.seed = p.seed;
  if (n == 1) {
    out.estimate = 1.0;
    return out;
  }
  if (!is_connected(g.graph)) throw UsageError("weight_mc: graph must be connected");

  const std::uint64_t replicates =
      p.scheme == SamplingScheme::pseudo_random ? 1 : std::min<std::uint64_t>(kReplicates, p.sample_count);
  const std::vector<Chunk> chunks = plan_chunks(p, replicates);
  std::vector<ChunkSums> sums(chunks.size());
  const auto count = static_cast<std::int64_t>(chunks.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    sums[k] = run_chunk(g, u, p, placement, chunks[k], static_cast<std::uint64_t>(i));
  }

  const double scale = std::pow(u.volume(), n - 1);
  const double total = static_cast<double>(p.sample_count);
  if (p.scheme == SamplingScheme::pseudo_random) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& s : sums) {
      sum += s.sum;
      sum_sq += s.sum_sq;
    }
    const double mean = sum / total;
    const double var = std::max(0.0, (sum_sq - total * mean * mean) / (total - 1.0));
    out.estimate = scale * mean;
    out.std_error = scale * std::sqrt(var / total);
  } else {
    std::vector<double> rep_sum(replicates, 0.0);
    for (std::size_t i = 0; i < chunks.size(); ++i) rep_sum[chunks[i].replicate] += sums[i].sum;
    std::vector<double> means(replicates);
    for (std::uint64_t r = 0; r < replicates; ++r) {
      const std::uint64_t size = p.sample_count * (r + 1) / replicates - p.sample_count * r / replicates;
      means[r] = rep_sum[r] / static_cast<double>(size);
    }
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= static_cast<double>(replicates);
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= static_cast<double>(replicates - 1);
    out.estimate = scale * mean;
    out.std_error = scale * std::sqrt(var / static_cast<double>(replicates));
  }
  return out;
}

}  // namespace

McEstimate weight_mc(const ColouredGraph& g, const PairPotential& u, const McParams& p, const Placement& placement) {
  return weight_mc_impl(g, u, p, placement, true);
}

McEstimate weight_mc_serial(const ColouredGraph& g, const PairPotential& u, const McParams& p,
                            const Placement& placement) {
  return weight_mc_impl(g, u, p, placement, false);
}

}  // namespace virialkit
