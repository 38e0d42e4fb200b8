#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "graphent/graph.hpp"

namespace graphent {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Per-sample seed for sweeps.
constexpr std::uint64_t sample_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return base ^ index;
}

/// mt19937_64 with distributions written out so streams are identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {lo, ..., hi}.
  int integer(int lo, int hi);
  /// Exponential(1), from −log of a uniform on (0, 1].
  double exponential() { return -std::log1p(-uniform()); }

 private:
  std::mt19937_64 engine_;
};

/// exp(U[lo, hi]) per entry.
std::vector<double> random_lengths(Rng& rng, int count, double log_lo = -2.0, double log_hi = 2.0);

MetricGraph random_unit_rose(Rng& rng, int petals);
MetricGraph random_unit_barbell_with_loops(Rng& rng, int loops_v, int loops_w);
MetricGraph random_unit_theta(Rng& rng, int edges);

/// A unit-entropy fixture of the given rank drawn from roses, barbells with
/// loops and thetas, chosen uniformly.
MetricGraph random_unit_fixture(Rng& rng, int rank);

}  // namespace graphent
