#include "graphent/random.hpp"

#include <cmath>

#include "graphent/error.hpp"
#include "graphent/spectral.hpp"

namespace graphent {

int Rng::integer(int lo, int hi) {
  if (hi < lo) throw InvalidInput("empty integer range");
  const auto span = static_cast<double>(hi - lo + 1);
  const int k = static_cast<int>(std::floor(uniform() * span));
  return lo + (k > hi - lo ? hi - lo : k);
}

std::vector<double> random_lengths(Rng& rng, int count, double log_lo, double log_hi) {
  std::vector<double> out(count);
  for (auto& x : out) x = std::exp(rng.uniform(log_lo, log_hi));
  return out;
}

namespace {

MetricGraph normalized(MetricGraph mg) {
  mg.lengths = normalize_unit(mg.graph, mg.lengths);
  return mg;
}

}  // namespace

MetricGraph random_unit_rose(Rng& rng, int petals) {
  const auto lens = random_lengths(rng, petals);
  return normalized(make_rose(petals, lens));
}

MetricGraph random_unit_barbell_with_loops(Rng& rng, int loops_v, int loops_w) {
  const auto lens = random_lengths(rng, loops_v + loops_w + 1);
  return normalized(make_barbell_with_loops(loops_v, loops_w, lens));
}

MetricGraph random_unit_theta(Rng& rng, int edges) {
  const auto lens = random_lengths(rng, edges);
  return normalized(make_theta(lens));
}

MetricGraph random_unit_fixture(Rng& rng, int rank) {
  if (rank < 2) throw InvalidInput("fixture rank must be at least 2");
  switch (rng.integer(0, 2)) {
    case 0:
      return random_unit_rose(rng, rank);
    case 1: {
      const int lv = rng.integer(1, rank - 1);
      return random_unit_barbell_with_loops(rng, lv, rank - lv);
    }
    default:
      return random_unit_theta(rng, rank + 1);
  }
}

}  // namespace graphent
