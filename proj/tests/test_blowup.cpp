#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphent/blowup.hpp"
#include "graphent/error.hpp"
#include "graphent/random.hpp"
#include "graphent/spectral.hpp"
#include "oracles.hpp"

using namespace graphent;

namespace {

const double kLog3 = std::log(3.0);
const double kLog5 = std::log(5.0);

MetricGraph rose3() { return make_rose(3, std::vector<double>(3, kLog5)); }
MetricGraph theta4() { return make_theta(std::vector<double>(4, kLog3)); }

// Largest t ≤ 10 (by doubling from 0.25) keeping |j'| ≥ 1e-6; beyond it a
// central difference of a double-precision j no longer resolves j'.
double resolvable_horizon(const LinearBlowup& b) {
  double t = 0.25;
  while (t < 10.0 && std::abs(b.sample(2 * t).j_prime) >= 1e-6) t *= 2;
  return std::min(t, 10.0);
}

}  // namespace

TEST_CASE("psi_t keeps unit entropy") {
  const MetricGraph r = rose3();
  const LengthFunction psi0 = psi_t(r.graph, r.lengths, 0, 0.0);
  CHECK(psi0 == r.lengths);
  const LinearBlowup b(r.graph, r.lengths, 0);
  CHECK(b.j(0.0) == 1.0);
  for (double t : {1.0, 5.0, 20.0}) {
    const LengthFunction psi = b.psi(t);
    CHECK(entropy(r.graph, psi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(psi[0] == doctest::Approx(kLog5 + t));
    CHECK(b.j(t) == doctest::Approx(oracle::blowup_scale(r.graph, r.lengths, 0, t)).epsilon(1e-10));
  }
  CHECK(b.j(5.0) < b.j(1.0));
  CHECK(b.j_infinity() == doctest::Approx(kLog3 / kLog5).epsilon(1e-12));
}

TEST_CASE("blow-up preconditions") {
  const MetricGraph b = make_barbell(1, 1, 1);
  const LengthFunction ub = normalize_unit(b.graph, b.lengths);
  CHECK_THROWS_AS(LinearBlowup(b.graph, ub, 2), InvalidInput);
  const MetricGraph r = rose3();
  CHECK_THROWS_AS(LinearBlowup(r.graph, r.lengths.scaled(1.1), 0), InvalidInput);
  CHECK_THROWS_AS(LinearBlowup(r.graph, r.lengths, 3), InvalidInput);
  const LinearBlowup ok(r.graph, r.lengths, 1);
  CHECK_THROWS_AS(ok.j(-1.0), InvalidInput);
}

TEST_CASE("j' matches finite differences of the oracle root") {
  const double h = 1e-4;
  std::vector<MetricGraph> fixtures = {rose3(), theta4()};
  for (int i = 0; i < 4; ++i) {
    Rng rng(sample_seed(41, i));
    fixtures.push_back(random_unit_fixture(rng, rng.integer(3, 4)));
  }
  for (const auto& g : fixtures) {
    for (PairId e = 0; e < g.graph.num_pairs(); e += 2) {
      const LinearBlowup b(g.graph, g.lengths, e);
      const double horizon = resolvable_horizon(b);
      for (int k = 1; k <= 4; ++k) {
        const double t = horizon * k / 4.0;
        const double fd = (oracle::blowup_scale(g.graph, g.lengths, e, t + h) -
                           oracle::blowup_scale(g.graph, g.lengths, e, t - h)) /
                          (2 * h);
        const LinearBlowup::Sample s = b.sample(t);
        CHECK(s.j_prime < 0.0);
        CHECK(std::abs(s.j_prime - fd) <= 1e-5 * std::abs(s.j_prime));
      }
    }
  }
}

TEST_CASE("j' decays like exp(-t)") {
  for (const auto& g : {rose3(), theta4()}) {
    const LinearBlowup b(g.graph, g.lengths, 0);
    const double jp = std::abs(b.sample(30.0).j_prime);
    CHECK(jp > 0.0);
    CHECK(jp < std::exp(-30.0 + g.lengths[0]));
  }
}

TEST_CASE("integral formula for subgraph entropy") {
  const MetricGraph r = rose3();
  for (PairId e = 0; e < 3; ++e) {
    const auto res = subgraph_entropy_integral(r.graph, r.lengths, e);
    CHECK(res.value == doctest::Approx(kLog3 / kLog5).epsilon(1e-7));
    CHECK(res.tail_bound < 1e-8);
    CHECK(res.horizon <= 200.0);
  }
  const MetricGraph t = theta4();
  for (PairId e = 0; e < 4; ++e) {
    CHECK(subgraph_entropy_integral(t.graph, t.lengths, e).value ==
          doctest::Approx(std::log(2.0) / kLog3).epsilon(1e-7));
  }
}

TEST_CASE("integral agrees with the direct computation on random graphs") {
  for (int i = 0; i < 12; ++i) {
    Rng rng(sample_seed(17, i));
    const MetricGraph g = random_unit_fixture(rng, rng.integer(3, 5));
    const PairId e = rng.integer(0, g.graph.num_pairs() - 1);
    const double direct = subgraph_entropy_direct(g.graph, g.lengths, e);
    if (!(direct > 0.0)) continue;
    CHECK(std::abs(subgraph_entropy_integral(g.graph, g.lengths, e).value - direct) < 1e-4);
  }
}

TEST_CASE("subgraph_entropy_direct") {
  const MetricGraph r = rose3();
  CHECK(subgraph_entropy_direct(r.graph, r.lengths, 0) == doctest::Approx(kLog3 / kLog5));
  const MetricGraph b = make_barbell(1, 2, 3);
  CHECK(subgraph_entropy_direct(b.graph, b.lengths, 2) == 0.0);
  const MetricGraph t = theta4();
  CHECK(subgraph_entropy_direct(t.graph, t.lengths, 3) == doctest::Approx(std::log(2.0) / kLog3));
}

TEST_CASE("limit identity: the rescaled subgraph has unit entropy") {
  for (int i = 0; i < 8; ++i) {
    Rng rng(sample_seed(23, i));
    const MetricGraph g = random_unit_fixture(rng, 3);
    const LinearBlowup b(g.graph, g.lengths, 0);
    if (!(b.j_infinity() > 0.0)) continue;
    const DerivedGraph sub = delete_pair(g.graph, g.lengths, 0);
    CHECK(entropy(sub.graph, sub.lengths) / b.j_infinity() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(entropy(sub.graph, sub.lengths.scaled(b.j_infinity())) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("rose edge bound: integral of |j'| is at most 4 / l(e2)") {
  for (int i = 0; i < 15; ++i) {
    Rng rng(sample_seed(61, i));
    const MetricGraph g = random_unit_rose(rng, rng.integer(3, 6));
    std::vector<PairId> order(g.graph.num_pairs());
    for (PairId p = 0; p < g.graph.num_pairs(); ++p) order[p] = p;
    std::sort(order.begin(), order.end(), [&](PairId a, PairId b) { return g.lengths[a] > g.lengths[b]; });
    const auto res = subgraph_entropy_integral(g.graph, g.lengths, order[0]);
    CHECK(res.integral <= 4.0 / g.lengths[order[1]]);
  }
}

TEST_CASE("blowup_trace") {
  const MetricGraph r = rose3();
  for (bool log_spaced : {false, true}) {
    const BlowupTrace tr = blowup_trace(r.graph, r.lengths, 0, 30.0, 25, log_spaced);
    REQUIRE(tr.samples.size() == 25);
    CHECK(tr.samples.front().t == 0.0);
    CHECK(tr.samples.front().j == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(tr.samples.back().t == 30.0);
    for (std::size_t i = 1; i < tr.samples.size(); ++i) {
      CHECK(tr.samples[i].j <= tr.samples[i - 1].j);
    }
    for (const auto& s : tr.samples) {
      CHECK(s.j_prime < 0.0);
      CHECK(s.mu_e > 0.0);
      CHECK(s.denom > 0.0);
    }
    CHECK(std::abs(tr.samples.back().j - subgraph_entropy_direct(r.graph, r.lengths, 0)) <=
          tr.tail_bound);
  }
  CHECK_THROWS_AS(blowup_trace(r.graph, r.lengths, 0, 10.0, 1), InvalidInput);

  std::ostringstream csv;
  write_trace_csv(csv, blowup_trace(r.graph, r.lengths, 0, 5.0, 3));
  const std::string text = csv.str();
  CHECK(text.rfind("t,j,j_prime,mu_e,denom\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
