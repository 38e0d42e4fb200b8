#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "graphent/bounds.hpp"
#include "graphent/error.hpp"
#include "graphent/spectral.hpp"

using namespace graphent;

TEST_CASE("r2_curve") {
  CHECK(r2_curve(std::log(3.0)) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    const MetricGraph g = make_rose(2, std::vector<double>{x, r2_curve(x)});
    CHECK(std::abs(entropy(g.graph, g.lengths) - 1.0) < 1e-9);
    CHECK(std::abs(F_value(g.graph, g.lengths)) < 1e-9);
  }
  CHECK(r2_curve(40.0) > 0.0);
  CHECK(r2_curve(40.0) < 1e-16);
  CHECK_THROWS_AS(r2_curve(0.0), InvalidInput);
}

TEST_CASE("rose-barbell comparison") {
  const BoundReport r = check_rose_barbell(1, 1, 1);
  CHECK(r.satisfied);
  CHECK(r.lhs == doctest::Approx(std::log(2.0)));
  CHECK(r.rhs == doctest::Approx(0.59362277594236473));
  const BoundReport thin = check_rose_barbell(0.8, 1.3, 1e-6);
  CHECK(thin.satisfied);
  CHECK(thin.lhs - thin.rhs < 1e-3);
  const SweepSummary s = sweep_rose_barbell(300, kDefaultSeed);
  CHECK(s.violations == 0);
  CHECK(s.rows.size() == 300);
}

TEST_CASE("barbell floor") {
  CHECK(check_barbell_floor(1.0).satisfied);
  CHECK(check_barbell_floor(20.0).satisfied);
  CHECK(check_barbell_floor(1.0).lhs == doctest::Approx(0.81815698636817445));
  const SweepSummary s = sweep_barbell_floor(100);
  CHECK(s.violations == 0);
  CHECK(s.rows.size() == 100);
  CHECK(s.min_margin > 0.0);
}

TEST_CASE("rose estimate") {
  const MetricGraph u = make_rose(4, std::vector<double>(4, std::log(7.0)));
  const BoundReport sym = check_rose_estimate(u.graph, u.lengths, 0, 1);
  CHECK(sym.satisfied);
  CHECK(sym.rhs / sym.lhs == doctest::Approx(4.0));

  const MetricGraph r3 = make_rose(3, std::vector<double>{1, 2, 3});
  const LengthFunction l = normalize_unit(r3.graph, r3.lengths);
  for (PairId i = 0; i < 3; ++i) {
    for (PairId k = 0; k < 3; ++k) {
      if (i != k) CHECK(check_rose_estimate(r3.graph, l, i, k).satisfied);
    }
  }
  CHECK_THROWS_AS(check_rose_estimate(r3.graph, l, 1, 1), InvalidInput);
  CHECK_THROWS_AS(check_rose_estimate(r3.graph, r3.lengths, 0, 1), InvalidInput);
  const MetricGraph b = make_barbell(1, 1, 1);
  CHECK_THROWS_AS(check_rose_estimate(b.graph, normalize_unit(b.graph, b.lengths), 0, 1),
                  InvalidInput);
  CHECK(sweep_rose_estimate(200, kDefaultSeed).violations == 0);
}

TEST_CASE("non-loop estimate") {
  const MetricGraph b = make_barbell(0.4, 1.7, 2.2);
  const LengthFunction l = normalize_unit(b.graph, b.lengths);
  const BoundReport r = check_nonloop_estimate(b.graph, l, 2, 0, 1);
  CHECK(r.satisfied);
  CHECK(r.margin > 0.0);
  CHECK_THROWS_AS(check_nonloop_estimate(b.graph, l, 0, 0, 1), InvalidInput);
  CHECK_THROWS_AS(check_nonloop_estimate(b.graph, l, 2, 1, 0), InvalidInput);
  const SweepSummary s = sweep_nonloop_estimate(300, kDefaultSeed);
  CHECK(s.violations == 0);
  CHECK(s.min_margin >= -1e-12);
}

TEST_CASE("rose floor") {
  CHECK(rose_floor(3) == 0.2);
  CHECK(rose_floor(5) == 0.2);
  CHECK(rose_floor(28) == 0.2);
  CHECK(rose_floor(29) == doctest::Approx(0.0018299414831525945).epsilon(1e-12));
  CHECK(rose_floor(30) == doctest::Approx(0.010648212199794419).epsilon(1e-12));
  CHECK(rose_floor(1000000) == doctest::Approx(0.72430251745993679).epsilon(1e-12));
  for (int r = 29; r < 200; ++r) CHECK(rose_floor(r + 1) > rose_floor(r));
  CHECK_THROWS_AS(rose_floor(2), InvalidInput);

  const MetricGraph r3 = make_rose(3, std::vector<double>(3, std::log(5.0)));
  const BoundReport rep = check_rose_floor(r3.graph, r3.lengths);
  CHECK(rep.satisfied);
  CHECK(rep.lhs == doctest::Approx(std::log(3.0) / std::log(5.0)));
  CHECK(sweep_rose_floor(100, kDefaultSeed, 3, 6).violations == 0);
  CHECK(sweep_rose_floor(5, kDefaultSeed, 30, 30).violations == 0);
}

TEST_CASE("collapse inequality") {
  const MetricGraph b = make_barbell(2.0, 3.0, 1.0);
  const LengthFunction l = normalize_unit(b.graph, b.lengths);
  const DerivedGraph r2 = collapse_edge(b.graph, l, 2);
  for (const auto& sel : proper_subgraphs(r2.graph)) {
    const BoundReport rep = check_collapse_inequality(b.graph, l, 2, sel);
    CHECK_FALSE(rep.skipped);
    CHECK(rep.satisfied);
  }

  const MetricGraph t = make_theta(std::vector<double>{1.2, 1.0, 1.5, 1.9});
  const LengthFunction lt = normalize_unit(t.graph, t.lengths);
  const DerivedGraph r3 = collapse_edge(t.graph, lt, 1);
  const auto subs = proper_subgraphs(r3.graph);
  CHECK(subs.size() == 6);
  for (const auto& sel : subs) {
    const BoundReport rep = check_collapse_inequality(t.graph, lt, 1, sel);
    CHECK_FALSE(rep.skipped);
    CHECK(rep.satisfied);
  }

  // A loop shorter than the collapsed edge violates the precondition.
  const MetricGraph bad = make_barbell(0.5, 3.0, 1.0);
  const DerivedGraph c = collapse_edge(bad.graph, bad.lengths, 2);
  const BoundReport skipped =
      check_collapse_inequality(bad.graph, bad.lengths, 2, make_selection(c.graph, {0}));
  CHECK(skipped.skipped);

  const SweepSummary s = sweep_collapse(200, kDefaultSeed);
  CHECK(s.violations == 0);
  CHECK(s.rows.size() > 100);
}

TEST_CASE("final assembly") {
  // Constructed trigger case: ℓ(e) = 4, m = 3e^{−2}, the other loop at ℓ(e)/4.
  const MetricGraph g = make_barbell_with_loops(1, 2, std::vector<double>{3 * std::exp(-2.0), 1.0, 0.8, 4.0});
  CHECK(sub_barbell_entropy(g.graph, g.lengths, 3, 0, 1) >= 0.2);

  const SweepSummary s = sweep_assembly(200, kDefaultSeed);
  CHECK(s.violations == 0);
  CHECK(s.rows.size() == 200);
  int informative = 0;
  int triggered = 0;
  for (const auto& row : s.rows) {
    if (row.report.rhs > 0.0) ++informative;
    if (row.report.context.find("trigger") != std::string::npos) ++triggered;
  }
  CHECK(informative > 150);
  CHECK(triggered > 0);

  // Large loops relative to the edge make the main bound vacuous.
  const MetricGraph wide = make_barbell_with_loops(1, 2, std::vector<double>{1.0, 1.1, 1.2, 4.8});
  const LengthFunction lw = normalize_unit(wide.graph, wide.lengths);
  const BoundReport rep = check_final_assembly(wide.graph, lw, 3, 0, 1);
  CHECK(rep.satisfied);
  CHECK(rep.rhs < rep.lhs);

  const MetricGraph b = make_barbell(1, 1, 1);
  const LengthFunction lb = normalize_unit(b.graph, b.lengths);
  CHECK_THROWS_AS(check_final_assembly(b.graph, lb, 2, 0, 1), InvalidInput);
}

TEST_CASE("sweeps are reproducible and write CSV") {
  std::ostringstream a, b;
  write_sweep_csv_header(a);
  write_sweep_csv_rows(a, sweep_nonloop_estimate(20, 5));
  write_sweep_csv_header(b);
  write_sweep_csv_rows(b, sweep_nonloop_estimate(20, 5));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("check_name,seed,lhs,rhs,margin,satisfied\n", 0) == 0);
  std::ostringstream c;
  write_sweep_csv_rows(c, sweep_nonloop_estimate(20, 6));
  CHECK(c.str() != a.str().substr(a.str().find('\n') + 1));
  CHECK(sweep_rose_estimate(0, 1).rows.empty());
}
