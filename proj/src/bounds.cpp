#include "graphent/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "graphent/blowup.hpp"
#include "graphent/error.hpp"
#include "graphent/explorer.hpp"
#include "graphent/spectral.hpp"

namespace graphent {

namespace {

constexpr double kInclusiveSlack = 1e-10;

std::string fingerprint(const Graph& g, const LengthFunction& lengths) {
  std::string out = g.name().empty() ? "graph" : g.name();
  out += '[';
  char buf[32];
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    std::snprintf(buf, sizeof buf, i == 0 ? "%.6g" : " %.6g", lengths[static_cast<PairId>(i)]);
    out += buf;
  }
  out += ']';
  return out;
}

BoundReport lower_bound(std::string name, double lhs, double rhs, double slack) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.satisfied = lhs >= rhs - slack;
  return r;
}

bool is_rose(const Graph& g) {
  if (g.num_vertices() != 1) return false;
  for (PairId p = 0; p < g.num_pairs(); ++p) {
    if (!g.is_loop(p)) return false;
  }
  return true;
}

void check_pair(const Graph& g, PairId p) {
  if (p < 0 || p >= g.num_pairs()) throw InvalidInput("edge out of range");
}

}  // namespace

double r2_curve(double x) {
  if (!(x > 0.0)) throw InvalidInput("R2 curve needs x > 0");
  const double q = std::exp(-x);
  return std::log1p(3.0 * q) - std::log(-std::expm1(-x));
}

BoundReport check_rose_barbell(double a, double b, double c) {
  const MetricGraph barbell = make_barbell(a, b, c);
  const double rose_lengths[] = {a, b + 2.0 * c};
  const MetricGraph rose = make_rose(2, rose_lengths);
  BoundReport r = lower_bound("rose_barbell", entropy(barbell.graph, barbell.lengths),
                              entropy(rose.graph, rose.lengths), kInclusiveSlack);
  r.context = fingerprint(barbell.graph, barbell.lengths);
  return r;
}

BoundReport check_barbell_floor(double c) {
  if (!(c > 0.0)) throw InvalidInput("barbell floor needs c > 0");
  const MetricGraph barbell = make_barbell(3.0 * std::exp(-0.5 * c), 0.25 * c, c);
  BoundReport r =
      lower_bound("barbell_floor", entropy(barbell.graph, barbell.lengths), 0.2, kInclusiveSlack);
  r.context = fingerprint(barbell.graph, barbell.lengths);
  return r;
}

BoundReport check_rose_estimate(const Graph& rose, const LengthFunction& unit_lengths, PairId i,
                                PairId k) {
  if (!is_rose(rose)) throw InvalidInput("rose estimate needs a rose");
  check_pair(rose, i);
  check_pair(rose, k);
  if (i == k) throw InvalidInput("rose estimate needs two distinct petals");
  const EquilibriumMeasure mu = equilibrium_measure(rose, unit_lengths);
  BoundReport r;
  r.name = "rose_estimate";
  r.lhs = std::exp(unit_lengths[i]) * mu.of_edge(positive_edge(i));
  r.rhs = 4.0 * std::exp(unit_lengths[k]) * mu.of_edge(positive_edge(k));
  r.margin = r.rhs - r.lhs;
  r.satisfied = r.lhs < r.rhs;
  r.context = fingerprint(rose, unit_lengths);
  return r;
}

BoundReport check_nonloop_estimate(const Graph& g, const LengthFunction& unit_lengths, PairId e,
                                   PairId gamma1, PairId gamma2) {
  check_pair(g, e);
  check_pair(g, gamma1);
  check_pair(g, gamma2);
  const EdgeId de = positive_edge(e);
  const EdgeId d1 = positive_edge(gamma1);
  const EdgeId d2 = positive_edge(gamma2);
  if (g.is_loop(e)) throw InvalidInput("edge must not be a loop");
  if (!g.is_loop(gamma1) || g.origin(d1) != g.origin(de)) {
    throw InvalidInput("first loop must sit at the origin of the edge");
  }
  if (!g.is_loop(gamma2) || g.origin(d2) != g.terminus(de)) {
    throw InvalidInput("second loop must sit at the terminus of the edge");
  }
  const EquilibriumMeasure mu = equilibrium_measure(g, unit_lengths);
  BoundReport r;
  r.name = "nonloop_estimate";
  r.lhs = std::exp(unit_lengths[e]) * mu.of_edge(de);
  r.rhs = 2.0 * std::exp(unit_lengths[gamma1] + unit_lengths[gamma2]) *
          (mu.of_edge(d1) + mu.of_edge(d2));
  r.margin = r.rhs - r.lhs;
  r.satisfied = r.lhs - r.rhs <= 1e-12 * std::max(1.0, r.rhs);
  r.context = fingerprint(g, unit_lengths);
  return r;
}

double rose_floor(int r) {
  if (r < 3) throw InvalidInput("rose floor needs r >= 3");
  if (r < 29) return 0.2;
  return 1.0 - 4.0 / std::log(2.0 * r - 3.0);
}

BoundReport check_rose_floor(const Graph& rose, const LengthFunction& unit_lengths) {
  if (!is_rose(rose)) throw InvalidInput("rose floor needs a rose");
  const int r = rose.num_pairs();
  const double floor = rose_floor(r);
  double sup = 0.0;
  if (r <= kExhaustiveSupGuard) {
    sup = entropy_sup(rose, unit_lengths).value;
  } else {
    if (!is_unit_entropy(rose, unit_lengths)) {
      throw InvalidInput("length function does not have unit entropy");
    }
    sup = entropy_sup_maximal(rose, unit_lengths).value;
  }
  BoundReport rep = lower_bound("rose_floor", sup, floor, 1e-9);
  rep.context = fingerprint(rose, unit_lengths);
  return rep;
}

BoundReport check_collapse_inequality(const Graph& g, const LengthFunction& lengths, PairId e,
                                      const SubgraphSelection& collapsed_selection) {
  check_pair(g, e);
  const DerivedGraph collapsed = collapse_edge(g, lengths, e);
  std::vector<PairId> preimage{e};
  for (PairId q : collapsed_selection.kept_pairs) {
    if (q < 0 || q >= collapsed.graph.num_pairs()) throw InvalidInput("selection out of range");
    preimage.push_back(collapsed.parent_pair[q]);
  }
  std::sort(preimage.begin(), preimage.end());

  BoundReport r;
  r.name = "collapse";
  r.context = fingerprint(g, lengths);
  for (PairId q : preimage) {
    if (lengths[q] < lengths[e]) {
      r.skipped = true;
      r.satisfied = true;
      return r;
    }
  }
  const DerivedGraph h = delete_edges(g, lengths, make_selection(g, preimage));
  const DerivedGraph h_prime = delete_edges(collapsed.graph, collapsed.lengths, collapsed_selection);
  const double h_val = entropy(h.graph, h.lengths);
  const double h_prime_val = entropy(h_prime.graph, h_prime.lengths);
  r.lhs = h_prime_val;
  r.rhs = 2.0 * h_val;
  r.margin = std::min(h_prime_val - h_val, 2.0 * h_val - h_prime_val);
  r.satisfied = r.margin >= -kInclusiveSlack;
  char buf[64];
  std::snprintf(buf, sizeof buf, " h_H=%.12g", h_val);
  r.context += buf;
  return r;
}

double sub_barbell_entropy(const Graph& g, const LengthFunction& lengths, PairId e, PairId gamma1,
                           PairId gamma2) {
  const DerivedGraph b = delete_edges(g, lengths, make_selection(g, {e, gamma1, gamma2}));
  return entropy(b.graph, b.lengths);
}

BoundReport check_final_assembly(const Graph& g, const LengthFunction& unit_lengths, PairId e,
                                 PairId gamma1, PairId gamma2) {
  check_pair(g, e);
  check_pair(g, gamma1);
  check_pair(g, gamma2);
  const EdgeId de = positive_edge(e);
  const EdgeId d1 = positive_edge(gamma1);
  const EdgeId d2 = positive_edge(gamma2);
  if (g.is_loop(e) || !g.is_loop(gamma1) || !g.is_loop(gamma2) || g.origin(d1) != g.origin(de) ||
      g.origin(d2) != g.terminus(de)) {
    throw InvalidInput("assembly needs a non-loop edge with a loop at each end");
  }
  const double le = unit_lengths[e];
  if (unit_lengths[gamma1] > 0.25 * le || unit_lengths[gamma2] > 0.25 * le) {
    throw InvalidInput("loops must be at most a quarter of the edge length");
  }
  if (!is_unit_entropy(g, unit_lengths)) {
    throw InvalidInput("length function does not have unit entropy");
  }
  const double m = std::min(unit_lengths[gamma1], unit_lengths[gamma2]);
  const double decay = std::exp(-0.5 * le);
  BoundReport r = lower_bound("assembly", subgraph_entropy_direct(g, unit_lengths, e),
                              1.0 - 2.0 * decay / m, kInclusiveSlack);
  r.context = fingerprint(g, unit_lengths);
  if (m <= 3.0 * decay) {
    const double hb = sub_barbell_entropy(g, unit_lengths, e, gamma1, gamma2);
    r.satisfied = r.satisfied && hb >= 0.2 - kInclusiveSlack;
    r.margin = std::min(r.margin, hb - 0.2);
    char buf[64];
    std::snprintf(buf, sizeof buf, " trigger h_B=%.12g", hb);
    r.context += buf;
  }
  return r;
}

namespace {

void tally(SweepSummary& s, std::uint64_t seed, BoundReport report) {
  if (report.skipped) {
    ++s.skipped;
    return;
  }
  if (!report.satisfied) ++s.violations;
  const bool first = s.rows.empty();
  s.min_margin = first ? report.margin : std::min(s.min_margin, report.margin);
  s.rows.push_back({seed, std::move(report)});
}

// Smallest margin among checked reports; skipped if every report was.
BoundReport worst_of(std::vector<BoundReport> reports) {
  BoundReport worst;
  worst.skipped = true;
  worst.satisfied = true;
  for (auto& r : reports) {
    if (r.skipped) continue;
    if (worst.skipped || r.margin < worst.margin) worst = std::move(r);
  }
  return worst;
}

std::vector<PairId> loops_at(const Graph& g, VertexId v) {
  std::vector<PairId> out;
  for (PairId p = 0; p < g.num_pairs(); ++p) {
    const EdgeId d = positive_edge(p);
    if (g.is_loop(p) && g.origin(d) == v) out.push_back(p);
  }
  return out;
}

PairId pick(Rng& rng, const std::vector<PairId>& from) {
  return from[rng.integer(0, static_cast<int>(from.size()) - 1)];
}

}  // namespace

SweepSummary sweep_rose_estimate(int samples, std::uint64_t base_seed) {
  SweepSummary s;
  s.suite = "rose";
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = sample_seed(base_seed, i);
    Rng rng(seed);
    const int r = rng.integer(3, 8);
    const MetricGraph rose = random_unit_rose(rng, r);
    std::vector<BoundReport> all;
    for (PairId a = 0; a < r; ++a) {
      for (PairId b = 0; b < r; ++b) {
        if (a != b) all.push_back(check_rose_estimate(rose.graph, rose.lengths, a, b));
      }
    }
    tally(s, seed, worst_of(std::move(all)));
  }
  return s;
}

SweepSummary sweep_nonloop_estimate(int samples, std::uint64_t base_seed) {
  SweepSummary s;
  s.suite = "nonloop";
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = sample_seed(base_seed, i);
    Rng rng(seed);
    const int lv = rng.integer(1, 2);
    const int lw = rng.integer(1, 2);
    const MetricGraph b = random_unit_barbell_with_loops(rng, lv, lw);
    const PairId bridge = b.graph.num_pairs() - 1;
    const PairId g1 = pick(rng, loops_at(b.graph, 0));
    const PairId g2 = pick(rng, loops_at(b.graph, 1));
    tally(s, seed, check_nonloop_estimate(b.graph, b.lengths, bridge, g1, g2));
  }
  return s;
}

SweepSummary sweep_rose_barbell(int samples, std::uint64_t base_seed) {
  SweepSummary s;
  s.suite = "barbell";
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = sample_seed(base_seed, i);
    Rng rng(seed);
    const auto abc = random_lengths(rng, 3);
    tally(s, seed, check_rose_barbell(abc[0], abc[1], abc[2]));
  }
  return s;
}

SweepSummary sweep_barbell_floor(int points) {
  SweepSummary s;
  s.suite = "barbell";
  for (int i = 0; i < points; ++i) {
    const double frac = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    tally(s, static_cast<std::uint64_t>(i), check_barbell_floor(std::pow(10.0, -3.0 + 5.0 * frac)));
  }
  return s;
}

SweepSummary sweep_collapse(int samples, std::uint64_t base_seed) {
  SweepSummary s;
  s.suite = "collapse";
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = sample_seed(base_seed, i);
    Rng rng(seed);
    const int kind = rng.integer(0, 2);
    const MetricGraph g = kind == 0   ? random_unit_theta(rng, 4)
                          : kind == 1 ? random_unit_barbell_with_loops(rng, 1, 2)
                                      : random_unit_barbell_with_loops(rng, 2, 1);
    PairId e = -1;
    for (PairId p = 0; p < g.graph.num_pairs(); ++p) {
      if (g.graph.is_loop(p)) continue;
      if (e < 0 || g.lengths[p] < g.lengths[e]) e = p;
    }
    const DerivedGraph collapsed = collapse_edge(g.graph, g.lengths, e);
    std::vector<BoundReport> all;
    for (const auto& sel : proper_subgraphs(collapsed.graph)) {
      all.push_back(check_collapse_inequality(g.graph, g.lengths, e, sel));
    }
    tally(s, seed, worst_of(std::move(all)));
  }
  return s;
}

SweepSummary sweep_assembly(int samples, std::uint64_t base_seed) {
  SweepSummary s;
  s.suite = "assembly";
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = sample_seed(base_seed, i);
    Rng rng(seed);
    const int lv = rng.integer(1, 2);
    const int lw = 3 - lv;
    // Loops spread over a wide range so that the short-loop case occurs.
    std::vector<double> lens = random_lengths(rng, lv + lw, -3.0, 1.0);
    const double longest = *std::max_element(lens.begin(), lens.end());
    lens.push_back(4.0 * longest * std::exp(rng.uniform(0.0, 1.0)));
    MetricGraph b = make_barbell_with_loops(lv, lw, lens);
    b.lengths = normalize_unit(b.graph, b.lengths);
    const PairId bridge = b.graph.num_pairs() - 1;
    const PairId g1 = pick(rng, loops_at(b.graph, 0));
    const PairId g2 = pick(rng, loops_at(b.graph, 1));
    tally(s, seed, check_final_assembly(b.graph, b.lengths, bridge, g1, g2));
  }
  return s;
}

SweepSummary sweep_rose_floor(int samples, std::uint64_t base_seed, int min_petals,
                              int max_petals) {
  SweepSummary s;
  s.suite = "rose_floor";
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = sample_seed(base_seed, i);
    Rng rng(seed);
    const MetricGraph rose = random_unit_rose(rng, rng.integer(min_petals, max_petals));
    tally(s, seed, check_rose_floor(rose.graph, rose.lengths));
  }
  return s;
}

void write_sweep_csv_header(std::ostream& out) {
  out << "check_name,seed,lhs,rhs,margin,satisfied\n";
}

void write_sweep_csv_rows(std::ostream& out, const SweepSummary& summary) {
  char buf[256];
  for (const auto& row : summary.rows) {
    const auto& r = row.report;
    std::snprintf(buf, sizeof buf, "%s,%llu,%.17g,%.17g,%.17g,%d\n", r.name.c_str(),
                  static_cast<unsigned long long>(row.seed), r.lhs, r.rhs, r.margin,
                  r.satisfied ? 1 : 0);
    out << buf;
  }
}

}  // namespace graphent
