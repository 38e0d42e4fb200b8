#include "graphent/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "graphent/error.hpp"
#include "graphent/spectral.hpp"

namespace graphent {

namespace {

constexpr double kTieTolerance = 1e-12;

void check_unit(const Graph& g, const LengthFunction& lengths) {
  if (static_cast<int>(lengths.size()) != g.num_pairs()) {
    throw InvalidInput("length function size does not match edge count");
  }
  if (!is_unit_entropy(g, lengths)) throw InvalidInput("length function does not have unit entropy");
}

void pick_best(SupResult& out) {
  out.value = 0.0;
  for (const auto& [sel, h] : out.per_subgraph) out.value = std::max(out.value, h);
  std::uint64_t best_mask = std::numeric_limits<std::uint64_t>::max();
  for (const auto& [sel, h] : out.per_subgraph) {
    if (h >= out.value - kTieTolerance && sel.mask() < best_mask) {
      best_mask = sel.mask();
      out.best_subgraph = sel;
    }
  }
}

}  // namespace

SupResult entropy_sup(const Graph& g, const LengthFunction& unit_lengths) {
  if (g.num_pairs() > kExhaustiveSupGuard) {
    throw InvalidInput("exhaustive subgraph search is limited to 20 edges");
  }
  check_unit(g, unit_lengths);
  SupResult out;
  for (auto& sel : proper_subgraphs(g)) {
    const DerivedGraph sub = delete_edges(g, unit_lengths, sel);
    const double h = entropy(sub.graph, sub.lengths);
    out.per_subgraph.emplace_back(std::move(sel), h);
  }
  pick_best(out);
  return out;
}

SupResult entropy_sup_maximal(const Graph& g, const LengthFunction& lengths) {
  if (static_cast<int>(lengths.size()) != g.num_pairs()) {
    throw InvalidInput("length function size does not match edge count");
  }
  SupResult out;
  if (g.num_pairs() < 2) return out;
  std::vector<PairId> all(g.num_pairs());
  std::iota(all.begin(), all.end(), 0);
  for (PairId p = 0; p < g.num_pairs(); ++p) {
    std::vector<PairId> kept;
    for (PairId q : all) {
      if (q != p) kept.push_back(q);
    }
    SubgraphSelection sel = make_selection(g, std::move(kept));
    const DerivedGraph sub = delete_pair(g, lengths, p);
    out.per_subgraph.emplace_back(std::move(sel), entropy(sub.graph, sub.lengths));
  }
  pick_best(out);
  return out;
}

namespace {

using Point = std::vector<double>;

LengthFunction lengths_from_log(const Point& x) {
  std::vector<double> lens(x.size() + 1, 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) lens[i] = std::exp(x[i]);
  return LengthFunction(std::move(lens));
}

double diameter(const std::vector<Point>& simplex, std::size_t best) {
  double d = 0.0;
  for (const auto& p : simplex) {
    for (std::size_t i = 0; i < p.size(); ++i) d = std::max(d, std::abs(p[i] - simplex[best][i]));
  }
  return d;
}

struct RestartResult {
  Point best;
  double value = 0.0;
  bool converged = false;
};

template <class F>
RestartResult nelder_mead(F&& f, Point start, const OptimizerConfig& config, int restart,
                          double& global_best, std::vector<TraceRow>& trace) {
  const std::size_t n = start.size();
  std::vector<Point> simplex{start};
  for (std::size_t i = 0; i < n; ++i) {
    Point p = start;
    p[i] += config.initial_step;
    simplex.push_back(std::move(p));
  }
  std::vector<double> values;
  for (const auto& p : simplex) values.push_back(f(p));

  auto combine = [n](const Point& a, const Point& b, double t) {
    Point out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  std::vector<std::size_t> order(n + 1);
  RestartResult result;
  for (int it = 0;; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t lo = order.front();
    const std::size_t hi = order.back();
    const std::size_t second = order[n - 1];
    const double diam = diameter(simplex, lo);
    global_best = std::min(global_best, values[lo]);
    trace.push_back({restart, it, global_best, diam});
    if (diam < config.diameter_tolerance) {
      result.converged = true;
      break;
    }
    if (it >= config.max_iterations) break;

    Point centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == hi) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i] / static_cast<double>(n);
    }
    const Point reflected = combine(centroid, simplex[hi], -1.0);
    const double fr = f(reflected);
    if (fr < values[lo]) {
      const Point expanded = combine(centroid, simplex[hi], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[hi] = expanded;
        values[hi] = fe;
      } else {
        simplex[hi] = reflected;
        values[hi] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[hi] = reflected;
      values[hi] = fr;
      continue;
    }
    const bool outside = fr < values[hi];
    const Point contracted = combine(centroid, outside ? reflected : simplex[hi], 0.5);
    const double fc = f(contracted);
    if (fc < (outside ? fr : values[hi])) {
      simplex[hi] = contracted;
      values[hi] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == lo) continue;
      simplex[k] = combine(simplex[lo], simplex[k], 0.5);
      values[k] = f(simplex[k]);
    }
  }
  result.best = simplex[order.front()];
  result.value = values[order.front()];
  return result;
}

}  // namespace

InfEstimate minimize_entropy_sup(const Graph& g, const OptimizerConfig& config) {
  if (rank(g) < 3) throw InvalidInput("minimisation needs rank >= 3");
  if (config.restarts < 1) throw InvalidInput("at least one restart is required");
  const std::size_t dim = static_cast<std::size_t>(g.num_pairs()) - 1;
  auto objective = [&](const Point& x) {
    const LengthFunction unit = normalize_unit(g, lengths_from_log(x));
    return entropy_sup_maximal(g, unit).value;
  };

  InfEstimate out;
  double global_best = std::numeric_limits<double>::infinity();
  RestartResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < config.restarts; ++r) {
    Point start(dim, 0.0);
    if (r > 0) {
      Rng rng(sample_seed(config.seed, static_cast<std::uint64_t>(r)));
      std::vector<double> w(dim + 1);
      for (auto& x : w) x = rng.exponential();
      for (std::size_t i = 0; i < dim; ++i) start[i] = std::log(w[i]) - std::log(w[dim]);
    }
    RestartResult res = nelder_mead(objective, std::move(start), config, r, global_best,
                                    out.optimizer_trace);
    if (res.value < best.value) best = std::move(res);
  }
  out.argmin_lengths = normalize_unit(g, lengths_from_log(best.best));
  out.value = entropy_sup_maximal(g, out.argmin_lengths).value;
  out.converged = best.converged;
  return out;
}

RankEstimate entropy_rank_estimate(const std::vector<Graph>& catalog, const OptimizerConfig& config) {
  if (catalog.empty()) throw InvalidInput("catalog is empty");
  const int r = rank(catalog.front());
  for (const auto& g : catalog) {
    if (rank(g) != r) throw InvalidInput("catalog graphs have different ranks");
  }
  RankEstimate out;
  out.overall_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    out.per_graph.push_back(minimize_entropy_sup(catalog[i], config));
    if (out.per_graph.back().value < out.overall_min) {
      out.overall_min = out.per_graph.back().value;
      out.argmin_index = i;
    }
  }
  return out;
}

void write_optimizer_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "restart,iteration,objective,simplex_diameter\n";
  char buf[128];
  for (const auto& row : trace) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", row.restart, row.iteration, row.objective,
                  row.simplex_diameter);
    out << buf;
  }
}

}  // namespace graphent
