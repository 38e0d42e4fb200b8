#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "graphent/graph.hpp"
#include "graphent/random.hpp"

namespace graphent {

inline constexpr int kExhaustiveSupGuard = 20;

struct SupResult {
  double value = 0.0;
  SubgraphSelection best_subgraph;
  /// Every evaluated subgraph with its entropy under the restricted lengths.
  std::vector<std::pair<SubgraphSelection, double>> per_subgraph;
};

/// Maximum entropy over all proper subgraphs, lengths restricted but not
/// renormalised. Ties go to the smallest selection bitmask. Requires a unit ℓ
/// and |E₊| ≤ 20.
SupResult entropy_sup(const Graph& g, const LengthFunction& unit_lengths);

/// Same value via the maximal proper subgraphs G − e only. Entropy is
/// monotone under inclusion, so this agrees with the exhaustive maximum; it
/// has no size guard and does not check unit entropy.
SupResult entropy_sup_maximal(const Graph& g, const LengthFunction& lengths);

struct OptimizerConfig {
  int restarts = 20;
  std::uint64_t seed = kDefaultSeed;
  int max_iterations = 4000;
  /// Converged when every simplex vertex is within this of the best vertex
  /// in log-length coordinates.
  double diameter_tolerance = 1e-7;
  double initial_step = 0.3;
};

struct TraceRow {
  int restart = 0;
  int iteration = 0;
  double objective = 0.0;  // best value found so far, over all restarts
  double simplex_diameter = 0.0;
};

struct InfEstimate {
  double value = 0.0;
  LengthFunction argmin_lengths;
  std::vector<TraceRow> optimizer_trace;
  bool converged = false;
};

/// Nelder–Mead on ℓ ↦ entropy_sup(normalize_unit(ℓ)) in log-length
/// coordinates with the last coordinate pinned to 0. Restart 0 starts at the
/// uniform point, the rest at Dirichlet(1) draws. Requires rank ≥ 3.
InfEstimate minimize_entropy_sup(const Graph& g, const OptimizerConfig& config = {});

struct RankEstimate {
  std::vector<InfEstimate> per_graph;
  double overall_min = 0.0;
  std::size_t argmin_index = 0;
};

RankEstimate entropy_rank_estimate(const std::vector<Graph>& catalog,
                                   const OptimizerConfig& config = {});

/// Columns restart, iteration, objective, simplex_diameter with a header row.
void write_optimizer_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace graphent
