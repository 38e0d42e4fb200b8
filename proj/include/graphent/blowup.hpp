#pragma once

#include <iosfwd>
#include <vector>

#include "graphent/graph.hpp"
#include "graphent/quadrature.hpp"

namespace graphent {

/// Linear time blow-up of a unit-entropy length function along one edge:
/// ψ_t(e) = ℓ(e) + t and ψ_t(e') = j(t)·ℓ(e') elsewhere, with j(t) chosen so
/// that ψ_t keeps unit entropy.
///
/// Requires a connected graph of rank ≥ 3 without valence-1 vertices and a
/// unit-entropy ℓ (checked to 1e−8).
class LinearBlowup {
 public:
  LinearBlowup(Graph g, LengthFunction unit_lengths, PairId edge);

  const Graph& graph() const noexcept { return graph_; }
  const LengthFunction& lengths() const noexcept { return lengths_; }
  PairId edge() const noexcept { return edge_; }

  /// lim j(t): the entropy of ℓ restricted to G − e.
  double j_infinity() const noexcept { return j_infinity_; }

  double j(double t) const;
  LengthFunction psi(double t) const;

  struct Sample {
    double t = 0.0;
    double j = 1.0;
    double j_prime = 0.0;
    double mu_e = 0.0;   // μ_t of the positive orientation of e
    double denom = 0.0;  // Σ over E₊ ∖ {e} of ℓ(e')·μ_t(e'), with the original ℓ
  };

  /// j′(t) = −μ_t(e) / Σ_{e'≠e} ℓ(e')μ_t(e'), where μ_t is the equilibrium
  /// measure of ψ_t.
  Sample sample(double t) const;

 private:
  Graph graph_;
  LengthFunction lengths_;
  PairId edge_;
  double j_infinity_ = 0.0;
  std::vector<double> scaled_;
};

LengthFunction psi_t(const Graph& g, const LengthFunction& unit_lengths, PairId edge, double t);
double j_prime(const Graph& g, const LengthFunction& unit_lengths, PairId edge, double t);

struct SubgraphIntegralOptions {
  AdaptiveQuadratureOptions quadrature{};
  double initial_horizon = 5.0;
  /// Doubling stops once |j(T) − j(2T)| drops below this.
  double tail_tolerance = 1e-8;
  double max_horizon = 200.0;
};

struct SubgraphIntegralResult {
  double value = 0.0;     // 1 − ∫₀^T |j′|
  double integral = 0.0;  // ∫₀^T |j′|
  double horizon = 0.0;   // final T
  double tail_bound = 0.0;
  long evaluations = 0;
};

/// Entropy of G − e from the integral of |j′| along the blow-up.
SubgraphIntegralResult subgraph_entropy_integral(const Graph& g, const LengthFunction& unit_lengths,
                                                 PairId edge,
                                                 const SubgraphIntegralOptions& options = {});

/// Entropy of G − e computed spectrally (maximum over components).
double subgraph_entropy_direct(const Graph& g, const LengthFunction& lengths, PairId edge);

struct BlowupTrace {
  PairId edge = 0;
  std::vector<LinearBlowup::Sample> samples;
  double horizon = 0.0;
  /// Envelope estimate of j(T) − j_∞, taken as 2|j′(T)| since the integrand
  /// decays like exp(−t).
  double tail_bound = 0.0;
};

BlowupTrace blowup_trace(const Graph& g, const LengthFunction& unit_lengths, PairId edge,
                         double horizon, int samples, bool log_spaced = false);

/// Columns t, j, j_prime, mu_e, denom with a header row.
void write_trace_csv(std::ostream& out, const BlowupTrace& trace);

}  // namespace graphent
