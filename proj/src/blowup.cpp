#include "graphent/blowup.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "graphent/error.hpp"
#include "graphent/spectral.hpp"

namespace graphent {

LinearBlowup::LinearBlowup(Graph g, LengthFunction unit_lengths, PairId edge)
    : graph_(std::move(g)), lengths_(std::move(unit_lengths)), edge_(edge) {
  if (static_cast<int>(lengths_.size()) != graph_.num_pairs()) {
    throw InvalidInput("length function size does not match edge count");
  }
  if (edge_ < 0 || edge_ >= graph_.num_pairs()) throw InvalidInput("edge out of range");
  if (graph_.num_components() != 1) throw InvalidInput("blow-up needs a connected graph");
  if (rank(graph_) < 3) throw InvalidInput("blow-up needs rank >= 3");
  // perron_pair checks the unit-entropy and irreducibility preconditions.
  perron_pair(graph_, lengths_);
  j_infinity_ = subgraph_entropy_direct(graph_, lengths_, edge_);
  scaled_ = lengths_.values();
  scaled_[edge_] = 0.0;
}

double LinearBlowup::j(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("blow-up time must be finite and >= 0");
  if (t == 0.0) return 1.0;
  std::vector<double> fixed(graph_.num_pairs(), 0.0);
  fixed[edge_] = lengths_[edge_] + t;
  return solve_unit_radius(graph_, fixed, scaled_, j_infinity_, 1.0);
}

LengthFunction LinearBlowup::psi(double t) const {
  const double scale = j(t);
  std::vector<double> out = lengths_.values();
  for (auto& x : out) x *= scale;
  out[edge_] = lengths_[edge_] + t;
  return LengthFunction(std::move(out));
}

LinearBlowup::Sample LinearBlowup::sample(double t) const {
  Sample s;
  s.t = t;
  s.j = j(t);
  std::vector<double> lens = lengths_.values();
  for (auto& x : lens) x *= s.j;
  lens[edge_] = lengths_[edge_] + t;
  const auto mu = equilibrium_measure(graph_, LengthFunction(std::move(lens)));
  s.mu_e = mu.of_edge(positive_edge(edge_));
  for (PairId q = 0; q < graph_.num_pairs(); ++q) {
    if (q != edge_) s.denom += lengths_[q] * mu.of_edge(positive_edge(q));
  }
  s.j_prime = -s.mu_e / s.denom;
  return s;
}

LengthFunction psi_t(const Graph& g, const LengthFunction& unit_lengths, PairId edge, double t) {
  return LinearBlowup(g, unit_lengths, edge).psi(t);
}

double j_prime(const Graph& g, const LengthFunction& unit_lengths, PairId edge, double t) {
  return LinearBlowup(g, unit_lengths, edge).sample(t).j_prime;
}

SubgraphIntegralResult subgraph_entropy_integral(const Graph& g, const LengthFunction& unit_lengths,
                                                 PairId edge,
                                                 const SubgraphIntegralOptions& options) {
  const LinearBlowup blowup(g, unit_lengths, edge);
  if (!(blowup.j_infinity() > 0.0)) {
    throw InvalidInput("G - e has no component of rank >= 2");
  }
  auto integrand = [&](double t) { return -blowup.sample(t).j_prime; };

  SubgraphIntegralResult out;
  double horizon = options.initial_horizon;
  auto piece = integrate_adaptive(integrand, 0.0, horizon, options.quadrature);
  out.integral = piece.value;
  out.evaluations = piece.evaluations;
  double j_at = blowup.j(horizon);
  for (;;) {
    const double next = 2.0 * horizon;
    if (next > options.max_horizon) {
      throw ConvergenceError("blow-up integral did not settle by the maximum horizon");
    }
    piece = integrate_adaptive(integrand, horizon, next, options.quadrature);
    out.integral += piece.value;
    out.evaluations += piece.evaluations;
    const double j_next = blowup.j(next);
    horizon = next;
    if (std::abs(j_at - j_next) < options.tail_tolerance) {
      out.tail_bound = std::abs(j_at - j_next);
      break;
    }
    j_at = j_next;
  }
  out.horizon = horizon;
  out.value = 1.0 - out.integral;
  return out;
}

double subgraph_entropy_direct(const Graph& g, const LengthFunction& lengths, PairId edge) {
  const DerivedGraph sub = delete_pair(g, lengths, edge);
  return entropy(sub.graph, sub.lengths);
}

BlowupTrace blowup_trace(const Graph& g, const LengthFunction& unit_lengths, PairId edge,
                         double horizon, int samples, bool log_spaced) {
  if (!(horizon > 0.0)) throw InvalidInput("trace horizon must be positive");
  if (samples < 2) throw InvalidInput("trace needs at least two samples");
  const LinearBlowup blowup(g, unit_lengths, edge);
  BlowupTrace trace;
  trace.edge = edge;
  trace.horizon = horizon;
  for (int i = 0; i < samples; ++i) {
    const double frac = static_cast<double>(i) / (samples - 1);
    // Log spacing on t + 1 keeps t = 0 as the first sample.
    const double t = log_spaced ? std::expm1(frac * std::log1p(horizon)) : frac * horizon;
    trace.samples.push_back(blowup.sample(i + 1 == samples ? horizon : t));
  }
  trace.tail_bound = 2.0 * std::abs(trace.samples.back().j_prime);
  return trace;
}

void write_trace_csv(std::ostream& out, const BlowupTrace& trace) {
  out << "t,j,j_prime,mu_e,denom\n";
  char buf[160];
  for (const auto& s : trace.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.j, s.j_prime, s.mu_e,
                  s.denom);
    out << buf;
  }
}

}  // namespace graphent
