#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphent/graph.hpp"
#include "graphent/random.hpp"

namespace graphent {

/// Outcome of one inequality check. `margin` is oriented so that a positive
/// value means the inequality holds with room: lhs − rhs for lower bounds on
/// lhs, rhs − lhs for upper bounds.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double margin = 0.0;
  std::string context;
  /// Precondition not met; nothing was checked.
  bool skipped = false;
};

/// −log((1 − e^{−x}) / (1 + 3e^{−x})): the second petal length that puts
/// (x, ·) on the unit-entropy curve of the 2-rose.
double r2_curve(double x);

/// h_{B₂}(a, b, c) ≥ h_{R₂}(a, b + 2c), to within 1e−10.
BoundReport check_rose_barbell(double a, double b, double c);

/// h_{B₂}(3e^{−c/2}, c/4, c) ≥ 1/5, to within 1e−10.
BoundReport check_barbell_floor(double c);

/// Strict: e^{ℓ(e_i)}μ(e_i) < 4e^{ℓ(e_k)}μ(e_k) on a unit rose.
BoundReport check_rose_estimate(const Graph& rose, const LengthFunction& unit_lengths, PairId i,
                                PairId k);

/// e^{ℓ(e)}μ(e) ≤ 2e^{ℓ(γ₁)+ℓ(γ₂)}(μ(γ₁) + μ(γ₂)) with 1e−12 relative slack,
/// for a non-loop e with loops γ₁ at o(e) and γ₂ at t(e).
BoundReport check_nonloop_estimate(const Graph& g, const LengthFunction& unit_lengths, PairId e,
                                   PairId gamma1, PairId gamma2);

/// 1/5 for 3 ≤ r < 29, 1 − 4/log(2r − 3) from 29 on.
double rose_floor(int r);

/// entropy_sup of a unit rose against rose_floor(r), to within 1e−9.
BoundReport check_rose_floor(const Graph& rose, const LengthFunction& unit_lengths);

/// With H the preimage of `collapsed_selection` (a proper subgraph of G / e)
/// together with e: h_H ≤ h_{H′} ≤ 2h_H, to within 1e−10. Skipped unless
/// ℓ(e) ≤ ℓ(e′) for every e′ in H. lhs is h_{H′}, rhs is 2h_H, and margin is
/// the smaller of the two slacks.
BoundReport check_collapse_inequality(const Graph& g, const LengthFunction& lengths, PairId e,
                                      const SubgraphSelection& collapsed_selection);

/// Entropy of the barbell spanned by e, γ₁ and γ₂ with the restricted lengths.
double sub_barbell_entropy(const Graph& g, const LengthFunction& lengths, PairId e, PairId gamma1,
                           PairId gamma2);

/// h_{G−e} ≥ 1 − 2e^{−ℓ(e)/2}/m with m = min(ℓ(γ₁), ℓ(γ₂)), and when
/// m ≤ 3e^{−ℓ(e)/2} also that the sub-barbell has entropy ≥ 1/5. Requires a
/// unit ℓ and ℓ(γ_j) ≤ ℓ(e)/4.
BoundReport check_final_assembly(const Graph& g, const LengthFunction& unit_lengths, PairId e,
                                 PairId gamma1, PairId gamma2);

struct SweepRow {
  std::uint64_t seed = 0;
  BoundReport report;
};

struct SweepSummary {
  std::string suite;
  std::vector<SweepRow> rows;
  int violations = 0;
  int skipped = 0;
  double min_margin = 0.0;  // over checked rows; 0 when there are none
};

/// Randomised sweeps. Sample i uses seed base ⊕ i.
SweepSummary sweep_rose_estimate(int samples, std::uint64_t base_seed);
SweepSummary sweep_nonloop_estimate(int samples, std::uint64_t base_seed);
SweepSummary sweep_rose_barbell(int samples, std::uint64_t base_seed);
/// Log-spaced grid of c over [10⁻³, 10²]; deterministic.
SweepSummary sweep_barbell_floor(int points);
SweepSummary sweep_collapse(int samples, std::uint64_t base_seed);
SweepSummary sweep_assembly(int samples, std::uint64_t base_seed);
SweepSummary sweep_rose_floor(int samples, std::uint64_t base_seed, int min_petals,
                              int max_petals);

/// Columns check_name, seed, lhs, rhs, margin, satisfied; skipped rows are
/// left out.
void write_sweep_csv_header(std::ostream& out);
void write_sweep_csv_rows(std::ostream& out, const SweepSummary& summary);

}  // namespace graphent
