#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "graphent/graph.hpp"

namespace graphent {

/// Dense square matrix indexed by directed edge ids.
using EdgeMatrix = Eigen::MatrixXd;

/// Non-backtracking transition matrix A_G: entry (e, e') is 1 iff
/// terminus(e) = origin(e') and e' ≠ ē.
EdgeMatrix adjacency_matrix(const Graph& g);

/// A_{G,ℓ}: row e of A_G scaled by exp(−ℓ(e)).
EdgeMatrix weighted_matrix(const Graph& g, const LengthFunction& lengths);
EdgeMatrix weighted_matrix(const Graph& g, std::span<const double> pair_lengths);

struct PowerIterationOptions {
  /// Stop when the Collatz–Wielandt bounds agree to this relative gap.
  double relative_tolerance = 1e-12;
  int max_iterations = 100'000;
};

struct SpectralRadiusResult {
  double value = 0.0;
  int iterations = 0;
  bool used_dense_fallback = false;
};

/// Largest eigenvalue modulus of a non-negative matrix. Irreducible blocks
/// (strongly connected components of the support) are handled by shifted
/// power iteration; a block that does not converge within the cap goes to a
/// dense eigensolver.
SpectralRadiusResult spectral_radius_detailed(const EdgeMatrix& m,
                                              const PowerIterationOptions& options = {});
double spectral_radius(const EdgeMatrix& m, const PowerIterationOptions& options = {});

bool is_irreducible(const EdgeMatrix& m);

struct PerronPair {
  Eigen::VectorXd u;  // left:  uᵀA = λuᵀ
  Eigen::VectorXd v;  // right: Av = λv
  double eigenvalue = 0.0;
};

/// Perron root and vectors of an irreducible non-negative matrix, scaled so
/// that ‖v‖₁ = 1 and uᵀv = 1.
PerronPair perron_vectors(const EdgeMatrix& m, const PowerIterationOptions& options = {});

/// True iff ρ(A_{G,ℓ}) < 1, decided by checking that I − A is a nonsingular
/// M-matrix. Loop self-transitions use 1 − exp(−ℓ) evaluated with expm1, so
/// the test stays meaningful when exp(−ℓ) rounds to 1.
bool radius_below_one(const Graph& g, std::span<const double> pair_lengths);

/// Solves ρ(A_{G, fixed + λ·scaled}) = 1 for λ > 0. `g` must have an
/// irreducible transition matrix and the radius must decrease through 1 as λ
/// grows. `lo_hint`/`hi_hint` are used when they bracket the root.
double solve_unit_radius(const Graph& g, std::span<const double> fixed,
                         std::span<const double> scaled, double lo_hint = 0.0,
                         double hi_hint = 0.0);

/// Exponential growth rate of circuit counts. Components of rank ≤ 1 count
/// as 0; a disconnected graph takes the maximum over its components.
double entropy(const Graph& g, const LengthFunction& lengths);

/// Entropy of a single-component graph whose transition matrix is
/// irreducible (no valence-1 vertices, rank ≥ 2). Skips the component split.
double entropy_irreducible(const Graph& g, const LengthFunction& lengths);

/// |entropy − 1| ≤ tol.
bool is_unit_entropy(const Graph& g, const LengthFunction& lengths, double tol = 1e-8);

/// Rescales ℓ to unit entropy. Throws InvalidInput when the entropy is 0.
LengthFunction normalize_unit(const Graph& g, const LengthFunction& lengths);

/// Normalised Perron pair of A_{G,ℓ} for a unit-entropy ℓ (checked as
/// |ρ − 1| ≤ 1e−8). Requires a connected graph with irreducible matrix.
PerronPair perron_pair(const Graph& g, const LengthFunction& lengths);

struct EquilibriumMeasure {
  std::vector<double> mu;  // per directed edge, sums to 1

  double of_edge(EdgeId e) const { return mu[e]; }
  /// μ(e) + μ(ē) for pair p.
  double pair_total(PairId p) const { return mu[positive_edge(p)] + mu[reverse(positive_edge(p))]; }
};

EquilibriumMeasure equilibrium_measure(const Graph& g, const LengthFunction& lengths);
EquilibriumMeasure equilibrium_measure(const PerronPair& pair);

/// det(I − A_{G,ℓ}) by LU with partial pivoting.
double F_value(const Graph& g, const LengthFunction& lengths);
double F_value(const Graph& g, std::span<const double> pair_lengths);

/// Central differences of F_value in each E₊ coordinate.
std::vector<double> grad_F_fd(const Graph& g, const LengthFunction& lengths, double h = 1e-6);

/// CSV with a header row of directed edge ids and one labelled row per edge.
void write_matrix_csv(std::ostream& out, const EdgeMatrix& m);

}  // namespace graphent
