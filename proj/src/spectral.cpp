#include "graphent/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "graphent/error.hpp"

namespace graphent {

namespace {

constexpr double kRootRelTol = 1e-14;
constexpr int kMaxBracketSteps = 1100;
constexpr double kUnitCheckTol = 1e-8;

struct PowerResult {
  Eigen::VectorXd x;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Shifted power iteration x ← (A + cI)x with c tracking half the current
// upper Collatz–Wielandt bound; the shift makes periodic blocks primitive
// without changing the Perron vector.
PowerResult power_iterate(const EdgeMatrix& a, const PowerIterationOptions& opt) {
  const Eigen::Index n = a.rows();
  PowerResult r;
  r.x = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd y(n);
  for (int k = 1; k <= opt.max_iterations; ++k) {
    y.noalias() = a * r.x;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double q = y[i] / r.x[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    r.lo = lo;
    r.hi = hi;
    r.iterations = k;
    if (hi - lo <= opt.relative_tolerance * hi) {
      r.converged = true;
      return r;
    }
    r.x = y + (0.5 * hi) * r.x;
    r.x /= r.x.maxCoeff();
  }
  return r;
}

// Dense fallback: the Perron root of a non-negative irreducible matrix is the
// eigenvalue of largest real part.
Eigen::VectorXd dense_perron_vector(const EdgeMatrix& a, double* eigenvalue) {
  Eigen::EigenSolver<EdgeMatrix> es(a, true);
  const auto& vals = es.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < vals.size(); ++i) {
    if (vals[i].real() > vals[best].real()) best = i;
  }
  if (eigenvalue) *eigenvalue = vals[best].real();
  Eigen::VectorXcd vec = es.eigenvectors().col(best);
  Eigen::Index pivot = 0;
  vec.cwiseAbs().maxCoeff(&pivot);
  vec /= vec[pivot];
  Eigen::VectorXd out = vec.real().cwiseAbs();
  return out;
}

double dense_radius(const EdgeMatrix& a) {
  Eigen::EigenSolver<EdgeMatrix> es(a, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Tarjan's algorithm on the support of m; returns component id per index.
std::vector<int> strong_components(const EdgeMatrix& m, int* count) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int next_index = 0;
  int next_comp = 0;
  // Explicit call stack of (vertex, next neighbour to try).
  std::vector<std::pair<int, int>> calls;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    calls.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      auto& [v, j] = calls.back();
      if (j < n) {
        const int w = j++;
        if (m(v, w) == 0.0) continue;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const int done = v;
      calls.pop_back();
      if (!calls.empty()) {
        const int parent = calls.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != done);
        ++next_comp;
      }
    }
  }
  if (count) *count = next_comp;
  return comp;
}

EdgeMatrix build_weighted(const Graph& g, std::span<const double> pair_lengths) {
  if (static_cast<int>(pair_lengths.size()) != g.num_pairs()) {
    throw InvalidInput("length vector size does not match edge count");
  }
  const int n = g.num_edges();
  EdgeMatrix m = EdgeMatrix::Zero(n, n);
  for (EdgeId e = 0; e < n; ++e) {
    const double w = std::exp(-pair_lengths[pair_of(e)]);
    for (EdgeId f : g.out_edges(g.terminus(e))) {
      if (f != reverse(e)) m(e, f) = w;
    }
  }
  return m;
}

void require_sizes(const Graph& g, std::span<const double> a, std::span<const double> b) {
  if (static_cast<int>(a.size()) != g.num_pairs() || static_cast<int>(b.size()) != g.num_pairs()) {
    throw InvalidInput("length vector size does not match edge count");
  }
}

bool has_irreducible_matrix(const Graph& g) {
  if (g.num_components() != 1 || rank(g) < 2) return false;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.valence(v) < 2) return false;
  }
  return true;
}

}  // namespace

EdgeMatrix adjacency_matrix(const Graph& g) {
  const int n = g.num_edges();
  EdgeMatrix m = EdgeMatrix::Zero(n, n);
  for (EdgeId e = 0; e < n; ++e) {
    for (EdgeId f : g.out_edges(g.terminus(e))) {
      if (f != reverse(e)) m(e, f) = 1.0;
    }
  }
  return m;
}

EdgeMatrix weighted_matrix(const Graph& g, const LengthFunction& lengths) {
  return build_weighted(g, lengths.values());
}

EdgeMatrix weighted_matrix(const Graph& g, std::span<const double> pair_lengths) {
  return build_weighted(g, pair_lengths);
}

bool is_irreducible(const EdgeMatrix& m) {
  if (m.rows() == 0) return false;
  if (m.rows() == 1) return m(0, 0) > 0.0;
  int count = 0;
  strong_components(m, &count);
  return count == 1;
}

SpectralRadiusResult spectral_radius_detailed(const EdgeMatrix& m,
                                              const PowerIterationOptions& options) {
  if (m.rows() != m.cols()) throw InvalidInput("spectral radius needs a square matrix");
  if ((m.array() < 0.0).any()) throw InvalidInput("spectral radius needs a non-negative matrix");
  SpectralRadiusResult out;
  if (m.rows() == 0) return out;
  int count = 0;
  const auto comp = strong_components(m, &count);
  for (int c = 0; c < count; ++c) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (comp[i] == c) idx.push_back(i);
    }
    if (idx.size() == 1) {
      out.value = std::max(out.value, m(idx[0], idx[0]));
      continue;
    }
    EdgeMatrix block = m(idx, idx);
    PowerResult r = power_iterate(block, options);
    out.iterations = std::max(out.iterations, r.iterations);
    if (r.converged) {
      out.value = std::max(out.value, 0.5 * (r.lo + r.hi));
    } else {
      out.used_dense_fallback = true;
      out.value = std::max(out.value, dense_radius(block));
    }
  }
  return out;
}

double spectral_radius(const EdgeMatrix& m, const PowerIterationOptions& options) {
  return spectral_radius_detailed(m, options).value;
}

PerronPair perron_vectors(const EdgeMatrix& m, const PowerIterationOptions& options) {
  if (m.rows() != m.cols() || m.rows() == 0) throw InvalidInput("Perron vectors need a square matrix");
  PerronPair out;
  PowerResult right = power_iterate(m, options);
  if (right.converged) {
    out.v = right.x;
    out.eigenvalue = 0.5 * (right.lo + right.hi);
  } else {
    out.v = dense_perron_vector(m, &out.eigenvalue);
  }
  const EdgeMatrix mt = m.transpose();
  PowerResult left = power_iterate(mt, options);
  out.u = left.converged ? left.x : dense_perron_vector(mt, nullptr);
  out.v /= out.v.sum();
  out.u /= out.u.dot(out.v);
  return out;
}

bool radius_below_one(const Graph& g, std::span<const double> pair_lengths) {
  if (static_cast<int>(pair_lengths.size()) != g.num_pairs()) {
    throw InvalidInput("length vector size does not match edge count");
  }
  const int n = g.num_edges();
  // M = I − A with the diagonal of loop self-transitions formed as −expm1(−ℓ).
  EdgeMatrix m = EdgeMatrix::Identity(n, n);
  for (EdgeId e = 0; e < n; ++e) {
    const double len = pair_lengths[pair_of(e)];
    const double w = std::exp(-len);
    for (EdgeId f : g.out_edges(g.terminus(e))) {
      if (f == reverse(e)) continue;
      if (f == e) {
        m(e, e) = -std::expm1(-len);
      } else {
        m(e, f) = -w;
      }
    }
  }
  // Eliminate the well-separated states first so small loop deficits are
  // only combined with each other at the end.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return m(a, a) > m(b, b); });
  EdgeMatrix p = m(order, order);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double pivot = p(k, k);
    if (!(pivot > 0.0)) return false;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = p(i, k);
      if (f == 0.0) continue;
      const double scale = f / pivot;
      p.row(i).tail(n - k - 1) -= scale * p.row(k).tail(n - k - 1);
    }
  }
  return true;
}

double solve_unit_radius(const Graph& g, std::span<const double> fixed,
                         std::span<const double> scaled, double lo_hint, double hi_hint) {
  require_sizes(g, fixed, scaled);
  const int pairs = g.num_pairs();
  std::vector<double> len(pairs);
  auto lengths_at = [&](double lambda) -> std::span<const double> {
    for (int p = 0; p < pairs; ++p) len[p] = fixed[p] + lambda * scaled[p];
    return len;
  };
  auto below = [&](double lambda) { return radius_below_one(g, lengths_at(lambda)); };

  double lo = 0.0;
  double hi = 0.0;
  if (lo_hint > 0.0 && hi_hint > lo_hint && !below(lo_hint) && below(hi_hint)) {
    lo = lo_hint;
    hi = hi_hint;
  } else {
    const double start = lo_hint > 0.0 ? lo_hint : (hi_hint > 0.0 ? hi_hint : 1.0);
    int steps = 0;
    if (below(start)) {
      hi = start;
      lo = 0.5 * start;
      while (below(lo)) {
        hi = lo;
        lo *= 0.5;
        if (++steps > kMaxBracketSteps || lo == 0.0) {
          throw ConvergenceError("no scale with spectral radius above 1");
        }
      }
    } else {
      lo = start;
      hi = 2.0 * start;
      while (!below(hi)) {
        lo = hi;
        hi *= 2.0;
        if (++steps > kMaxBracketSteps || !std::isfinite(hi)) {
          throw ConvergenceError("no scale with spectral radius below 1");
        }
      }
    }
  }

  // log ρ is convex and decreasing in λ, so Newton steps taken from the left
  // end of the bracket stay on the left of the root. The M-matrix test keeps
  // the bracket honest; bisection takes over whenever Newton stalls.
  bool use_newton = true;
  for (int it = 0; it < 400 && hi - lo > kRootRelTol * hi; ++it) {
    const double width = hi - lo;
    double candidate = 0.5 * (lo + hi);
    double step = 0.0;
    if (use_newton) {
      const PerronPair pp = perron_vectors(weighted_matrix(g, lengths_at(lo)));
      const double f = std::log(pp.eigenvalue);
      double df = 0.0;
      for (EdgeId e = 0; e < g.num_edges(); ++e) df -= scaled[pair_of(e)] * pp.u[e] * pp.v[e];
      if (df < 0.0 && std::isfinite(f)) {
        const double next = lo - f / df;
        if (next > lo && next < hi) {
          candidate = next;
          step = next - lo;
        }
      }
    }
    if (below(candidate)) {
      hi = candidate;
    } else {
      lo = candidate;
      if (step > 0.0) {
        const double probe = candidate + std::max(2.0 * step, 4e-16 * candidate);
        if (probe < hi && below(probe)) hi = probe;
      }
    }
    use_newton = hi - lo <= 0.5 * width;
  }
  return 0.5 * (lo + hi);
}

double entropy_irreducible(const Graph& g, const LengthFunction& lengths) {
  if (static_cast<int>(lengths.size()) != g.num_pairs()) {
    throw InvalidInput("length function size does not match edge count");
  }
  // A row-sum estimate of the Perron root of A_G seeds the bracket.
  double mean = 0.0;
  for (double x : lengths.values()) mean += x;
  mean /= static_cast<double>(lengths.size());
  double branching = 0.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) branching += g.valence(v) * (g.valence(v) - 1);
  branching /= g.num_edges();
  const double hint = branching > 1.0 ? std::log(branching) / mean : 1.0 / mean;
  const std::vector<double> zero(g.num_pairs(), 0.0);
  return solve_unit_radius(g, zero, lengths.values(), hint, 0.0);
}

double entropy(const Graph& g, const LengthFunction& lengths) {
  if (static_cast<int>(lengths.size()) != g.num_pairs()) {
    throw InvalidInput("length function size does not match edge count");
  }
  double best = 0.0;
  const int components = g.num_components();
  for (int c = 0; c < components; ++c) {
    DerivedGraph core = component_core(g, lengths, c);
    if (core.graph.num_pairs() == 0 || rank(core.graph) < 2) continue;
    best = std::max(best, entropy_irreducible(core.graph, core.lengths));
  }
  return best;
}

bool is_unit_entropy(const Graph& g, const LengthFunction& lengths, double tol) {
  return std::abs(entropy(g, lengths) - 1.0) <= tol;
}

LengthFunction normalize_unit(const Graph& g, const LengthFunction& lengths) {
  const double h = entropy(g, lengths);
  if (!(h > 0.0)) throw InvalidInput("entropy is zero (every component has rank <= 1)");
  return lengths.scaled(h);
}

PerronPair perron_pair(const Graph& g, const LengthFunction& lengths) {
  if (static_cast<int>(lengths.size()) != g.num_pairs()) {
    throw InvalidInput("length function size does not match edge count");
  }
  if (g.num_components() != 1) throw InvalidInput("Perron pair needs a connected graph");
  if (!has_irreducible_matrix(g)) {
    throw InvalidInput("Perron pair needs rank >= 2 and no valence-1 vertices");
  }
  PerronPair pp = perron_vectors(weighted_matrix(g, lengths));
  if (std::abs(pp.eigenvalue - 1.0) > kUnitCheckTol) {
    throw InvalidInput("length function does not have unit entropy");
  }
  return pp;
}

EquilibriumMeasure equilibrium_measure(const PerronPair& pair) {
  EquilibriumMeasure m;
  m.mu.resize(pair.u.size());
  for (Eigen::Index i = 0; i < pair.u.size(); ++i) m.mu[i] = pair.u[i] * pair.v[i];
  return m;
}

EquilibriumMeasure equilibrium_measure(const Graph& g, const LengthFunction& lengths) {
  return equilibrium_measure(perron_pair(g, lengths));
}

double F_value(const Graph& g, std::span<const double> pair_lengths) {
  const EdgeMatrix a = build_weighted(g, pair_lengths);
  const EdgeMatrix m = EdgeMatrix::Identity(a.rows(), a.cols()) - a;
  return m.partialPivLu().determinant();
}

double F_value(const Graph& g, const LengthFunction& lengths) {
  return F_value(g, std::span<const double>(lengths.values()));
}

std::vector<double> grad_F_fd(const Graph& g, const LengthFunction& lengths, double h) {
  if (!(h > 0.0)) throw InvalidInput("finite-difference step must be positive");
  std::vector<double> x = lengths.values();
  std::vector<double> grad(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (x[p] <= h) throw InvalidInput("finite-difference step exceeds an edge length");
    const double saved = x[p];
    x[p] = saved + h;
    const double up = F_value(g, x);
    x[p] = saved - h;
    const double down = F_value(g, x);
    x[p] = saved;
    grad[p] = (up - down) / (2.0 * h);
  }
  return grad;
}

void write_matrix_csv(std::ostream& out, const EdgeMatrix& m) {
  out << "edge";
  for (Eigen::Index j = 0; j < m.cols(); ++j) out << ',' << j;
  out << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace graphent
