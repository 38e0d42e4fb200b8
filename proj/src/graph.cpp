#include "graphent/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "graphent/error.hpp"

namespace graphent {

namespace {

std::vector<std::string> numbered_labels(int n) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

// Builds the subgraph spanned by `kept` (pair ids of g, ascending), keeping
// only incident vertices in their original order.
DerivedGraph induced(const Graph& g, const LengthFunction& lengths,
                     const std::vector<PairId>& kept) {
  std::vector<int> new_id(g.num_vertices(), -1);
  for (PairId p : kept) {
    new_id[g.origin(positive_edge(p))] = 0;
    new_id[g.terminus(positive_edge(p))] = 0;
  }
  std::vector<std::string> vlabels;
  int next = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (new_id[v] == 0) {
      new_id[v] = next++;
      vlabels.push_back(g.vertex_label(v));
    }
  }
  std::vector<EdgeSpec> specs;
  std::vector<double> lens;
  std::vector<std::string> plabels;
  for (PairId p : kept) {
    specs.push_back({new_id[g.origin(positive_edge(p))], new_id[g.terminus(positive_edge(p))]});
    lens.push_back(lengths[p]);
    plabels.push_back(g.pair_label(p));
  }
  DerivedGraph out{build_graph(next, specs), LengthFunction(std::move(lens)), kept};
  out.graph.set_name(g.name());
  out.graph.set_vertex_labels(std::move(vlabels));
  out.graph.set_pair_labels(std::move(plabels));
  return out;
}

void check_pair(const Graph& g, PairId p) {
  if (p < 0 || p >= g.num_pairs()) {
    throw InvalidInput("edge pair " + std::to_string(p) + " out of range");
  }
}

void check_lengths(const Graph& g, const LengthFunction& lengths) {
  if (static_cast<int>(lengths.size()) != g.num_pairs()) {
    throw InvalidInput("length function size does not match edge count");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph

std::vector<int> Graph::component_labels() const {
  std::vector<int> label(num_vertices(), -1);
  int next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < num_vertices(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : out_[v]) {
        VertexId w = terminus(e);
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

int Graph::num_components() const {
  auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

void Graph::set_vertex_labels(std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != num_vertices()) {
    throw InvalidInput("vertex label count mismatch");
  }
  vertex_labels_ = std::move(labels);
}

void Graph::set_pair_labels(std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != num_pairs()) {
    throw InvalidInput("edge label count mismatch");
  }
  pair_labels_ = std::move(labels);
}

Graph build_graph(int num_vertices, std::span<const EdgeSpec> specs) {
  if (specs.empty()) throw InvalidInput("graph needs at least one edge");
  if (num_vertices <= 0) throw InvalidInput("graph needs at least one vertex");
  Graph g;
  g.out_.assign(num_vertices, {});
  for (const auto& s : specs) {
    if (s.origin < 0 || s.origin >= num_vertices || s.terminus < 0 ||
        s.terminus >= num_vertices) {
      throw InvalidInput("edge references undeclared vertex");
    }
    g.ends_.emplace_back(s.origin, s.terminus);
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) g.out_[g.origin(e)].push_back(e);
  g.vertex_labels_ = numbered_labels(num_vertices);
  g.pair_labels_ = numbered_labels(g.num_pairs());
  return g;
}

int rank(const Graph& g) { return g.num_pairs() - g.num_vertices() + g.num_components(); }

// ---------------------------------------------------------------------------
// LengthFunction, Circuit, SubgraphSelection

LengthFunction::LengthFunction(std::vector<double> per_pair) : values_(std::move(per_pair)) {
  for (double x : values_) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw InvalidInput("edge lengths must be finite and strictly positive");
    }
  }
}

LengthFunction LengthFunction::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& x : out) x *= factor;
  return LengthFunction(std::move(out));
}

double Circuit::length(const LengthFunction& lengths) const {
  double total = 0.0;
  for (EdgeId e : edges) total += lengths.of_edge(e);
  return total;
}

bool is_circuit(const Graph& g, const Circuit& c) {
  const auto n = c.edges.size();
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    EdgeId a = c.edges[i];
    EdgeId b = c.edges[(i + 1) % n];
    if (a < 0 || a >= g.num_edges()) return false;
    if (g.terminus(a) != g.origin(b) || b == reverse(a)) return false;
  }
  return true;
}

std::uint64_t SubgraphSelection::mask() const {
  std::uint64_t m = 0;
  for (PairId p : kept_pairs) {
    if (p >= 64) throw InvalidInput("selection mask needs pair ids below 64");
    m |= std::uint64_t{1} << p;
  }
  return m;
}

SubgraphSelection make_selection(const Graph& g, std::vector<PairId> kept_pairs) {
  std::sort(kept_pairs.begin(), kept_pairs.end());
  kept_pairs.erase(std::unique(kept_pairs.begin(), kept_pairs.end()), kept_pairs.end());
  std::vector<bool> hit(g.num_vertices(), false);
  for (PairId p : kept_pairs) {
    check_pair(g, p);
    hit[g.origin(positive_edge(p))] = true;
    hit[g.terminus(positive_edge(p))] = true;
  }
  SubgraphSelection sel{std::move(kept_pairs), {}};
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (hit[v]) sel.kept_vertices.push_back(v);
  }
  return sel;
}

// ---------------------------------------------------------------------------
// Standard families

MetricGraph make_rose(int petals, std::span<const double> lengths) {
  if (petals < 1) throw InvalidInput("a rose needs at least one petal");
  if (static_cast<int>(lengths.size()) != petals) {
    throw InvalidInput("rose needs one length per petal");
  }
  std::vector<EdgeSpec> specs(petals, EdgeSpec{0, 0});
  MetricGraph m{build_graph(1, specs), LengthFunction({lengths.begin(), lengths.end()})};
  m.graph.set_name("rose" + std::to_string(petals));
  return m;
}

MetricGraph make_barbell(double a, double b, double c) {
  const double lens[] = {a, b, c};
  MetricGraph m = make_barbell_with_loops(1, 1, lens);
  m.graph.set_name("barbell");
  return m;
}

MetricGraph make_theta(std::span<const double> lengths) {
  if (lengths.empty()) throw InvalidInput("theta graph needs at least one edge");
  std::vector<EdgeSpec> specs(lengths.size(), EdgeSpec{0, 1});
  MetricGraph m{build_graph(2, specs), LengthFunction({lengths.begin(), lengths.end()})};
  m.graph.set_name("theta" + std::to_string(lengths.size()));
  return m;
}

MetricGraph make_barbell_with_loops(int loops_v, int loops_w, std::span<const double> lengths) {
  if (loops_v < 0 || loops_w < 0) throw InvalidInput("negative loop count");
  if (static_cast<int>(lengths.size()) != loops_v + loops_w + 1) {
    throw InvalidInput("barbell needs one length per loop plus the bridge");
  }
  std::vector<EdgeSpec> specs;
  for (int i = 0; i < loops_v; ++i) specs.push_back({0, 0});
  for (int i = 0; i < loops_w; ++i) specs.push_back({1, 1});
  specs.push_back({0, 1});
  MetricGraph m{build_graph(2, specs), LengthFunction({lengths.begin(), lengths.end()})};
  m.graph.set_name("barbell" + std::to_string(loops_v) + "_" + std::to_string(loops_w));
  return m;
}

// ---------------------------------------------------------------------------
// Subgraph operations

std::vector<SubgraphSelection> proper_subgraphs(const Graph& g) {
  const int n = g.num_pairs();
  if (n < 1) throw InvalidInput("graph has no edges");
  if (n > 30) throw InvalidInput("too many edges for exhaustive subgraph listing");
  std::vector<SubgraphSelection> out;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t m = 1; m < full; ++m) {
    std::vector<PairId> kept;
    for (int p = 0; p < n; ++p) {
      if (m >> p & 1) kept.push_back(p);
    }
    out.push_back(make_selection(g, std::move(kept)));
  }
  return out;
}

DerivedGraph delete_edges(const Graph& g, const LengthFunction& lengths,
                          const SubgraphSelection& selection) {
  check_lengths(g, lengths);
  if (selection.kept_pairs.empty()) throw InvalidInput("selection removes every edge");
  for (PairId p : selection.kept_pairs) check_pair(g, p);
  std::vector<PairId> kept(selection.kept_pairs);
  std::sort(kept.begin(), kept.end());
  return induced(g, lengths, kept);
}

DerivedGraph delete_pair(const Graph& g, const LengthFunction& lengths, PairId removed) {
  check_pair(g, removed);
  std::vector<PairId> kept;
  for (PairId p = 0; p < g.num_pairs(); ++p) {
    if (p != removed) kept.push_back(p);
  }
  return delete_edges(g, lengths, make_selection(g, std::move(kept)));
}

DerivedGraph collapse_edge(const Graph& g, const LengthFunction& lengths, PairId p) {
  check_lengths(g, lengths);
  check_pair(g, p);
  if (g.is_loop(p)) throw InvalidInput("cannot collapse a loop edge");
  if (g.num_pairs() == 1) throw InvalidInput("collapse would leave no edges");
  const VertexId keep = g.origin(positive_edge(p));
  const VertexId gone = g.terminus(positive_edge(p));
  std::vector<int> new_id(g.num_vertices());
  std::vector<std::string> vlabels;
  int next = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (v == gone) continue;
    new_id[v] = next++;
    vlabels.push_back(g.vertex_label(v));
  }
  new_id[gone] = new_id[keep];
  std::vector<EdgeSpec> specs;
  std::vector<double> lens;
  std::vector<std::string> plabels;
  std::vector<PairId> parent;
  for (PairId q = 0; q < g.num_pairs(); ++q) {
    if (q == p) continue;
    specs.push_back({new_id[g.origin(positive_edge(q))], new_id[g.terminus(positive_edge(q))]});
    lens.push_back(lengths[q]);
    plabels.push_back(g.pair_label(q));
    parent.push_back(q);
  }
  DerivedGraph out{build_graph(next, specs), LengthFunction(std::move(lens)), std::move(parent)};
  out.graph.set_name(g.name());
  out.graph.set_vertex_labels(std::move(vlabels));
  out.graph.set_pair_labels(std::move(plabels));
  return out;
}

DerivedGraph subdivide_edge(const Graph& g, const LengthFunction& lengths, PairId p, int k) {
  check_lengths(g, lengths);
  check_pair(g, p);
  if (k < 2) throw InvalidInput("subdivision needs k >= 2");
  const int base = g.num_vertices();
  std::vector<EdgeSpec> specs;
  std::vector<double> lens;
  std::vector<std::string> plabels;
  std::vector<PairId> parent;
  std::vector<std::string> vlabels;
  for (VertexId v = 0; v < base; ++v) vlabels.push_back(g.vertex_label(v));
  for (int i = 1; i < k; ++i) vlabels.push_back(g.pair_label(p) + "_v" + std::to_string(i));

  const double piece = lengths[p] / k;
  const VertexId o = g.origin(positive_edge(p));
  const VertexId t = g.terminus(positive_edge(p));
  for (PairId q = 0; q < g.num_pairs(); ++q) {
    if (q == p) {
      specs.push_back({o, base});
      lens.push_back(piece);
    } else {
      specs.push_back({g.origin(positive_edge(q)), g.terminus(positive_edge(q))});
      lens.push_back(lengths[q]);
    }
    plabels.push_back(g.pair_label(q));
    parent.push_back(q);
  }
  for (int i = 1; i < k; ++i) {
    VertexId from = base + i - 1;
    VertexId to = (i == k - 1) ? t : base + i;
    specs.push_back({from, to});
    lens.push_back(piece);
    plabels.push_back(g.pair_label(p) + "_" + std::to_string(i));
    parent.push_back(p);
  }
  DerivedGraph out{build_graph(base + k - 1, specs), LengthFunction(std::move(lens)),
                   std::move(parent)};
  out.graph.set_name(g.name());
  out.graph.set_vertex_labels(std::move(vlabels));
  out.graph.set_pair_labels(std::move(plabels));
  return out;
}

DerivedGraph component_core(const Graph& g, const LengthFunction& lengths, int component) {
  check_lengths(g, lengths);
  const auto labels = g.component_labels();
  std::vector<bool> alive_pair(g.num_pairs(), false);
  std::vector<int> valence(g.num_vertices(), 0);
  for (PairId p = 0; p < g.num_pairs(); ++p) {
    if (labels[g.origin(positive_edge(p))] != component) continue;
    alive_pair[p] = true;
    ++valence[g.origin(positive_edge(p))];
    ++valence[g.terminus(positive_edge(p))];
  }
  std::vector<VertexId> leaves;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (valence[v] == 1) leaves.push_back(v);
  }
  while (!leaves.empty()) {
    VertexId v = leaves.back();
    leaves.pop_back();
    if (valence[v] != 1) continue;
    for (EdgeId e : g.out_edges(v)) {
      if (!alive_pair[pair_of(e)]) continue;
      alive_pair[pair_of(e)] = false;
      valence[v] = 0;
      VertexId w = g.terminus(e);
      if (--valence[w] == 1) leaves.push_back(w);
      break;
    }
  }
  std::vector<PairId> kept;
  for (PairId p = 0; p < g.num_pairs(); ++p) {
    if (alive_pair[p]) kept.push_back(p);
  }
  if (kept.empty()) return DerivedGraph{};
  return induced(g, lengths, kept);
}

// ---------------------------------------------------------------------------
// Circuit enumeration

namespace {

class CapCounter {
 public:
  explicit CapCounter(std::uint64_t cap) : cap_(cap) {}
  void tick() {
    if (++visited_ > cap_) {
      throw CapExceeded("circuit enumeration exceeded " + std::to_string(cap_) +
                        " partial paths");
    }
  }

 private:
  std::uint64_t cap_;
  std::uint64_t visited_ = 0;
};

}  // namespace

CircuitCounts enumerate_circuits(const Graph& g, int max_edges, bool collect,
                                 std::uint64_t cap) {
  if (max_edges < 1) throw InvalidInput("circuit length bound must be positive");
  CircuitCounts out;
  out.counts.assign(max_edges, 0);
  CapCounter counter(cap);
  std::vector<EdgeId> path;
  path.reserve(max_edges);

  auto dfs = [&](auto&& self) -> void {
    counter.tick();
    const EdgeId first = path.front();
    const EdgeId last = path.back();
    if (g.terminus(last) == g.origin(first) && last != reverse(first)) {
      ++out.counts[path.size() - 1];
      if (collect) out.circuits.push_back(Circuit{path});
    }
    if (static_cast<int>(path.size()) == max_edges) return;
    for (EdgeId next : g.out_edges(g.terminus(last))) {
      if (next == reverse(last)) continue;
      path.push_back(next);
      self(self);
      path.pop_back();
    }
  };
  for (EdgeId s = 0; s < g.num_edges(); ++s) {
    path.assign(1, s);
    dfs(dfs);
  }
  return out;
}

void for_each_circuit_up_to_length(
    const Graph& g, const LengthFunction& lengths, double t,
    const std::function<void(std::span<const EdgeId>, double)>& visit, std::uint64_t cap) {
  check_lengths(g, lengths);
  if (!std::isfinite(t)) throw InvalidInput("length bound must be finite");
  CapCounter counter(cap);
  std::vector<EdgeId> path;

  auto dfs = [&](auto&& self, double len) -> void {
    counter.tick();
    const EdgeId first = path.front();
    const EdgeId last = path.back();
    if (g.terminus(last) == g.origin(first) && last != reverse(first)) visit(path, len);
    for (EdgeId next : g.out_edges(g.terminus(last))) {
      if (next == reverse(last)) continue;
      const double extended = len + lengths.of_edge(next);
      if (extended > t) continue;
      path.push_back(next);
      self(self, extended);
      path.pop_back();
    }
  };
  for (EdgeId s = 0; s < g.num_edges(); ++s) {
    if (lengths.of_edge(s) > t) continue;
    path.assign(1, s);
    dfs(dfs, lengths.of_edge(s));
  }
}

std::uint64_t count_circuits_up_to_length(const Graph& g, const LengthFunction& lengths,
                                          double t, std::uint64_t cap) {
  std::uint64_t n = 0;
  for_each_circuit_up_to_length(
      g, lengths, t, [&](std::span<const EdgeId>, double) { ++n; }, cap);
  return n;
}

double systole(const Graph& g, const LengthFunction& lengths) {
  check_lengths(g, lengths);
  if (rank(g) < 1) throw InvalidInput("a forest has no circuits");
  const int n = g.num_edges();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double best = kInf;
  std::vector<double> dist(n);
  using Item = std::pair<double, EdgeId>;
  // Shortest closed walk in the non-backtracking line digraph, rooted at s.
  for (EdgeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[s] = lengths.of_edge(s);
    queue.push({dist[s], s});
    while (!queue.empty()) {
      auto [d, e] = queue.top();
      queue.pop();
      if (d > dist[e] || d >= best) continue;
      for (EdgeId next : g.out_edges(g.terminus(e))) {
        if (next == reverse(e)) continue;
        if (next == s) {
          best = std::min(best, d);
          continue;
        }
        const double nd = d + lengths.of_edge(next);
        if (nd < dist[next]) {
          dist[next] = nd;
          queue.push({nd, next});
        }
      }
    }
  }
  return best;
}

}  // namespace graphent
