#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphent {

// Directed edges come in reversal pairs laid out as (2p, 2p + 1); the even
// member of each pair is the positive orientation.
using VertexId = int;
using EdgeId = int;
using PairId = int;

constexpr EdgeId reverse(EdgeId e) noexcept { return e ^ 1; }
constexpr PairId pair_of(EdgeId e) noexcept { return e >> 1; }
constexpr EdgeId positive_edge(PairId p) noexcept { return 2 * p; }

struct DirectedEdge {
  EdgeId id = 0;
  VertexId origin = 0;
  VertexId terminus = 0;
  EdgeId reverse = 1;
};

/// One unoriented edge as declared by the caller; its declared orientation
/// becomes the positive one.
struct EdgeSpec {
  VertexId origin = 0;
  VertexId terminus = 0;
};

/// Finite graph with a fixed-point-free reversal involution on its directed
/// edges. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  int num_vertices() const noexcept { return static_cast<int>(out_.size()); }
  int num_pairs() const noexcept { return static_cast<int>(ends_.size()); }
  int num_edges() const noexcept { return 2 * num_pairs(); }

  VertexId origin(EdgeId e) const {
    const auto& [o, t] = ends_[pair_of(e)];
    return (e & 1) ? t : o;
  }
  VertexId terminus(EdgeId e) const {
    const auto& [o, t] = ends_[pair_of(e)];
    return (e & 1) ? o : t;
  }
  DirectedEdge edge(EdgeId e) const { return {e, origin(e), terminus(e), reverse(e)}; }

  bool is_loop(PairId p) const { return ends_[p].first == ends_[p].second; }

  /// Directed edges whose origin is v, in increasing id order.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }

  /// Number of directed edges leaving v; a loop counts twice.
  int valence(VertexId v) const { return static_cast<int>(out_[v].size()); }

  /// Component index per vertex, numbered in order of first appearance.
  std::vector<int> component_labels() const;
  int num_components() const;

  const std::string& name() const noexcept { return name_; }
  const std::string& vertex_label(VertexId v) const { return vertex_labels_[v]; }
  const std::string& pair_label(PairId p) const { return pair_labels_[p]; }

  void set_name(std::string name) { name_ = std::move(name); }
  void set_vertex_labels(std::vector<std::string> labels);
  void set_pair_labels(std::vector<std::string> labels);

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ends_ == b.ends_ && a.out_.size() == b.out_.size();
  }

 private:
  friend Graph build_graph(int num_vertices, std::span<const EdgeSpec> specs);

  std::vector<std::pair<VertexId, VertexId>> ends_;
  std::vector<std::vector<EdgeId>> out_;
  std::string name_;
  std::vector<std::string> vertex_labels_;
  std::vector<std::string> pair_labels_;
};

/// Positive length per reversal pair; ℓ(e) = ℓ(ē) by construction.
class LengthFunction {
 public:
  LengthFunction() = default;
  /// Throws InvalidInput unless every value is finite and strictly positive.
  explicit LengthFunction(std::vector<double> per_pair);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](PairId p) const { return values_[p]; }
  double of_edge(EdgeId e) const { return values_[pair_of(e)]; }
  const std::vector<double>& values() const noexcept { return values_; }

  LengthFunction scaled(double factor) const;

  friend bool operator==(const LengthFunction&, const LengthFunction&) = default;

 private:
  std::vector<double> values_;
};

struct MetricGraph {
  Graph graph;
  LengthFunction lengths;
};

/// Result of an operation that rebuilds a graph; `parent_pair[p]` is the pair
/// of the source graph that new pair p came from.
struct DerivedGraph {
  Graph graph;
  LengthFunction lengths;
  std::vector<PairId> parent_pair;
};

/// Based circuit: a cyclically non-backtracking closed edge sequence.
struct Circuit {
  std::vector<EdgeId> edges;

  double length(const LengthFunction& lengths) const;
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

bool is_circuit(const Graph& g, const Circuit& c);

/// A set of kept reversal pairs. The induced vertex set is every vertex
/// incident to a kept pair.
struct SubgraphSelection {
  std::vector<PairId> kept_pairs;
  std::vector<VertexId> kept_vertices;

  /// Bit p set iff pair p is kept. Requires pair ids below 64.
  std::uint64_t mask() const;
  friend bool operator==(const SubgraphSelection&, const SubgraphSelection&) = default;
};

SubgraphSelection make_selection(const Graph& g, std::vector<PairId> kept_pairs);

Graph build_graph(int num_vertices, std::span<const EdgeSpec> specs);
inline Graph build_graph(int num_vertices, std::initializer_list<EdgeSpec> specs) {
  return build_graph(num_vertices, std::span<const EdgeSpec>(specs.begin(), specs.size()));
}

/// First Betti number: |E₊| − |V| + #components.
int rank(const Graph& g);

MetricGraph make_rose(int petals, std::span<const double> lengths);
MetricGraph make_barbell(double a, double b, double c);
/// Two vertices joined by `edges` parallel edges of the given lengths.
MetricGraph make_theta(std::span<const double> lengths);
/// Bridge between v and w with `loops_v` loops at v and `loops_w` loops at w;
/// lengths are ordered loops at v, loops at w, bridge last.
MetricGraph make_barbell_with_loops(int loops_v, int loops_w, std::span<const double> lengths);

/// Every nonempty strict subset of E₊. Requires |E₊| ≤ 30.
std::vector<SubgraphSelection> proper_subgraphs(const Graph& g);

/// Keeps only the selected pairs and the vertices incident to them.
DerivedGraph delete_edges(const Graph& g, const LengthFunction& lengths,
                          const SubgraphSelection& selection);
DerivedGraph delete_pair(const Graph& g, const LengthFunction& lengths, PairId removed);

/// Identifies the endpoints of non-loop pair `p` and removes the pair.
DerivedGraph collapse_edge(const Graph& g, const LengthFunction& lengths, PairId p);

/// Replaces pair `p` by a path of k pairs of length ℓ(p)/k.
DerivedGraph subdivide_edge(const Graph& g, const LengthFunction& lengths, PairId p, int k);

/// Restriction to one connected component, after removing vertices that no
/// circuit can pass through (valence-1 vertices, iteratively).
DerivedGraph component_core(const Graph& g, const LengthFunction& lengths, int component);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

struct CircuitCounts {
  /// counts[m - 1] is the number of based circuits with exactly m edges.
  std::vector<std::uint64_t> counts;
  std::vector<Circuit> circuits;  // filled only when requested
};

CircuitCounts enumerate_circuits(const Graph& g, int max_edges, bool collect = false,
                                 std::uint64_t cap = kDefaultEnumerationCap);

/// Visits every based circuit of metric length ≤ t with (edges, length).
void for_each_circuit_up_to_length(
    const Graph& g, const LengthFunction& lengths, double t,
    const std::function<void(std::span<const EdgeId>, double)>& visit,
    std::uint64_t cap = kDefaultEnumerationCap);

std::uint64_t count_circuits_up_to_length(const Graph& g, const LengthFunction& lengths,
                                          double t,
                                          std::uint64_t cap = kDefaultEnumerationCap);

/// Length of the shortest circuit. Throws InvalidInput on a forest.
double systole(const Graph& g, const LengthFunction& lengths);

}  // namespace graphent
