#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "graphent/error.hpp"
#include "graphent/graph.hpp"
#include "oracles.hpp"

using namespace graphent;

namespace {

MetricGraph theta4(double len = 1.0) {
  const double l[] = {len, len, len, len};
  return make_theta(l);
}

// Σ 1/(edge count) over based circuits, keyed by rounded metric length.
std::map<long long, double> weighted_lengths(const Graph& g, const LengthFunction& lengths,
                                             double t) {
  std::map<long long, double> out;
  for_each_circuit_up_to_length(g, lengths, t, [&](std::span<const EdgeId> edges, double len) {
    out[std::llround(len * 1e6)] += 1.0 / static_cast<double>(edges.size());
  });
  return out;
}

}  // namespace

TEST_CASE("reversal involution") {
  const MetricGraph b = make_barbell(1, 2, 3);
  for (EdgeId e = 0; e < b.graph.num_edges(); ++e) {
    CHECK(reverse(reverse(e)) == e);
    CHECK(reverse(e) != e);
    CHECK(b.graph.origin(e) == b.graph.terminus(reverse(e)));
  }
  CHECK(b.lengths.of_edge(5) == b.lengths.of_edge(4));
}

TEST_CASE("build_graph") {
  const Graph one = build_graph(1, {{0, 0}});
  CHECK(one.num_vertices() == 1);
  CHECK(one.num_edges() == 2);

  const Graph barbell = build_graph(2, {{0, 0}, {1, 1}, {0, 1}});
  CHECK(barbell.num_pairs() == 3);
  CHECK(barbell.valence(0) == 3);
  CHECK(barbell.valence(1) == 3);
  CHECK(barbell.is_loop(0));
  CHECK_FALSE(barbell.is_loop(2));

  const Graph theta = build_graph(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  CHECK(theta.valence(0) == 4);
  CHECK(rank(theta) == 3);

  CHECK_THROWS_AS(build_graph(2, {}), InvalidInput);
  CHECK_THROWS_AS(build_graph(1, {{0, 1}}), InvalidInput);
}

TEST_CASE("length function validation") {
  CHECK_THROWS_AS(LengthFunction({1.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(LengthFunction({1.0, -1.0}), InvalidInput);
  CHECK_THROWS_AS(LengthFunction({INFINITY}), InvalidInput);
  CHECK_THROWS_AS(LengthFunction({NAN}), InvalidInput);
  CHECK_NOTHROW(LengthFunction({1e-300, 1e300}));
}

TEST_CASE("rank") {
  for (int r = 1; r <= 6; ++r) {
    const std::vector<double> l(r, 1.0);
    CHECK(rank(make_rose(r, l).graph) == r);
  }
  CHECK(rank(make_barbell(1, 1, 1).graph) == 2);
  CHECK(rank(theta4().graph) == 3);
  CHECK(rank(build_graph(3, {{0, 1}, {1, 2}})) == 0);
}

TEST_CASE("constructors") {
  const double two[] = {1.5, 2.5};
  const MetricGraph r2 = make_rose(2, two);
  CHECK(r2.graph.num_vertices() == 1);
  CHECK(r2.lengths[1] == 2.5);

  const MetricGraph b = make_barbell(0.5, 0.25, 2.0);
  CHECK(b.graph.is_loop(0));
  CHECK(b.graph.is_loop(1));
  CHECK(b.graph.origin(positive_edge(0)) == b.graph.origin(positive_edge(2)));
  CHECK(b.graph.origin(positive_edge(1)) == b.graph.terminus(positive_edge(2)));
  CHECK(b.lengths[2] == 2.0);

  CHECK_THROWS_AS(make_barbell(1, -1, 1), InvalidInput);
  const double bad[] = {1.0, 0.0};
  CHECK_THROWS_AS(make_rose(2, bad), InvalidInput);
  CHECK(rank(make_rose(1, std::span<const double>(two, 1)).graph) == 1);
}

TEST_CASE("proper_subgraphs") {
  const double two[] = {1, 1};
  CHECK(proper_subgraphs(make_rose(2, two).graph).size() == 2);
  CHECK(proper_subgraphs(make_barbell(1, 1, 1).graph).size() == 6);
  const auto subs = proper_subgraphs(theta4().graph);
  CHECK(subs.size() == 14);
  for (std::size_t i = 1; i < subs.size(); ++i) CHECK(subs[i - 1].mask() < subs[i].mask());
  // A lone loop at w keeps only w.
  const auto bsubs = proper_subgraphs(make_barbell(1, 1, 1).graph);
  CHECK(bsubs[1].kept_pairs == std::vector<PairId>{1});
  CHECK(bsubs[1].kept_vertices == std::vector<VertexId>{1});
}

TEST_CASE("delete_edges") {
  const double three[] = {1, 2, 3};
  const MetricGraph r3 = make_rose(3, three);
  const DerivedGraph r2 = delete_pair(r3.graph, r3.lengths, 0);
  CHECK(r2.graph.num_pairs() == 2);
  CHECK(r2.lengths[0] == 2);
  CHECK(r2.lengths[1] == 3);
  CHECK(r2.parent_pair == std::vector<PairId>{1, 2});

  const MetricGraph t = theta4();
  const DerivedGraph t3 = delete_pair(t.graph, t.lengths, 2);
  CHECK(t3.graph.num_vertices() == 2);
  CHECK(t3.graph.num_pairs() == 3);
  CHECK(rank(t3.graph) == 2);

  const MetricGraph b = make_barbell(1, 2, 3);
  const DerivedGraph loops = delete_pair(b.graph, b.lengths, 2);
  CHECK(loops.graph.num_components() == 2);

  const DerivedGraph one = delete_edges(b.graph, b.lengths, make_selection(b.graph, {1}));
  CHECK(one.graph.num_vertices() == 1);
  CHECK(one.lengths[0] == 2);
  CHECK_THROWS_AS(delete_edges(b.graph, b.lengths, make_selection(b.graph, {})), InvalidInput);
}

TEST_CASE("deleting a pair drops rank or splits the graph") {
  const std::vector<MetricGraph> graphs = {make_barbell(1, 2, 3), theta4(),
                                           make_barbell_with_loops(2, 1, std::vector<double>{1, 2, 3, 4})};
  for (const auto& g : graphs) {
    for (PairId p = 0; p < g.graph.num_pairs(); ++p) {
      const DerivedGraph d = delete_pair(g.graph, g.lengths, p);
      const bool rank_drop = rank(d.graph) < rank(g.graph);
      const bool split = d.graph.num_components() > g.graph.num_components();
      CHECK((rank_drop || split));
    }
  }
}

TEST_CASE("collapse_edge") {
  const MetricGraph b = make_barbell(1.5, 2.5, 4.0);
  const DerivedGraph r = collapse_edge(b.graph, b.lengths, 2);
  CHECK(r.graph.num_vertices() == 1);
  CHECK(r.graph.num_pairs() == 2);
  CHECK(r.lengths[0] == 1.5);
  CHECK(r.lengths[1] == 2.5);

  const MetricGraph t = theta4(2.0);
  const DerivedGraph r3 = collapse_edge(t.graph, t.lengths, 0);
  CHECK(r3.graph.num_vertices() == 1);
  CHECK(r3.graph.num_pairs() == 3);
  for (PairId p = 0; p < 3; ++p) CHECK(r3.graph.is_loop(p));
  CHECK(rank(r3.graph) == 3);

  CHECK_THROWS_AS(collapse_edge(b.graph, b.lengths, 0), InvalidInput);
}

TEST_CASE("collapse induces a length-decreasing bijection on circuits") {
  const MetricGraph g = make_barbell_with_loops(1, 2, std::vector<double>{0.5, 0.7, 1.1, 0.9});
  const PairId e = 3;
  const DerivedGraph c = collapse_edge(g.graph, g.lengths, e);
  std::vector<PairId> new_of_old(g.graph.num_pairs(), -1);
  for (PairId q = 0; q < c.graph.num_pairs(); ++q) new_of_old[c.parent_pair[q]] = q;

  const CircuitCounts all = enumerate_circuits(g.graph, 6, true);
  for (const Circuit& circ : all.circuits) {
    Circuit image;
    int crossings = 0;
    for (EdgeId d : circ.edges) {
      if (pair_of(d) == e) {
        ++crossings;
        continue;
      }
      image.edges.push_back(2 * new_of_old[pair_of(d)] + (d & 1));
    }
    REQUIRE_FALSE(image.edges.empty());
    CHECK(is_circuit(c.graph, image));
    const double before = circ.length(g.lengths);
    const double after = image.length(c.lengths);
    CHECK(after <= before + 1e-12);
    CHECK(before <= after + crossings * g.lengths[e] + 1e-12);
  }
}

TEST_CASE("subdivide_edge") {
  const double loop[] = {3.0};
  const MetricGraph r1 = make_rose(1, loop);
  const DerivedGraph tri = subdivide_edge(r1.graph, r1.lengths, 0, 3);
  CHECK(tri.graph.num_vertices() == 3);
  CHECK(tri.graph.num_pairs() == 3);
  for (PairId p = 0; p < 3; ++p) {
    CHECK(tri.lengths[p] == doctest::Approx(1.0));
    CHECK_FALSE(tri.graph.is_loop(p));
  }
  for (VertexId v = 0; v < 3; ++v) CHECK(tri.graph.valence(v) == 2);
  CHECK(rank(tri.graph) == 1);

  const MetricGraph b = make_barbell(1.0, 2.0, 1.5);
  const DerivedGraph sb = subdivide_edge(b.graph, b.lengths, 2, 2);
  CHECK(rank(sb.graph) == rank(b.graph));
  CHECK_THROWS_AS(subdivide_edge(b.graph, b.lengths, 2, 1), InvalidInput);
}

TEST_CASE("subdivision preserves circuit lengths counted per cyclic class") {
  // Based circuits of m edges come in classes of size m / period, so
  // Σ 1/(edge count) per metric length counts classes weighted by
  // 1/repetition, which subdivision does not change.
  const MetricGraph b = make_barbell(1.0, 1.25, 0.75);
  for (PairId p = 0; p < 3; ++p) {
    const DerivedGraph s = subdivide_edge(b.graph, b.lengths, p, 2);
    const auto before = weighted_lengths(b.graph, b.lengths, 5.0);
    const auto after = weighted_lengths(s.graph, s.lengths, 5.0);
    REQUIRE(before.size() == after.size());
    for (const auto& [len, w] : before) {
      REQUIRE(after.count(len) == 1);
      CHECK(after.at(len) == doctest::Approx(w).epsilon(1e-12));
    }
  }
}

TEST_CASE("enumerate_circuits") {
  const double loop[] = {1.0};
  const CircuitCounts r1 = enumerate_circuits(make_rose(1, loop).graph, 3);
  CHECK(r1.counts == std::vector<std::uint64_t>{2, 2, 2});

  const double two[] = {1, 1};
  const Graph r2 = make_rose(2, two).graph;
  CHECK(enumerate_circuits(r2, 1).counts[0] == 4);

  const CircuitCounts coll = enumerate_circuits(r2, 4, true);
  CHECK(coll.circuits.size() == coll.counts[0] + coll.counts[1] + coll.counts[2] + coll.counts[3]);
  for (const auto& c : coll.circuits) CHECK(is_circuit(r2, c));

  CHECK_THROWS_AS(enumerate_circuits(r2, 12, false, 1000), CapExceeded);
}

TEST_CASE("circuit counts match brute force and matrix traces") {
  const std::vector<MetricGraph> graphs = {
      make_rose(2, std::vector<double>{1, 1}), make_barbell(1, 1, 1), theta4(),
      make_theta(std::vector<double>{1, 1, 1}), make_barbell_with_loops(1, 2, std::vector<double>{1, 1, 1, 1})};
  for (const auto& g : graphs) {
    const auto traces = oracle::trace_powers(g.graph, 8);
    CHECK(enumerate_circuits(g.graph, 8).counts == traces);
    for (int m = 1; m <= 4; ++m) CHECK(oracle::brute_force_circuits(g.graph, m) == traces[m - 1]);
  }
}

TEST_CASE("is_circuit") {
  const MetricGraph b = make_barbell(1, 1, 1);
  CHECK(is_circuit(b.graph, Circuit{{0}}));
  CHECK(is_circuit(b.graph, Circuit{{0, 4, 2, 5}}));
  CHECK_FALSE(is_circuit(b.graph, Circuit{{4}}));
  CHECK_FALSE(is_circuit(b.graph, Circuit{{0, 1}}));
  CHECK_FALSE(is_circuit(b.graph, Circuit{{4, 2, 5, 0, 1}}));
  CHECK_FALSE(is_circuit(b.graph, Circuit{}));
}

TEST_CASE("count_circuits_up_to_length") {
  const double loop[] = {1.0};
  const MetricGraph r1 = make_rose(1, loop);
  CHECK(count_circuits_up_to_length(r1.graph, r1.lengths, 2.5) == 4);

  const double two[] = {1, 1};
  const MetricGraph r2 = make_rose(2, two);
  CHECK(count_circuits_up_to_length(r2.graph, r2.lengths, 1.0) == 4);

  // Unit lengths: metric length equals edge count.
  const CircuitCounts c = enumerate_circuits(r2.graph, 5);
  std::uint64_t sum = 0;
  for (auto x : c.counts) sum += x;
  CHECK(count_circuits_up_to_length(r2.graph, r2.lengths, 5.5) == sum);

  const MetricGraph b = make_barbell(0.7, 1.1, 0.4);
  std::uint64_t by_filter = 0;
  for (const auto& circ : enumerate_circuits(b.graph, 10, true).circuits) {
    if (circ.length(b.lengths) <= 3.0) ++by_filter;
  }
  CHECK(count_circuits_up_to_length(b.graph, b.lengths, 3.0) == by_filter);
}

TEST_CASE("systole") {
  const double r2l[] = {1, 3};
  const MetricGraph r2 = make_rose(2, r2l);
  CHECK(systole(r2.graph, r2.lengths) == 1.0);
  const MetricGraph b = make_barbell(2.5, 1.5, 0.1);
  CHECK(systole(b.graph, b.lengths) == 1.5);
  const MetricGraph t = theta4(std::log(3.0));
  CHECK(systole(t.graph, t.lengths) == doctest::Approx(2.0 * std::log(3.0)));
  const Graph forest = build_graph(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(systole(forest, LengthFunction({1.0, 1.0})), InvalidInput);
}

TEST_CASE("component_core prunes trees") {
  // Triangle with a pendant path.
  const Graph g = build_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
  const DerivedGraph core = component_core(g, LengthFunction({1, 1, 1, 1, 1}), 0);
  CHECK(core.graph.num_pairs() == 3);
  CHECK(core.graph.num_vertices() == 3);

  const Graph tree = build_graph(3, {{0, 1}, {1, 2}});
  CHECK(component_core(tree, LengthFunction({1, 1}), 0).graph.num_pairs() == 0);
}
