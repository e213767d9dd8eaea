#include "perc/error.hpp"
#include "perc/lab.hpp"
#include "perc/percolate.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace perc;

namespace {

Graph k4() { return Graph::undirected(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}); }
Graph triangle() { return Graph::undirected(3, {{1, 2}, {2, 3}, {1, 3}}); }

PercolationSpec spec(PercolationMode mode, double p, std::uint64_t trial = 0, std::uint64_t seed = 7) {
  return PercolationSpec{mode, p, seed, trial};
}

}  // namespace

TEST(Stream, MixIsTheSplitMixFinalizer) {
  // Reference values of the SplitMix64 output sequence seeded with 0.
  EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(mix64(0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
}

TEST(Stream, Deterministic) {
  EXPECT_EQ(derive_stream(1, 2, 3), derive_stream(1, 2, 3));
  EXPECT_NE(derive_stream(1, 2, 3), derive_stream(1, 2, 4));
  EXPECT_NE(derive_stream(1, 2, 3), derive_stream(1, 3, 3));
  EXPECT_NE(derive_stream(1, 2, 3), derive_stream(2, 2, 3));
}

TEST(Stream, UniformMean) {
  double sum = 0;
  const int n = 100000;
  for (int e = 1; e <= n; ++e) {
    const double u = derive_stream(42, 0, static_cast<std::uint64_t>(e));
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(Spec, RejectsBadProbability) {
  EXPECT_THROW(spec(PercolationMode::edge, 1.5).validate(), Error);
  EXPECT_THROW(spec(PercolationMode::edge, -0.1).validate(), Error);
  EXPECT_THROW(edge_percolate(k4(), spec(PercolationMode::edge, 2.0)), Error);
}

TEST(EdgePercolation, Extremes) {
  EXPECT_EQ(edge_percolate(k4(), spec(PercolationMode::edge, 1)).instance, k4());
  const auto none = edge_percolate(k4(), spec(PercolationMode::edge, 0));
  EXPECT_EQ(none.instance, Graph::undirected(4, {}));
  EXPECT_EQ(none.survivors.survivor_count(), 0u);
}

TEST(EdgePercolation, MeanSurvivingEdgesOfK4) {
  double total = 0;
  for (std::uint64_t t = 0; t < 10000; ++t) total += edge_percolate(k4(), spec(PercolationMode::edge, 0.5, t)).instance.edge_count();
  EXPECT_NEAR(total / 10000, 3.0, 0.1);
}

TEST(EdgePercolation, DirectedArcsAreSeparateElements) {
  const Graph g = Graph::directed(2, {{1, 2}, {2, 1}});
  int both = 0;
  int one = 0;
  for (std::uint64_t t = 0; t < 4000; ++t) {
    const auto n = edge_percolate(g, spec(PercolationMode::edge, 0.5, t)).instance.edge_count();
    both += n == 2;
    one += n == 1;
  }
  EXPECT_NEAR(both / 4000.0, 0.25, 0.03);
  EXPECT_NEAR(one / 4000.0, 0.5, 0.03);
}

TEST(EdgePercolation, ModeMismatch) {
  EXPECT_THROW(edge_percolate(k4(), spec(PercolationMode::vertex, 0.5)), Error);
  EXPECT_THROW(percolate(Instance{k4()}, spec(PercolationMode::clause, 0.5)), Error);
}

TEST(VertexPercolation, Extremes) {
  const auto all = vertex_percolate(triangle(), spec(PercolationMode::vertex, 1));
  EXPECT_EQ(all.instance, triangle());
  EXPECT_EQ(all.survivors.relabel, (std::vector<int>{0, 1, 2, 3}));
  const auto none = vertex_percolate(triangle(), spec(PercolationMode::vertex, 0));
  EXPECT_EQ(none.instance.vertex_count(), 0);
}

TEST(VertexPercolation, InducedSubgraphOfKeptSet) {
  const std::vector<int> kept{1, 3};
  EXPECT_EQ(induced_subgraph(triangle(), kept), Graph::undirected(2, {{1, 2}}));
  // Whatever survives, the result is the induced subgraph on the kept vertices.
  const Graph g = random_graph(10, 0.5, 3);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto r = vertex_percolate(g, spec(PercolationMode::vertex, 0.6, t));
    EXPECT_EQ(r.instance, induced_subgraph(g, r.survivors.kept));
    for (std::size_t i = 0; i < r.survivors.kept.size(); ++i)
      EXPECT_EQ(r.survivors.relabel[r.survivors.kept[i]], static_cast<int>(i) + 1);
  }
}

TEST(ClausePercolation, ExtremesAndMean) {
  const CspInstance f = random_kcnf(12, 100, 3, 5);
  EXPECT_EQ(clause_percolate(f, spec(PercolationMode::clause, 1)).instance, f);
  const auto none = clause_percolate(f, spec(PercolationMode::clause, 0)).instance;
  EXPECT_EQ(none.clause_count(), 0u);
  EXPECT_EQ(none.variable_count(), 12);
  double total = 0;
  for (std::uint64_t t = 0; t < 10000; ++t)
    total += clause_percolate(f, spec(PercolationMode::clause, 0.3, t)).instance.clause_count();
  EXPECT_NEAR(total / 10000, 30.0, 1.0);
}

TEST(ClausePercolation, SurvivorsKeepOriginalOrder) {
  const CspInstance f = random_kcnf(6, 20, 2, 1);
  const auto r = clause_percolate(f, spec(PercolationMode::clause, 0.5));
  ASSERT_EQ(r.instance.clause_count(), r.survivors.kept.size());
  for (std::size_t i = 0; i < r.survivors.kept.size(); ++i)
    EXPECT_EQ(r.instance.clauses()[i], f.clauses()[r.survivors.kept[i] - 1]);
}

TEST(VariablePercolation, ClauseDroppedWhenAVariableDies) {
  const std::vector<int> lits{1, 2};
  const CspInstance f(2, 2, {Clause::disjunction(lits)});
  EXPECT_EQ(variable_percolate(f, spec(PercolationMode::variable, 1)).instance, f);
  int survived = 0;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    const auto r = variable_percolate(f, spec(PercolationMode::variable, 0.5, t));
    const bool both = r.survivors.kept.size() == 2;
    EXPECT_EQ(r.instance.clause_count(), both ? 1u : 0u);
    survived += both;
  }
  EXPECT_NEAR(survived / 10000.0, 0.25, 0.02);
}

TEST(VariablePercolation, ClausesRewrittenOverNewIndices) {
  const std::vector<int> lits{2, -3};
  const CspInstance f(3, 2, {Clause::disjunction(lits)});
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto r = variable_percolate(f, spec(PercolationMode::variable, 0.7, t));
    if (r.survivors.relabel[2] && r.survivors.relabel[3]) {
      ASSERT_EQ(r.instance.clause_count(), 1u);
      const auto& c = r.instance.clauses()[0];
      EXPECT_EQ(c.vars()[0], r.survivors.relabel[2]);
      EXPECT_EQ(c.vars()[1], r.survivors.relabel[3]);
      EXPECT_EQ(c.table(), f.clauses()[0].table());
    }
  }
}

TEST(ItemPercolation, ExtremesAndMean) {
  std::vector<BigInt> items;
  for (int i = 1; i <= 20; ++i) items.emplace_back(i);
  const SubsetSumInstance s(items, 17);
  EXPECT_EQ(item_percolate(s, spec(PercolationMode::item, 1)).instance, s);
  const auto none = item_percolate(s, spec(PercolationMode::item, 0)).instance;
  EXPECT_EQ(none.item_count(), 0u);
  EXPECT_EQ(none.target(), 17);
  double total = 0;
  for (std::uint64_t t = 0; t < 10000; ++t) total += item_percolate(s, spec(PercolationMode::item, 0.5, t)).instance.item_count();
  EXPECT_NEAR(total / 10000, 10.0, 0.3);
}

TEST(Properties, DeterministicAcrossCalls) {
  const Graph g = random_graph(12, 0.5, 9);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto a = edge_percolate(g, spec(PercolationMode::edge, 0.4, t));
    const auto b = edge_percolate(g, spec(PercolationMode::edge, 0.4, t));
    EXPECT_EQ(a.instance, b.instance);
    EXPECT_EQ(a.survivors, b.survivors);
  }
}

TEST(Properties, MonotoneInP) {
  const Graph g = random_graph(12, 0.6, 2);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto lo = edge_percolate(g, spec(PercolationMode::edge, 0.3, t)).instance;
    const auto hi = edge_percolate(g, spec(PercolationMode::edge, 0.6, t)).instance;
    for (const Edge& e : lo.edges()) EXPECT_TRUE(hi.has_edge(e.u, e.v));
  }
}

TEST(Properties, DownwardClosed) {
  const Graph g = random_graph(15, 0.5, 4);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const Graph h = edge_percolate(g, spec(PercolationMode::edge, 0.5, t)).instance;
    for (const Edge& e : h.edges()) EXPECT_TRUE(g.has_edge(e.u, e.v));
  }
}

TEST(Properties, PairwiseIndependence) {
  // Joint survival of two fixed elements against p^2, within 3 standard errors.
  const double p = 0.4;
  const int trials = 20000;
  for (auto [a, b] : {std::pair<std::uint64_t, std::uint64_t>{1, 2}, {5, 900}, {edge_key({1, 2}), edge_key({2, 1})}}) {
    int joint = 0;
    for (int t = 0; t < trials; ++t) {
      const PercolationSpec s = spec(PercolationMode::item, p, static_cast<std::uint64_t>(t), 11);
      joint += survives(s, a) && survives(s, b);
    }
    const double se = std::sqrt(p * p * (1 - p * p) / trials);
    EXPECT_NEAR(static_cast<double>(joint) / trials, p * p, 3 * se) << a << "," << b;
  }
}

TEST(SurvivorMap, SerializationRoundTrip) {
  const auto e = edge_percolate(k4(), spec(PercolationMode::edge, 0.5, 3));
  EXPECT_EQ(parse_survivor_map(serialize(e.survivors)), e.survivors);
  const auto v = vertex_percolate(random_graph(9, 0.5, 1), spec(PercolationMode::vertex, 0.5, 3));
  EXPECT_EQ(parse_survivor_map(serialize(v.survivors)), v.survivors);
  const std::string text = serialize(v.survivors);
  EXPECT_EQ(text.rfind("p survivors vertex 9 ", 0), 0u);
  EXPECT_THROW(parse_survivor_map("p survivors vertex 3 1\nk 4\n"), ParseError);
}
