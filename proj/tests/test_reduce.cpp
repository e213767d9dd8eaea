#include "oracles.hpp"

#include "perc/error.hpp"
#include "perc/lab.hpp"
#include "perc/reduce.hpp"
#include "perc/solve.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace perc;

namespace {

Graph triangle() { return Graph::undirected(3, {{1, 2}, {2, 3}, {1, 3}}); }

bool k_colorable_exactly(const Graph& g, int chi) {
  return is_k_colorable(g, chi).colorable && (chi == 1 || !is_k_colorable(g, chi - 1).colorable);
}

}  // namespace

TEST(Blowup, SingleEdgeBecomesK22) {
  const auto b = blowup_graph(Graph::undirected(2, {{1, 2}}), 2);
  EXPECT_EQ(b.graph.vertex_count(), 4);
  EXPECT_EQ(b.graph.edge_count(), 4u);
  EXPECT_EQ(b.clouds.cloud(1).size(), 2u);
  EXPECT_EQ(b.clouds.cloud(2)[0], 3);
}

TEST(Blowup, FactorOneIsIdentity) {
  const Graph g = random_graph(7, 0.5, 1);
  const auto b = blowup_graph(g, 1);
  EXPECT_EQ(b.graph, g);
  for (int v = 1; v <= 7; ++v) EXPECT_EQ(b.clouds.cloud(v)[0], v);
}

TEST(Blowup, TriangleFactorThree) {
  const auto b = blowup_graph(triangle(), 3);
  EXPECT_EQ(b.graph.vertex_count(), 9);
  EXPECT_EQ(b.graph.edge_count(), 27u);
  EXPECT_EQ(oracle::alpha(b.graph), 3);
  EXPECT_THROW(blowup_graph(triangle(), 0), Error);
  EXPECT_THROW(blowup_graph(Graph::directed(2, {{1, 2}}), 2), Error);
}

TEST(Blowup, StructureMatchesDefinition) {
  const Graph g = random_graph(5, 0.5, 8);
  const int R = 3;
  const auto b = blowup_graph(g, R);
  for (int x = 1; x <= 5 * R; ++x)
    for (int y = x + 1; y <= 5 * R; ++y)
      EXPECT_EQ(b.graph.has_edge(x, y), g.has_edge((x - 1) / R + 1, (y - 1) / R + 1) && (x - 1) / R != (y - 1) / R);
}

TEST(ColoringBlowup, FactorFormula) {
  EXPECT_EQ(coloring_blowup_factor(2, 1.0), 1);
  EXPECT_EQ(coloring_blowup_factor(100, 3.0), 7);
  EXPECT_EQ(coloring_blowup(triangle(), 1.0).R, coloring_blowup_factor(3, 1.0));
}

TEST(ColoringBlowup, PreservesChromaticNumber) {
  for (int n = 2; n <= 5; ++n)
    for (const Graph& g : oracle::nonisomorphic_graphs(n))
      for (double C : {1.0, 2.0, 3.0}) {
        const int chi = oracle::chromatic(g);
        EXPECT_TRUE(k_colorable_exactly(coloring_blowup(g, C).graph, chi)) << serialize(g);
      }
}

TEST(HamGadget, TwoCycle) {
  const Graph g = Graph::directed(2, {{1, 2}, {2, 1}});
  const auto gadget = ham_gadget(g, 1);
  EXPECT_EQ(gadget.graph.vertex_count(), 4);
  EXPECT_TRUE(is_hamiltonian_cycle(gadget.graph, std::vector<int>{1, 3, 2, 4}));
  EXPECT_TRUE(has_hamiltonian_cycle(ham_gadget(g, 2).graph).hamiltonian);
}

TEST(HamGadget, SingleArcStaysNonHamiltonian) {
  const Graph g = Graph::directed(2, {{1, 2}});
  EXPECT_FALSE(oracle::hamiltonian(ham_gadget(g, 1).graph));
  EXPECT_FALSE(has_hamiltonian_cycle(ham_gadget(g, 3).graph).hamiltonian);
}

TEST(HamGadget, Triangle) {
  const auto gadget = ham_gadget(Graph::directed(3, {{1, 2}, {2, 3}, {3, 1}}), 2);
  EXPECT_EQ(gadget.graph.vertex_count(), 9);
  EXPECT_TRUE(oracle::hamiltonian(gadget.graph));
  EXPECT_THROW(ham_gadget(triangle(), 2), Error);
}

TEST(HamGadget, EdgeStructure) {
  const Graph g = Graph::directed(3, {{1, 2}, {3, 1}});
  const int R = 2;
  const auto gadget = ham_gadget(g, R);
  // i -> U_i, complete digraph inside U_i, U_i -> j for arcs i -> j.
  std::size_t expected = 3 * R + 3 * R * (R - 1) + g.edge_count() * R;
  EXPECT_EQ(gadget.graph.edge_count(), expected);
  for (int u : gadget.clouds.cloud(1)) {
    EXPECT_TRUE(gadget.graph.has_edge(1, u));
    EXPECT_TRUE(gadget.graph.has_edge(u, 2));
  }
  EXPECT_FALSE(gadget.graph.has_edge(1, 2));
}

TEST(HamGadget, EquivalenceOnRandomDigraphs) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Graph g = random_digraph(2 + static_cast<int>(seed % 3), 0.5, seed);
    for (int R : {1, 2}) EXPECT_EQ(oracle::hamiltonian(g), has_hamiltonian_cycle(ham_gadget(g, R).graph).hamiltonian);
  }
}

TEST(CspBlowup, UnitClause) {
  const auto b = csp_cloud_blowup(parse_cnf("p cnf 1 1\n1 0\n"), 2);
  EXPECT_EQ(b.formula.variable_count(), 2);
  EXPECT_EQ(b.formula.clause_count(), 2u);
  EXPECT_EQ(oracle::val(b.formula), 1);
}

TEST(CspBlowup, ComplementaryUnits) {
  const auto b = csp_cloud_blowup(parse_cnf("p cnf 1 2\n1 0\n-1 0\n"), 2);
  EXPECT_EQ(b.formula.clause_count(), 4u);
  EXPECT_EQ(oracle::val(b.formula), Rational(1, 2));
}

TEST(CspBlowup, CombinationCount) {
  const auto b = csp_cloud_blowup(parse_cnf("p cnf 3 1\n1 -2 3 0\n"), 2);
  EXPECT_EQ(b.formula.variable_count(), 6);
  EXPECT_EQ(b.formula.clause_count(), 8u);
  EXPECT_EQ(b.clause_clouds.cloud(1).size(), 8u);
  // Lexicographic in copies, last position fastest.
  EXPECT_EQ(b.formula.clauses()[0].vars()[2], 5);
  EXPECT_EQ(b.formula.clauses()[1].vars()[2], 6);
  EXPECT_EQ(b.formula.clauses()[2].vars()[1], 4);
}

TEST(CspBlowup, PreservesValue) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const CspInstance f = random_kcnf(3, 1 + static_cast<int>(seed % 4), 1 + static_cast<int>(seed % 2), seed);
    for (int R : {1, 2, 3}) EXPECT_EQ(max_csp_value(csp_cloud_blowup(f, R).formula).value, oracle::val(f));
  }
}

TEST(CspBlowup, MixedArityChangesWeights) {
  // A 2-ary clause gets R^2 copies against R for a unit clause, so the value
  // is only preserved when every clause has the same arity.
  const CspInstance f(2, 2, {Clause({1}, {false, true}), Clause({1, 2}, {true, false, true, false})});
  EXPECT_EQ(oracle::val(f), Rational(1, 2));
  const CspInstance h = csp_cloud_blowup(f, 2).formula;
  EXPECT_EQ(h.clause_count(), 6u);
  EXPECT_EQ(oracle::val(h), Rational(2, 3));
  EXPECT_NE(max_csp_value(h).value, max_csp_value(f).value);
}

TEST(CspBlowup, DensityBound) {
  // R >= N^{k/delta} gives at least n^{k - delta} clauses on n = N R variables.
  const CspInstance f = parse_cnf("p cnf 2 1\n1 2 0\n");
  const ReductionParams params = plan_parameters({Theorem::csp_clause, 2, 1.0, 0.5, 1.0, 2});
  const auto b = csp_cloud_blowup(f, params.R);
  const double n = b.formula.variable_count();
  EXPECT_GE(static_cast<double>(b.formula.clause_count()), std::pow(n, 2 - 1.0));
}

TEST(SubsetSumGadget, YesInstance) {
  const SubsetSumInstance s({1, 2}, 3);
  const int c = minimal_gadget_exponent(s, 1);
  const auto g = subset_sum_gadget(s, 1, c);
  EXPECT_EQ(g.instance.item_count(), 12u);
  BigInt target = 3 * g.scale;
  for (const BigInt& m : g.powers) target += m;
  EXPECT_EQ(g.instance.target(), target);
  const auto r = subset_sum_decide(g.instance);
  ASSERT_TRUE(r.feasible);
  std::set<int> indices;
  for (int id : r.witness) EXPECT_TRUE(indices.insert(g.labels[id - 1].index).second);
  EXPECT_EQ(indices.size(), 2u);
}

TEST(SubsetSumGadget, NoInstanceStaysNo) {
  const SubsetSumInstance s({1, 2}, 4);
  for (int R : {1, 2}) {
    const auto g = subset_sum_gadget(s, R, minimal_gadget_exponent(s, R), GadgetOptions{false});
    EXPECT_FALSE(subset_sum_decide(g.instance).feasible);
    if (R == 1) {
      const std::vector<BigInt> items(g.instance.items().begin(), g.instance.items().end());
      EXPECT_FALSE(oracle::subset_sum(items, g.instance.target()));
    }
  }
}

TEST(SubsetSumGadget, ItemLayout) {
  const SubsetSumInstance s({3, 5}, 8);
  const int R = 1;
  const auto g = subset_sum_gadget(s, R, minimal_gadget_exponent(s, R));
  for (int i = 1; i <= 2; ++i)
    for (bool primed : {false, true})
      for (int k = -R; k <= R; ++k) {
        const int id = g.item_id(i, primed, k);
        EXPECT_EQ(g.labels[id - 1], (GadgetItem{i, primed, k}));
        const BigInt expected = g.powers[i - 1] + (primed ? BigInt(0) : s.items()[i - 1] * g.scale) + k;
        EXPECT_EQ(g.instance.items()[id - 1], expected);
      }
}

TEST(SubsetSumGadget, OddCountIsPadded) {
  const SubsetSumInstance s({4, 1, 2}, 3);
  EXPECT_EQ(pad_to_even(s).item_count(), 4u);
  EXPECT_EQ(pad_to_even(s).items()[3], 0);
  const auto g = subset_sum_gadget(s, 1, minimal_gadget_exponent(s, 1));
  EXPECT_TRUE(g.padded);
  EXPECT_EQ(g.N, 4);
  EXPECT_EQ(g.instance.item_count(), 2u * 4 * 3);
}

TEST(SubsetSumGadget, RefusesWeakExponent) {
  const SubsetSumInstance s({7, 9, 10, 3}, 12);
  EXPECT_TRUE(gadget_dominance_violation(s, 2, 1).has_value());
  EXPECT_THROW(subset_sum_gadget(s, 2, 1), Error);
  const int c = minimal_gadget_exponent(s, 2);
  EXPECT_FALSE(gadget_dominance_violation(s, 2, c).has_value());
  EXPECT_TRUE(gadget_dominance_violation(s, 2, c - 1).has_value());
}

TEST(SubsetSumGadget, OffsetBound) {
  const SubsetSumInstance s({1, 2}, 3);
  EXPECT_THROW(subset_sum_gadget(s, 4, minimal_gadget_exponent(s, 4)), Error);
  EXPECT_NO_THROW(subset_sum_gadget(s, 4, minimal_gadget_exponent(s, 4), GadgetOptions{false}));
}

TEST(SubsetSumGadget, EquivalenceAndOneItemPerIndex) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SplitMix64 rng(seed);
    const int n = 1 + static_cast<int>(seed % 4);
    std::vector<BigInt> items;
    for (int i = 0; i < n; ++i) items.emplace_back(static_cast<long long>(rng.below(11)));
    const SubsetSumInstance s(items, BigInt(static_cast<long long>(rng.below(25))));
    const int R = 1 + static_cast<int>(seed % 2);
    const auto g = subset_sum_gadget(s, R, minimal_gadget_exponent(s, R), GadgetOptions{false});
    const auto r = subset_sum_decide(g.instance);
    EXPECT_EQ(r.feasible, oracle::subset_sum(items, s.target()));
    if (r.feasible) {
      std::set<int> indices;
      for (int id : r.witness) indices.insert(g.labels[id - 1].index);
      EXPECT_EQ(static_cast<int>(indices.size()), g.N);
      EXPECT_EQ(static_cast<int>(r.witness.size()), g.N);
    }
  }
}

TEST(CloudMap, SerializationRoundTrip) {
  const auto b = blowup_graph(triangle(), 2);
  const std::string text = serialize(b.clouds);
  EXPECT_EQ(text, "c cloudmap vertex\n1 : 1 2\n2 : 3 4\n3 : 5 6\n");
  EXPECT_EQ(parse_cloud_map(text), b.clouds);
  EXPECT_THROW(parse_cloud_map("c cloudmap vertex\n2 : 1\n"), ParseError);
  const auto owners = b.clouds.owners(6);
  EXPECT_EQ(owners[4], 2);
}

TEST(Planner, CspClauseExample) {
  const ReductionParams r = plan_parameters({Theorem::csp_clause, 4, 1.0, 0.5, 1.0, 2});
  EXPECT_EQ(r.R, 16);
}

TEST(Planner, NoPercolationNeedsNoBlowup) {
  for (Theorem t : {Theorem::ham, Theorem::vc_edge, Theorem::csp_variable, Theorem::subset_sum})
    EXPECT_EQ(plan_parameters({t, 10, 1.0, 0.5, 0.5, 3}).R, 1) << theorem_name(t);
}

TEST(Planner, VertexCoverInequality) {
  PlanRequest q{Theorem::vc_vertex, 10, 0.9, 0.5, 0.5, 2};
  const ReductionParams r = plan_parameters(q);
  EXPECT_GT(r.R, q.C * q.C * std::log(10.0) / (0.25 * 0.9));
}

TEST(Planner, HamExponent) {
  // R = N^{1/c} with c = log(p n) / log n, n = N (1 + R).
  const PlanRequest q{Theorem::ham, 20, 0.5, 0.5, 0.5, 2};
  const ReductionParams r = plan_parameters(q);
  auto ok = [&](int R) {
    const double n = 20.0 * (1 + R);
    const double c = std::log(0.5 * n) / std::log(n);
    return R >= std::pow(20.0, 1 / c);
  };
  EXPECT_TRUE(ok(r.R));
  EXPECT_FALSE(ok(r.R - 1));
  EXPECT_EQ(r.produced_size, produced_size(Theorem::ham, 20, r.R, 2));
}

TEST(Planner, InfeasibleReported) {
  PlanRequest q{Theorem::ham, 50, 0.01, 0.5, 0.5, 2};
  q.size_cap = 1000;
  EXPECT_THROW(plan_parameters(q), Infeasible);
  EXPECT_THROW(plan_parameters({Theorem::ham, 5, 0.0, 0.5, 0.5, 2}), Error);
}
