#include "oracles.hpp"

#include "perc/error.hpp"
#include "perc/lab.hpp"
#include "perc/solve.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace perc;

namespace {

Graph complete(int n) {
  std::vector<Edge> e;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) e.push_back({u, v});
  return Graph::undirected(n, e);
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 1; i <= n; ++i) e.push_back({i, i % n + 1});
  return Graph::undirected(n, e);
}

// A single item equal to the target: feasible iff the item survives, a p-coin.
Experiment coin(double p, std::uint64_t seed, std::int64_t trials) {
  Experiment e;
  e.original = SubsetSumInstance({1}, 1);
  e.mode = PercolationMode::item;
  e.p = p;
  e.seed = seed;
  e.trials = trials;
  e.property = Property::ss_feasible;
  return e;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "perc_lab_test";
  std::filesystem::create_directories(dir);
  return dir;
}

void write(const std::filesystem::path& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST(Rng, BelowIsInRangeAndRoughlyUniform) {
  SplitMix64 rng(1);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

TEST(Wilson, KnownValues) {
  // Reference values computed from the closed form with z = 1.959963984540054.
  const FrequencySummary f = wilson(5, 10);
  EXPECT_NEAR(f.wilson_lo, 0.2365931, 1e-6);
  EXPECT_NEAR(f.wilson_hi, 0.7634069, 1e-6);
  const FrequencySummary zero = wilson(0, 20);
  EXPECT_EQ(zero.wilson_lo, 0.0);
  EXPECT_NEAR(zero.wilson_hi, 0.1611252, 1e-6);
  const FrequencySummary all = wilson(20, 20);
  EXPECT_EQ(all.wilson_hi, 1.0);
  EXPECT_EQ(wilson(0, 0).wilson_hi, 1.0);
}

TEST(Wilson, ContainsEstimateAndStaysInUnitInterval) {
  for (int n = 1; n <= 60; ++n)
    for (int s = 0; s <= n; ++s) {
      const FrequencySummary f = wilson(s, n);
      EXPECT_LE(0.0, f.wilson_lo);
      EXPECT_LE(f.wilson_lo, f.estimate);
      EXPECT_LE(f.estimate, f.wilson_hi);
      EXPECT_LE(f.wilson_hi, 1.0);
    }
}

TEST(Wilson, CoverageOfAKnownCoin) {
  const double p = 0.3;
  int covered = 0;
  for (std::uint64_t meta = 0; meta < 100; ++meta) {
    const FrequencySummary f = run_experiment(coin(p, 1000 + meta, 200)).summary;
    covered += f.wilson_lo <= p && p <= f.wilson_hi;
  }
  EXPECT_GE(covered, 93);
}

TEST(Csv, EmptyTrialListIsHeaderOnly) {
  EXPECT_EQ(report_csv(ExperimentResult{}), "trial,seed,survivors,verdict,detail\n");
}

TEST(Csv, ThreeTrials) {
  const ExperimentResult r = run_experiment(coin(0.5, 3, 3));
  const std::string csv = report_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_NE(csv.find("\nsummary,,," + std::to_string(r.summary.successes) + "/3,"), std::string::npos);
  EXPECT_NE(csv.find("\n0," + std::to_string(trial_seed(3, 0)) + ","), std::string::npos);
}

TEST(Experiment, DeterministicAcrossWorkerCounts) {
  Experiment e;
  e.original = random_graph(6, 0.5, 4);
  e.construction = Construction::blowup;
  e.R = 2;
  e.p = 0.5;
  e.seed = 17;
  e.trials = 40;
  e.property = Property::alpha_at_least;
  e.target = 4;
  e.decode = DecodeRule::threshold;
  const std::string one = report_csv(run_experiment(e));
  e.workers = 4;
  EXPECT_EQ(report_csv(run_experiment(e)), one);
  EXPECT_EQ(report_csv(run_experiment(e)), one);
}

TEST(Experiment, YesAtFullProbability) {
  const PlantedColoring planted = planted_3colorable(8, 0.5, 2);
  Experiment e;
  e.original = planted.graph;
  e.construction = Construction::blowup;
  e.R = 2;
  e.p = 1.0;
  e.trials = 10;
  e.target = 3;
  e.decode = DecodeRule::majority;
  const auto r = run_experiment(e);
  EXPECT_EQ(r.summary.successes, 10);
}

TEST(Experiment, NonHamiltonianStaysNo) {
  Experiment e;
  e.original = Graph::directed(4, {{1, 2}, {2, 3}, {3, 4}, {4, 2}});
  e.construction = Construction::ham;
  e.R = 2;
  e.p = 0.8;
  e.trials = 50;
  e.property = Property::hamiltonian;
  e.decode = DecodeRule::project;
  EXPECT_EQ(run_experiment(e).summary.successes, 0);
}

TEST(Experiment, CapErrorsCarryTheTrialIndex) {
  Experiment e;
  e.original = Graph::undirected(50, {});
  e.p = 0.99;
  e.trials = 3;
  e.property = Property::alpha_at_least;
  e.target = 1;
  try {
    run_experiment(e);
    FAIL();
  } catch (const CapExceeded& x) {
    EXPECT_NE(std::string(x.what()).find("trial 0"), std::string::npos);
  }
}

TEST(Experiment, ValidationRejectsMismatches) {
  Experiment e;
  e.original = SubsetSumInstance({1}, 1);
  e.property = Property::hamiltonian;
  EXPECT_THROW(e.validate(), Error);
  e.property = Property::lift;
  EXPECT_THROW(e.validate(), Error);
  e.property = Property::ss_feasible;
  e.trials = 0;
  EXPECT_THROW(e.validate(), Error);
}

TEST(Experiment, DescriptionFile) {
  const auto dir = temp_dir();
  write(dir / "tri.graph", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  write(dir / "tri.exp",
        "# three colors survive any deletion\nname = tri\ninstance = tri.graph\nformat = graph\n"
        "construction = blowup\nR = 2\nmode = edge\np = 0.5\nseed = 9\ntrials = 12\n"
        "property = colorable\ntarget = 3\ndecode = majority\nworkers = 2\n");
  const Experiment e = load_experiment(dir / "tri.exp");
  EXPECT_EQ(e.name, "tri");
  EXPECT_EQ(e.R, 2);
  EXPECT_EQ(e.trials, 12);
  EXPECT_EQ(e.target, 3);
  EXPECT_EQ(std::get<Graph>(e.original).edge_count(), 3u);
  // Majority decoding can clash after deletions, but the blowup stays 3-colorable.
  for (const TrialReport& t : run_experiment(e).trials) EXPECT_NE(t.verdict, Verdict::no);
  Experiment plain = e;
  plain.decode = DecodeRule::none;
  EXPECT_EQ(run_experiment(plain).summary.successes, 12);

  EXPECT_THROW(parse_experiment("instance = tri.graph\nformat = graph\nbogus = 1\n", dir), ParseError);
  EXPECT_THROW(parse_experiment("instance = tri.graph\nformat = graph\nR = x\n", dir), ParseError);
  EXPECT_THROW(parse_experiment("format = graph\n", dir), ParseError);
  EXPECT_THROW(parse_experiment("instance = tri.graph\nformat = graph\np = 0.1\np = 0.2\n", dir), ParseError);
}

TEST(Turan, Examples) {
  const TuranReport tri = check_turan_bound(complete(3));
  EXPECT_EQ(tri.bound, 1);
  EXPECT_EQ(tri.slack, 0);
  const TuranReport empty = check_turan_bound(Graph::undirected(5, {}));
  EXPECT_EQ(empty.bound, 5);
  EXPECT_EQ(empty.alpha, 5);
  const TuranReport c5 = check_turan_bound(cycle(5));
  EXPECT_EQ(c5.bound, Rational(5, 3));
  EXPECT_EQ(c5.slack, Rational(1, 3));
  EXPECT_TRUE(c5.holds);
}

TEST(Turan, EdgeCountCorollaryAgainstSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Graph g = random_graph(1 + static_cast<int>(seed % 7), 0.5, seed);
    const EdgeCountReport r = check_edge_count_corollary(g);
    EXPECT_EQ(r.violations, 0);
    EXPECT_EQ(r.k, oracle::alpha(g) + 1);
  }
}

TEST(AlphaPercolation, FullProbabilityKeepsAlpha) {
  const Graph g = random_graph(10, 0.5, 1);
  const auto r = check_alpha_percolation(g, 1.0, 20, 3, {1 / std::log(10.0) + 1e-9, 1.0});
  for (int a : r.percolated_alpha) EXPECT_EQ(a, r.alpha);
  for (const auto& s : r.sweep) EXPECT_EQ(s.frequency.successes, 0);
}

TEST(AlphaPercolation, CompleteGraph) {
  const auto r = check_alpha_percolation(complete(20), 0.5, 500, 7, {3.0});
  EXPECT_EQ(r.alpha, 1);
  EXPECT_EQ(r.sweep[0].frequency.successes, 0);
  for (int a : r.percolated_alpha) EXPECT_LE(a, 3 * std::log(10.0) / 0.5);
}

TEST(AlphaPercolation, EdgelessUnchanged) {
  const auto r = check_alpha_percolation(Graph::undirected(8, {}), 0.3, 20, 1, {1.0});
  for (int a : r.percolated_alpha) EXPECT_EQ(a, 8);
}

TEST(Krr, BipartiteSearchAgainstBruteForce) {
  SplitMix64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    const int L = 1 + static_cast<int>(rng.below(6));
    const int Rn = 1 + static_cast<int>(rng.below(6));
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(L));
    for (auto& m : adj) m = rng.next() & ((1ULL << Rn) - 1);
    for (int t = 0; t <= 6; ++t) {
      bool expected = false;
      for (std::uint32_t A = 0; A < (1U << L) && !expected; ++A) {
        if (std::popcount(A) < t) continue;
        std::uint64_t common = (1ULL << Rn) - 1;
        for (int i = 0; i < L; ++i)
          if (A >> i & 1U) common &= ~adj[i];
        expected = std::popcount(common) >= t;
      }
      EXPECT_EQ(has_bipartite_independent_set(adj, Rn, t), expected);
    }
  }
}

TEST(Krr, Examples) {
  const auto full = check_krr_lemma(8, 1.0, 20, 1, {0.5, 1.0});
  for (const auto& s : full.sweep) EXPECT_EQ(s.frequency.successes, 0);
  const auto r = check_krr_lemma(16, 0.5, 1000, 2, {4.0});
  EXPECT_LE(r.sweep[0].frequency.estimate, r.bound + 0.01);
  // C large enough that t exceeds R: vacuous.
  const auto vac = check_krr_lemma(8, 0.5, 50, 3, {100.0});
  EXPECT_EQ(vac.sweep[0].frequency.successes, 0);
}

TEST(Sandwich, Examples) {
  const auto full = check_vc_sandwich(cycle(5), 3, 1.0, 5, 1, {1.0});
  for (int a : full.percolated_alpha) EXPECT_EQ(a, 2 * 3);
  const auto edge = check_vc_sandwich(Graph::undirected(2, {{1, 2}}), 6, 0.6, 300, 2, {0.1, 0.5, 1.0, 2.0});
  EXPECT_EQ(edge.lower_violations, 0);
  for (std::size_t i = 1; i < edge.sweep.size(); ++i)
    EXPECT_LE(edge.sweep[i].frequency.successes, edge.sweep[i - 1].frequency.successes);
}

TEST(Concentration, SatisfiableStaysSatisfied) {
  const CspInstance f = parse_cnf("p cnf 3 4\n1 2 0\n-1 3 0\n2 -3 0\n1 0\n");
  for (PercolationMode m : {PercolationMode::clause, PercolationMode::variable}) {
    const auto r = check_val_concentration(f, m, 0.4, 0.2, 100, 3);
    EXPECT_EQ(r.value, 1);
    EXPECT_TRUE(r.one_sided_holds);
    for (const Rational& v : r.percolated) EXPECT_EQ(v, 1);
  }
}

TEST(Concentration, FullProbabilityNeverDeviates) {
  const CspInstance f = random_kcnf(5, 12, 2, 1);
  EXPECT_EQ(check_val_concentration(f, PercolationMode::clause, 1.0, 0.01, 30, 1).deviation.successes, 0);
}

TEST(Concentration, ComplementaryUnitsMatchExactProbability) {
  // Blowup of (x),(not x) with R = 4: copy j carries (x_j) and (not x_j).
  // Exact deviation probability by enumerating all 2^8 survival patterns.
  Rational exact = 0;
  for (std::uint32_t pattern = 0; pattern < 256; ++pattern) {
    int best = 0;
    int total = 0;
    for (int j = 0; j < 4; ++j) {
      const int pos = pattern >> (2 * j) & 1U;
      const int neg = pattern >> (2 * j + 1) & 1U;
      best += std::max(pos, neg);
      total += pos + neg;
    }
    const double v = total == 0 ? 1.0 : static_cast<double>(best) / total;
    if (std::abs(v - 0.5) >= 0.2) exact += Rational(1, 256);
  }
  const auto blowup = csp_cloud_blowup(parse_cnf("p cnf 1 2\n1 0\n-1 0\n"), 4);
  const int trials = 4000;
  const auto r = check_val_concentration(blowup.formula, PercolationMode::clause, 0.5, 0.2, trials, 11);
  EXPECT_EQ(r.value, Rational(1, 2));
  const double q = exact.convert_to<double>();
  EXPECT_NEAR(r.deviation.estimate, q, 3 * std::sqrt(q * (1 - q) / trials));
}

TEST(Chernoff, DegenerateProbabilities) {
  for (double p : {0.0, 1.0}) {
    const auto r = check_chernoff(100, p, 10, 5, 1, {1.0});
    for (double d : r.max_deviation) EXPECT_EQ(d, 0.0);
    EXPECT_EQ(r.sweep[0].frequency.successes, 0);
  }
}

TEST(Chernoff, CorollaryRegime) {
  const auto r = check_chernoff(10000, 0.5, 100, 200, 4, {9.0});
  EXPECT_LE(r.sweep[0].frequency.estimate, 0.01);
}

TEST(Generators, PlantedColoringIsLegal) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PlantedColoring p = planted_3colorable(12, 0.5, seed);
    EXPECT_TRUE(is_legal_coloring(p.graph, p.coloring));
    EXPECT_EQ(p.coloring.color_count(), 3);
  }
}

TEST(Generators, PlantedSubsetSumIsFeasible) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PlantedSubsetSum p = planted_subset_sum(8, 100, seed);
    EXPECT_TRUE(is_subset_sum_witness(p.instance, p.witness));
  }
}

TEST(Generators, KcnfShape) {
  const CspInstance f = random_kcnf(6, 30, 3, 2);
  EXPECT_EQ(f.clause_count(), 30u);
  for (const auto& c : f.clauses()) EXPECT_EQ(c.arity(), 3);
  EXPECT_THROW(random_kcnf(2, 10, 2, 1), Error);  // only 4 distinct 2-clauses exist
  EXPECT_EQ(random_graph(9, 0.3, 5), random_graph(9, 0.3, 5));
}
