#pragma once

// Monte Carlo robustness harness: experiments over (instance, construction,
// percolation, property), bound checkers, instance generators and CSV output.
//
// Everything random is driven by the percolation seeding contract or by the
// SplitMix64 stream below, never by std distributions, so results are
// identical across standard libraries.

#include "perc/decode.hpp"
#include "perc/instances.hpp"
#include "perc/percolate.hpp"
#include "perc/reduce.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perc {

/// SplitMix64 sequence; the integer helpers avoid modulo bias by rejection.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) noexcept { return unit() < p; }
  /// Uniform in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n) noexcept;

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Frequencies

struct FrequencySummary {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double estimate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 1.0;
};

/// 95% Wilson score interval; trials == 0 gives [0, 1].
FrequencySummary wilson(std::int64_t successes, std::int64_t trials);

// ---------------------------------------------------------------------------
// Experiments

enum class Construction { none, blowup, coloring, ham, csp_blowup, subset_sum };
enum class Property { colorable, alpha_at_least, vc_at_most, hamiltonian, val_at_least, ss_feasible, lift };
enum class DecodeRule { none, majority, threshold, expected, project, lift };
enum class Verdict { yes, no, decode_fail };

Construction parse_construction(std::string_view name);
std::string_view construction_name(Construction c);
Property parse_property(std::string_view name);
std::string_view property_name(Property p);
DecodeRule parse_decode_rule(std::string_view name);
std::string_view decode_rule_name(DecodeRule d);
std::string_view verdict_name(Verdict v);

struct Experiment {
  std::string name = "experiment";
  Instance original;
  Construction construction = Construction::none;
  int R = 1;
  double C = 1.0;        // coloring blowup constant
  int C_prime = 0;       // subset-sum gadget exponent; 0 picks the smallest valid one
  bool enforce_offset_bound = true;
  PercolationMode mode = PercolationMode::edge;
  double p = 1.0;
  std::uint64_t seed = 0;
  std::int64_t trials = 1;
  Property property = Property::colorable;
  /// q for colorable, a for alpha_at_least, b for vc_at_most, v for val_at_least.
  Rational target = 0;
  DecodeRule decode = DecodeRule::none;
  int decode_threshold = 1;
  /// Thread count; has no influence on the results.
  int workers = 1;

  /// Throws Error when fields are inconsistent (e.g. property does not fit the instance).
  void validate() const;
};

struct TrialReport {
  std::int64_t trial = 0;
  std::uint64_t seed = 0;  // trial_seed(seed, trial)
  std::int64_t survivors = 0;
  Verdict verdict = Verdict::no;
  std::string detail;
};

struct ExperimentResult {
  FrequencySummary summary;  // successes = yes verdicts
  std::vector<TrialReport> trials;
};

/// Trials are independent; results are collected by index, so the output does
/// not depend on the worker count. Errors are rethrown tagged with the lowest
/// failing trial index.
ExperimentResult run_experiment(const Experiment& e);

/// One trial of e; exposed for tests.
TrialReport run_trial(const Experiment& e, std::int64_t trial);

/// Flat key=value description; '#' starts a comment. The instance path is
/// resolved against base_dir.
Experiment parse_experiment(std::string_view text, const std::filesystem::path& base_dir);
Experiment load_experiment(const std::filesystem::path& file);

/// Header "trial,seed,survivors,verdict,detail", one row per trial and, when
/// any trial ran, "summary,,,<successes>/<trials>,<wilson_lo>:<wilson_hi>".
std::string report_csv(const ExperimentResult& r);

// ---------------------------------------------------------------------------
// Bound checkers

struct TuranReport {
  int alpha = 0;
  Rational bound;  // l^2 / (2e + l)
  Rational slack;  // alpha - bound
  bool holds = false;
};
TuranReport check_turan_bound(const Graph& g);

struct EdgeCountReport {
  int k = 0;               // alpha + 1
  std::int64_t subsets = 0;
  std::int64_t violations = 0;  // subsets of size >= k spanning < l(l-k)/2k edges
};
/// Exhaustive over vertex subsets; n <= 20.
EdgeCountReport check_edge_count_corollary(const Graph& g);

struct SweepPoint {
  double constant = 0.0;
  FrequencySummary frequency;
};

struct AlphaPercolationReport {
  int alpha = 0;
  std::vector<int> percolated_alpha;  // per trial
  std::vector<SweepPoint> sweep;      // frequency of alpha(G_p) > A (alpha/p) ln(np)
  std::optional<double> empirical_A;  // first A in the grid with frequency < 5%
};
AlphaPercolationReport check_alpha_percolation(const Graph& g, double p, std::int64_t trials, std::uint64_t seed,
                                               const std::vector<double>& A_grid);

struct KrrReport {
  int R = 0;
  double bound = 0.0;  // R^-3
  std::vector<SweepPoint> sweep;  // frequency of the bad event at t = ceil(C ln R / p)
};
/// Bad event: the edge-percolated K_{R,R} has an independent set with at least
/// t vertices on each side. R <= 64.
KrrReport check_krr_lemma(int R, double p, std::int64_t trials, std::uint64_t seed, const std::vector<double>& C_grid);

/// Whether the bipartite graph has t left and t right vertices with no edge
/// between them; adjacency[i] is the right-neighbor mask of left vertex i.
bool has_bipartite_independent_set(const std::vector<std::uint64_t>& adjacency, int right_count, int t);

struct SandwichReport {
  int alpha = 0;
  std::vector<int> percolated_alpha;
  std::int64_t lower_violations = 0;  // alpha R > alpha(H~)
  std::vector<SweepPoint> sweep;      // upper bound violated: alpha(H~) > alpha R + (C ln R / p) N
};
SandwichReport check_vc_sandwich(const Graph& g, int R, double p, std::int64_t trials, std::uint64_t seed,
                                 const std::vector<double>& C_grid);

struct ConcentrationReport {
  Rational value;                     // val(f)
  std::vector<Rational> percolated;   // per trial
  FrequencySummary deviation;         // |val(perc) - val(f)| >= epsilon
  bool one_sided_holds = true;        // val(f) = 1 implies val(perc) = 1
};
ConcentrationReport check_val_concentration(const CspInstance& f, PercolationMode mode, double p, double epsilon,
                                            std::int64_t trials, std::uint64_t seed);

struct ChernoffReport {
  double bound = 0.0;           // m^-3
  std::vector<double> max_deviation;  // per trial, max_j |S_j - pn|
  std::vector<SweepPoint> sweep;      // frequency of max deviation >= sqrt(C p n ln m)
};
ChernoffReport check_chernoff(int n, double p, int m, std::int64_t trials, std::uint64_t seed,
                              const std::vector<double>& C_grid);

// ---------------------------------------------------------------------------
// Generators

/// G(n, q): each pair is an edge with probability q.
Graph random_graph(int n, double q, std::uint64_t seed);
/// Directed G(n, q) without loops.
Graph random_digraph(int n, double q, std::uint64_t seed);
/// m distinct clauses, each an OR of k literals over distinct variables.
CspInstance random_kcnf(int n, int m, int k, std::uint64_t seed);

struct PlantedColoring {
  Graph graph;
  Coloring coloring;
};
/// Vertices get hidden colors 1..3 (every class nonempty for n >= 3);
/// differently colored pairs become edges with probability q.
PlantedColoring planted_3colorable(int n, double q, std::uint64_t seed);

struct PlantedSubsetSum {
  SubsetSumInstance instance;
  std::vector<int> witness;
};
/// Items uniform in [1, max_value]; the target sums a random nonempty subset.
PlantedSubsetSum planted_subset_sum(int n, std::int64_t max_value, std::uint64_t seed);

}  // namespace perc
