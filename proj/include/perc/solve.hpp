#pragma once

// Exact exponential-time oracles for desk-scale instances. Each oracle has a
// hard size cap and throws CapExceeded above it instead of timing out.
// Branching order is fixed, so witnesses are reproducible.

#include "perc/instances.hpp"

#include <optional>
#include <vector>

namespace perc {

inline constexpr int kMaxColoringVertices = 128;
inline constexpr int kMaxChromaticVertices = 20;
inline constexpr int kMaxIndependentSetVertices = 40;
inline constexpr int kMaxHamDpVertices = 22;
inline constexpr int kMaxHamBacktrackVertices = 60;
inline constexpr int kMaxCspVariables = 30;
inline constexpr int kMaxMeetInMiddleItems = 48;
inline constexpr int kMaxBranchAndBoundItems = 128;

struct ColoringResult {
  bool colorable = false;
  std::optional<Coloring> witness;
};

struct ChromaticResult {
  int chromatic_number = 0;
  Coloring witness;
};

struct VertexSetResult {
  int value = 0;
  std::vector<int> witness;  // ascending vertex indices
};

struct HamiltonianResult {
  bool hamiltonian = false;
  std::vector<int> cycle;  // starts at vertex 1; closing edge implied
};

struct CspResult {
  Rational value;
  std::optional<Assignment> witness;  // empty only for a formula with no clauses
};

struct SubsetSumResult {
  bool feasible = false;
  std::vector<int> witness;  // ascending 1-based item indices
};

/// Backtracking with smallest-domain-first selection (ties: max degree, then
/// index) and forward checking. q in 1..32.
ColoringResult is_k_colorable(const Graph& g, int q);
ChromaticResult chromatic_number(const Graph& g);

/// Branch-and-bound on a max-degree vertex with a greedy clique-cover bound.
VertexSetResult max_independent_set(const Graph& g);
/// n - alpha(g); the witness is the complement of a maximum independent set.
VertexSetResult min_vertex_cover(const Graph& g);

enum class HamMethod { automatic, subset_dp, backtracking };

/// Directed or undirected. Undirected cycles need at least 3 vertices.
HamiltonianResult has_hamiltonian_cycle(const Graph& g, HamMethod method = HamMethod::automatic);
bool is_hamiltonian_cycle(const Graph& g, std::span<const int> cycle);

/// Fraction of clauses satisfied; throws Error for an assignment of the wrong size.
Rational eval_assignment(const CspInstance& f, const Assignment& a);
/// Exhaustive over 2^n assignments; value 1 for a formula with no clauses.
CspResult max_csp_value(const CspInstance& f);

enum class SubsetSumMethod { automatic, meet_in_middle, branch_and_bound };

SubsetSumResult subset_sum_decide(const SubsetSumInstance& s,
                                  SubsetSumMethod method = SubsetSumMethod::automatic);
bool is_subset_sum_witness(const SubsetSumInstance& s, std::span<const int> items);

}  // namespace perc
