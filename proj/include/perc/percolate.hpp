#pragma once

// Random deletion processes with a platform-independent seeding contract.
//
// Every element (edge, vertex, clause, variable or item) owns a uniform value
// derive_stream(master_seed, trial_index, key) where key is the element's
// identity: an index for vertices/clauses/variables/items and (u << 32) | v for
// an edge (u,v). The element survives iff its value is < p. Keying by identity
// rather than iteration order couples runs across p: for a fixed seed the
// surviving set is monotone in p.

#include "perc/instances.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace perc {

enum class PercolationMode { edge, vertex, clause, variable, item };

PercolationMode parse_percolation_mode(std::string_view name);
std::string_view mode_name(PercolationMode mode);

struct PercolationSpec {
  PercolationMode mode = PercolationMode::edge;
  double p = 1.0;  // survival probability
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;

  /// Throws Error unless 0 <= p <= 1.
  void validate() const;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// trial_seed = mix64(mix64(master_seed) ^ mix64(trial_index ^ 0xA5A5A5A5A5A5A5A5)).
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
  return mix64(mix64(master_seed) ^ mix64(trial_index ^ 0xA5A5A5A5A5A5A5A5ULL));
}

/// Top 53 bits of mix64(trial_seed ^ mix64(element)) scaled into [0,1).
constexpr double derive_stream(std::uint64_t master_seed, std::uint64_t trial_index,
                               std::uint64_t element) noexcept {
  const std::uint64_t z = mix64(trial_seed(master_seed, trial_index) ^ mix64(element));
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

constexpr std::uint64_t edge_key(const Edge& e) noexcept {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.u)) << 32) |
         static_cast<std::uint32_t>(e.v);
}

inline bool survives(const PercolationSpec& spec, std::uint64_t element) noexcept {
  return derive_stream(spec.master_seed, spec.trial_index, element) < spec.p;
}

/// Which elements survived. kept holds 1-based indices in increasing order
/// (vertex, clause, variable, item modes); kept_edges holds edges (edge mode).
/// For vertex and variable modes relabel[old] is the new index, 0 if deleted.
struct SurvivorMap {
  PercolationMode mode = PercolationMode::edge;
  int original_size = 0;  // elements before percolation
  std::vector<Edge> kept_edges;
  std::vector<int> kept;
  std::vector<int> relabel;

  std::size_t survivor_count() const noexcept {
    return mode == PercolationMode::edge ? kept_edges.size() : kept.size();
  }
  /// Old index of new element i (1-based); valid for index modes.
  int origin(int i) const { return kept[static_cast<std::size_t>(i - 1)]; }

  friend bool operator==(const SurvivorMap&, const SurvivorMap&) = default;
};

/// "p survivors <mode> <original_size> <count>" then one "k <element>" line per survivor.
std::string serialize(const SurvivorMap& s);
SurvivorMap parse_survivor_map(std::string_view text);

template <typename T>
struct Percolated {
  T instance;
  SurvivorMap survivors;
};

Percolated<Graph> edge_percolate(const Graph& g, const PercolationSpec& spec);
/// Survivors are relabeled 1..m preserving order; the result is the induced subgraph.
Percolated<Graph> vertex_percolate(const Graph& g, const PercolationSpec& spec);
Percolated<CspInstance> clause_percolate(const CspInstance& f, const PercolationSpec& spec);
/// A clause survives iff all of its variables do; survivors are rewritten over new indices.
Percolated<CspInstance> variable_percolate(const CspInstance& f, const PercolationSpec& spec);
Percolated<SubsetSumInstance> item_percolate(const SubsetSumInstance& s, const PercolationSpec& spec);

/// Dispatches on spec.mode; throws Error when the mode does not fit the instance kind.
Percolated<Instance> percolate(const Instance& inst, const PercolationSpec& spec);

/// Induced subgraph on the given (ascending) vertices, relabeled 1..m.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

}  // namespace perc
