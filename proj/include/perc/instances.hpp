#pragma once

// Immutable instance types: graphs, Boolean CSP formulas, subset-sum
// instances, and their plain-text formats.
//
// Vertices and variables are 1-indexed, following DIMACS.

#include "perc/numeric.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace perc {

struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple graph on vertices 1..n. Undirected edges are stored once with u < v;
/// directed graphs may hold both (u,v) and (v,u). Edges are kept sorted.
class Graph {
 public:
  Graph() = default;

  /// Edges (u,v) and (v,u) name the same undirected edge; giving both is a
  /// duplicate. Throws InvalidInstance on self-loops, duplicates or bad indices.
  static Graph undirected(int n, std::vector<Edge> edges);
  static Graph directed(int n, std::vector<Edge> edges);

  bool is_directed() const noexcept { return directed_; }
  int vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// For undirected graphs the orientation of (u,v) is irrelevant.
  bool has_edge(int u, int v) const;

  /// out[v] lists successors of v (both directions when undirected); out[0] unused.
  std::vector<std::vector<int>> adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph(bool directed, int n, std::vector<Edge> edges);

  bool directed_ = false;
  int n_ = 0;
  std::vector<Edge> edges_;
};

inline constexpr int kMaxArity = 16;

/// A constraint over distinct variables with an explicit truth table. Bit j of
/// the table is the predicate value on the assignment whose binary encoding is
/// j, with vars()[0] as the least-significant bit.
class Clause {
 public:
  Clause(std::vector<int> vars, std::vector<bool> table);

  /// OR of signed DIMACS literals, e.g. {1, -2} is (x1 or not x2).
  static Clause disjunction(std::span<const int> literals);

  int arity() const noexcept { return static_cast<int>(vars_.size()); }
  std::span<const int> vars() const noexcept { return vars_; }
  const std::vector<bool>& table() const noexcept { return table_; }
  bool value(std::uint32_t code) const { return table_[code]; }

  /// The signed literals when the table is an OR of literals, otherwise empty.
  std::optional<std::vector<int>> as_disjunction() const;

  /// Same predicate over a different variable tuple of the same arity.
  Clause with_vars(std::vector<int> vars) const { return Clause(std::move(vars), table_); }

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause& a, const Clause& b) {
    if (auto c = a.vars_ <=> b.vars_; c != 0) return c;
    return a.table_ <=> b.table_;
  }

 private:
  std::vector<int> vars_;
  std::vector<bool> table_;
};

/// Simple unweighted CSP: all clauses pairwise distinct, arity <= k_max.
class CspInstance {
 public:
  CspInstance() = default;
  CspInstance(int n_vars, int k_max, std::vector<Clause> clauses);

  int variable_count() const noexcept { return n_vars_; }
  int k_max() const noexcept { return k_max_; }
  std::size_t clause_count() const noexcept { return clauses_.size(); }
  std::span<const Clause> clauses() const noexcept { return clauses_; }

  friend bool operator==(const CspInstance&, const CspInstance&) = default;

 private:
  int n_vars_ = 0;
  int k_max_ = 0;
  std::vector<Clause> clauses_;
};

/// Total 0/1 assignment to variables 1..n.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<std::uint8_t> values);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  bool operator[](int var) const { return values_[static_cast<std::size_t>(var - 1)] != 0; }
  std::span<const std::uint8_t> values() const noexcept { return values_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> values_;
};

class SubsetSumInstance {
 public:
  SubsetSumInstance() = default;
  SubsetSumInstance(std::vector<BigInt> items, BigInt target);

  std::size_t item_count() const noexcept { return items_.size(); }
  std::span<const BigInt> items() const noexcept { return items_; }
  const BigInt& target() const noexcept { return target_; }

  friend bool operator==(const SubsetSumInstance&, const SubsetSumInstance&) = default;

 private:
  std::vector<BigInt> items_;
  BigInt target_;
};

/// Colors 1..q for vertices 1..n.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<int> colors);

  int vertex_count() const noexcept { return static_cast<int>(colors_.size()); }
  int operator[](int v) const { return colors_[static_cast<std::size_t>(v - 1)]; }
  std::span<const int> colors() const noexcept { return colors_; }
  int color_count() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<int> colors_;
};

bool is_legal_coloring(const Graph& g, const Coloring& c);
bool is_independent_set(const Graph& g, std::span<const int> vertices);

// ---------------------------------------------------------------------------
// Text formats

enum class Format { graph, cnf, csp, ss };

using Instance = std::variant<Graph, CspInstance, SubsetSumInstance>;

Format parse_format(std::string_view name);
std::string_view format_name(Format f);

Graph parse_graph(std::string_view text);
CspInstance parse_cnf(std::string_view text);
CspInstance parse_csp(std::string_view text);
SubsetSumInstance parse_subset_sum(std::string_view text);
Instance parse_instance(std::string_view text, Format format);

std::string serialize(const Graph& g);
/// Throws InvalidInstance if some clause is not an OR of literals.
std::string serialize_cnf(const CspInstance& f);
std::string serialize_csp(const CspInstance& f);
std::string serialize(const SubsetSumInstance& s);
std::string serialize_instance(const Instance& inst, Format format);

}  // namespace perc
