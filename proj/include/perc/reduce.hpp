#pragma once

// Percolation-robust constructions: graph blowups, the Hamiltonicity clique
// gadget, CSP clause clouds, the subset-sum dominance gadget, and the
// parameter planner that picks the blowup factor R for a target p.

#include "perc/error.hpp"
#include "perc/instances.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perc {

enum class CloudKind { vertex, variable, clause, item };

std::string_view cloud_kind_name(CloudKind kind);

/// forward[i - 1] lists the produced elements (1-based ids) of original element i.
/// Clouds are pairwise disjoint.
struct CloudMap {
  CloudKind kind = CloudKind::vertex;
  std::vector<std::vector<int>> forward;

  int original_count() const noexcept { return static_cast<int>(forward.size()); }
  std::span<const int> cloud(int original) const { return forward[static_cast<std::size_t>(original - 1)]; }
  /// owner[produced] = original element, 0 when uncovered; size produced_count + 1.
  std::vector<int> owners(int produced_count) const;

  friend bool operator==(const CloudMap&, const CloudMap&) = default;
};

/// "c cloudmap <kind>" followed by lines "<original-id> : <produced-id> ...".
std::string serialize(const CloudMap& m);
CloudMap parse_cloud_map(std::string_view text);

struct GraphBlowup {
  Graph graph;
  CloudMap clouds;
  int R = 1;
};

/// Each vertex v becomes the independent set (v-1)R+1..vR; each edge becomes a
/// complete R x R bipartite graph between the clouds.
GraphBlowup blowup_graph(const Graph& g, int R);

/// R = max(1, ceil(C * sqrt(ln n))).
int coloring_blowup_factor(int n, double C);
GraphBlowup coloring_blowup(const Graph& g, double C);

/// Directed graph on N(1+R) vertices: originals 1..N, then U_i occupying
/// N+(i-1)R+1..N+iR. U_i is a complete digraph, i -> U_i, and U_i -> j for every
/// arc i -> j. clouds maps i to U_i.
GraphBlowup ham_gadget(const Graph& g, int R);

struct CspBlowup {
  CspInstance formula;
  CloudMap variable_clouds;  // x_i -> copies (i-1)R+1..iR
  CloudMap clause_clouds;    // C -> its R^arity copies
  int R = 1;
};

/// Each arity-a clause becomes R^a clauses, one per combination of copies, in
/// original order and then lexicographic combination order.
CspBlowup csp_cloud_blowup(const CspInstance& f, int R);

struct GadgetItem {
  int index = 0;       // original item i (1-based, after padding)
  bool primed = false; // J'_i when true, J_i otherwise
  int offset = 0;      // k in -R..R

  friend bool operator==(const GadgetItem&, const GadgetItem&) = default;
};

struct SubsetSumGadget {
  SubsetSumInstance instance;
  CloudMap clouds;                 // i -> items of J_i and J'_i
  std::vector<GadgetItem> labels;  // labels[id - 1]
  int N = 0;                       // items after padding
  bool padded = false;
  int R = 1;
  int C_prime = 1;
  int N_prime = 1;
  BigInt scale;               // N^3
  std::vector<BigInt> powers; // M_i = 2^{C'(N'+i)}, powers[i - 1]

  /// 1-based id of the item (i, primed, k).
  int item_id(int index, bool primed, int offset) const {
    return (index - 1) * 2 * (2 * R + 1) + (primed ? 2 * R + 1 : 0) + (offset + R) + 1;
  }
};

struct GadgetOptions {
  /// Require N*R < N^3 so that offsets cannot carry into the a_i * N^3 digits.
  bool enforce_offset_bound = true;
};

/// Pads with a zero item when N is odd. Throws Error naming the failed
/// inequality when C_prime is too small for the dominance argument.
SubsetSumGadget subset_sum_gadget(const SubsetSumInstance& s, int R, int C_prime, GadgetOptions options = {});

/// The first dominance inequality violated for (s padded, R, C_prime), if any.
/// With L = N^3, a = max a_i, U_j = (2R+1)(2 M_j + a_j L), every i needs
///   M_i > max(sum_{j<i} U_j, sum_{j<i} M_j + S L + 2R) + N (a L + R).
std::optional<std::string> gadget_dominance_violation(const SubsetSumInstance& s, int R, int C_prime);

/// Smallest C' >= 1 satisfying the dominance inequalities.
int minimal_gadget_exponent(const SubsetSumInstance& s, int R);

/// Appends a zero item when the count is odd.
SubsetSumInstance pad_to_even(const SubsetSumInstance& s);

// ---------------------------------------------------------------------------
// Parameter planning

enum class Theorem { coloring, vc_edge, vc_vertex, ham, csp_clause, csp_variable, subset_sum };

Theorem parse_theorem(std::string_view name);
std::string_view theorem_name(Theorem t);

struct PlanRequest {
  Theorem theorem = Theorem::coloring;
  int N = 1;             // original size (vertices, variables or items)
  double p = 1.0;        // target survival probability
  double epsilon = 0.5;
  double delta = 0.5;
  int k = 2;             // CSP arity
  double C = 1.0;        // log-factor constant
  std::int64_t size_cap = 10'000'000;  // produced elements
};

struct ReductionParams {
  int R = 1;
  double C = 1.0;
  int C_prime = 1;
  double epsilon = 0.5;
  double delta = 0.5;
  double p = 1.0;
  double c = 1.0;  // achieved exponent log(p n)/log(n) (log(p sqrt n)/log n for subset sum)
  std::int64_t produced_size = 0;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Smallest integral R satisfying the theorem's inequality. Throws Infeasible
/// when no R keeps the produced size under the cap.
ReductionParams plan_parameters(const PlanRequest& request);

/// Produced element count for blowup factor R.
std::int64_t produced_size(Theorem t, int N, int R, int k);

}  // namespace perc
