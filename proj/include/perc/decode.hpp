#pragma once

// Maps solutions of (possibly percolated) reduced instances back to the
// original instance.

#include "perc/instances.hpp"
#include "perc/percolate.hpp"
#include "perc/reduce.hpp"

#include <optional>
#include <string>
#include <vector>

namespace perc {

/// Cloud correspondence plus, when the reduced instance was percolated, which
/// elements survived. Without survivors the reduced instance is used as is.
struct DecodeContext {
  CloudMap clouds;
  std::optional<SurvivorMap> survivors;

  /// Label in the (percolated) reduced instance of produced element x, 0 if deleted.
  int current_label(int produced) const;
  /// Produced element behind label y of the (percolated) reduced instance.
  int produced_label(int current) const;
};

/// Plurality color of each original cloud's surviving vertices; ties go to the
/// smallest color. Throws DecodeError when a cloud has no surviving vertex.
Coloring majority_color_decode(const Coloring& c, const DecodeContext& ctx);

/// Originals whose clouds meet I in at least threshold vertices. I uses labels
/// of the (percolated) blowup.
std::vector<int> threshold_is_decode(std::span<const int> independent_set, int threshold, const DecodeContext& ctx);

struct CspDecoding {
  Assignment assignment;  // val(original) under it is >= expectation
  Rational expectation;   // E[val_sigma(original)] under the copy-sampling distribution
};

/// sigma(x_i) = 1 with probability (copies of x_i set to 1) / (surviving copies).
/// The expectation is exact; the returned assignment is derandomized by
/// conditional expectations over variables in index order (ties pick 0).
/// Throws DecodeError when some variable has no surviving copy.
CspDecoding csp_expected_decode(const CspInstance& original, const Assignment& t, const DecodeContext& ctx);

/// One draw of the copy-sampling decoder, seeded through derive_stream.
Assignment csp_sample_decode(const CspInstance& original, const Assignment& t, const DecodeContext& ctx,
                             std::uint64_t seed, std::uint64_t draw);

/// Restricts a gadget cycle to original vertices (labels <= N) and verifies the
/// result is a Hamiltonian cycle of the original; throws DecodeError otherwise.
std::vector<int> ham_cycle_project(std::span<const int> gadget_cycle, const Graph& original);

struct LiftResult {
  bool success = false;
  std::vector<int> items;          // labels in the percolated gadget, one per index i
  std::optional<int> failed_pair;  // odd index i of the first pair (i, i+1) without a +-k match
};

/// Lifts T (1-based original indices with sum S) to the percolated gadget by
/// pairing (1,2), (3,4), ... and choosing k in A_i with -k in A_{i+1}, smallest
/// |k| first, then positive k. A_i holds the surviving offsets of J_i when
/// i is in T and of J'_i otherwise. Failure is reported, not thrown.
LiftResult subset_sum_lift(std::span<const int> witness, const SubsetSumGadget& gadget,
                           const std::optional<SurvivorMap>& survivors);

/// "c decode <rule>" header, then the indices separated by spaces.
std::string serialize_witness(std::string_view rule, std::span<const int> indices);

}  // namespace perc
