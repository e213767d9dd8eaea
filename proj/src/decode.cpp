#include "perc/decode.hpp"

#include "perc/error.hpp"
#include "perc/solve.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace perc {

namespace {

bool survivors_apply(const DecodeContext& ctx) {
  if (!ctx.survivors) return false;
  switch (ctx.survivors->mode) {
    case PercolationMode::vertex: return ctx.clouds.kind == CloudKind::vertex;
    case PercolationMode::variable: return ctx.clouds.kind == CloudKind::variable;
    case PercolationMode::clause: return ctx.clouds.kind == CloudKind::clause;
    case PercolationMode::item: return ctx.clouds.kind == CloudKind::item;
    case PercolationMode::edge: return false;  // vertices keep their labels
  }
  return false;
}

}  // namespace

int DecodeContext::current_label(int produced) const {
  if (!survivors_apply(*this)) return produced;
  const SurvivorMap& s = *survivors;
  if (!s.relabel.empty())
    return produced >= 1 && produced < static_cast<int>(s.relabel.size()) ? s.relabel[produced] : 0;
  auto it = std::lower_bound(s.kept.begin(), s.kept.end(), produced);
  return (it != s.kept.end() && *it == produced) ? static_cast<int>(it - s.kept.begin()) + 1 : 0;
}

int DecodeContext::produced_label(int current) const {
  if (!survivors_apply(*this)) return current;
  return survivors->origin(current);
}

Coloring majority_color_decode(const Coloring& c, const DecodeContext& ctx) {
  std::vector<int> colors;
  for (int v = 1; v <= ctx.clouds.original_count(); ++v) {
    std::map<int, int> tally;
    for (int x : ctx.clouds.cloud(v)) {
      const int label = ctx.current_label(x);
      if (label == 0) continue;
      if (label > c.vertex_count()) throw DecodeError("coloring does not cover vertex " + std::to_string(label));
      ++tally[c[label]];
    }
    if (tally.empty()) throw DecodeError("cloud of vertex " + std::to_string(v) + " has no surviving vertex");
    int best = 0;
    int best_count = 0;
    for (const auto& [color, count] : tally)  // ascending colors: strict > keeps the smallest on ties
      if (count > best_count) {
        best = color;
        best_count = count;
      }
    colors.push_back(best);
  }
  return Coloring(std::move(colors));
}

std::vector<int> threshold_is_decode(std::span<const int> independent_set, int threshold, const DecodeContext& ctx) {
  if (threshold < 1) throw Error("decode threshold must be >= 1");
  int produced_max = 0;
  for (const auto& cloud : ctx.clouds.forward)
    for (int x : cloud) produced_max = std::max(produced_max, x);
  const std::vector<int> owner = ctx.clouds.owners(produced_max);
  std::vector<int> hits(static_cast<std::size_t>(ctx.clouds.original_count()) + 1, 0);
  for (int y : independent_set) {
    const int x = ctx.produced_label(y);
    if (x >= 1 && x <= produced_max && owner[x]) ++hits[owner[x]];
  }
  std::vector<int> out;
  for (int v = 1; v <= ctx.clouds.original_count(); ++v)
    if (hits[v] >= threshold) out.push_back(v);
  return out;
}

namespace {

// Probability that each original variable is set to 1.
std::vector<Rational> copy_frequencies(const Assignment& t, const DecodeContext& ctx) {
  std::vector<Rational> q;
  for (int i = 1; i <= ctx.clouds.original_count(); ++i) {
    int ones = 0;
    int alive = 0;
    for (int x : ctx.clouds.cloud(i)) {
      const int label = ctx.current_label(x);
      if (label == 0) continue;
      if (label > t.size()) throw DecodeError("assignment does not cover variable " + std::to_string(label));
      ++alive;
      ones += t[label] ? 1 : 0;
    }
    if (alive == 0) throw DecodeError("variable " + std::to_string(i) + " has no surviving copy");
    q.emplace_back(BigInt(ones), BigInt(alive));
  }
  return q;
}

Rational clause_probability(const Clause& c, const std::vector<Rational>& q) {
  Rational total = 0;
  const std::uint32_t codes = 1U << c.arity();
  for (std::uint32_t code = 0; code < codes; ++code) {
    if (!c.value(code)) continue;
    Rational pr = 1;
    for (int t = 0; t < c.arity() && pr != 0; ++t) {
      const Rational& qi = q[static_cast<std::size_t>(c.vars()[t] - 1)];
      pr *= ((code >> t) & 1U) ? qi : Rational(1) - qi;
    }
    total += pr;
  }
  return total;
}

Rational expected_value(const CspInstance& f, const std::vector<Rational>& q) {
  if (f.clause_count() == 0) return Rational(1);
  Rational sum = 0;
  for (const Clause& c : f.clauses()) sum += clause_probability(c, q);
  return sum / Rational(BigInt(f.clause_count()));
}

}  // namespace

CspDecoding csp_expected_decode(const CspInstance& original, const Assignment& t, const DecodeContext& ctx) {
  if (ctx.clouds.original_count() != original.variable_count())
    throw DecodeError("variable cloud map does not match the original formula");
  std::vector<Rational> q = copy_frequencies(t, ctx);
  CspDecoding out{Assignment{}, expected_value(original, q)};
  std::vector<std::uint8_t> values(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = 0;
    const Rational zero = expected_value(original, q);
    q[i] = 1;
    const Rational one = expected_value(original, q);
    values[i] = one > zero ? 1 : 0;
    q[i] = values[i];
  }
  out.assignment = Assignment(std::move(values));
  return out;
}

Assignment csp_sample_decode(const CspInstance& original, const Assignment& t, const DecodeContext& ctx,
                             std::uint64_t seed, std::uint64_t draw) {
  const std::vector<Rational> q = copy_frequencies(t, ctx);
  if (static_cast<int>(q.size()) != original.variable_count())
    throw DecodeError("variable cloud map does not match the original formula");
  std::vector<std::uint8_t> values(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double u = derive_stream(seed, draw, i + 1);
    values[i] = u < q[i].convert_to<double>() ? 1 : 0;
  }
  return Assignment(std::move(values));
}

std::vector<int> ham_cycle_project(std::span<const int> gadget_cycle, const Graph& original) {
  std::vector<int> projected;
  for (int v : gadget_cycle)
    if (v >= 1 && v <= original.vertex_count()) projected.push_back(v);
  if (!is_hamiltonian_cycle(original, projected))
    throw DecodeError("projected gadget cycle is not a Hamiltonian cycle of the original graph");
  return projected;
}

LiftResult subset_sum_lift(std::span<const int> witness, const SubsetSumGadget& gadget,
                           const std::optional<SurvivorMap>& survivors) {
  if (gadget.N % 2 != 0) throw Error("gadget must have an even number of indices");
  if (survivors && survivors->mode != PercolationMode::item) throw Error("lift expects item survivors");
  std::vector<char> in_t(static_cast<std::size_t>(gadget.N) + 1, 0);
  for (int i : witness) {
    if (i < 1 || i > gadget.N || in_t[i]) throw Error("witness index " + std::to_string(i) + " is invalid");
    in_t[i] = 1;
  }
  const DecodeContext ctx{gadget.clouds, survivors};
  auto label = [&](int i, int k) { return ctx.current_label(gadget.item_id(i, !in_t[i], k)); };

  LiftResult out;
  std::vector<int> chosen;
  for (int i = 1; i < gadget.N; i += 2) {
    std::optional<int> found;
    for (int mag = 0; mag <= gadget.R && !found; ++mag)
      for (int k : {mag, -mag}) {
        if (label(i, k) && label(i + 1, -k)) {
          found = k;
          break;
        }
        if (mag == 0) break;
      }
    if (!found) {
      out.failed_pair = i;
      return out;
    }
    chosen.push_back(label(i, *found));
    chosen.push_back(label(i + 1, -*found));
  }

  // Offsets cancel pairwise, so the lift hits S' exactly iff T sums to S.
  BigInt sum = 0;
  for (int y : chosen) sum += gadget.instance.items()[static_cast<std::size_t>(ctx.produced_label(y) - 1)];
  if (sum != gadget.instance.target()) throw DecodeError("lifted items miss the gadget target; witness does not sum to S");
  out.success = true;
  out.items = std::move(chosen);
  return out;
}

std::string serialize_witness(std::string_view rule, std::span<const int> indices) {
  std::ostringstream out;
  out << "c decode " << rule << '\n';
  for (std::size_t i = 0; i < indices.size(); ++i) out << (i ? " " : "") << indices[i];
  out << '\n';
  return out.str();
}

}  // namespace perc
