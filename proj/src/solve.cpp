#include "perc/solve.hpp"

#include "perc/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>

namespace perc {

namespace {

void require_cap(int size, int cap, const char* what) {
  if (size > cap)
    throw CapExceeded(std::string(what) + ": size " + std::to_string(size) + " exceeds cap " +
                      std::to_string(cap));
}

void require_undirected(const Graph& g, const char* what) {
  if (g.is_directed()) throw Error(std::string(what) + " expects an undirected graph");
}

// Bitset adjacency for graphs of at most 64 vertices, 0-based.
std::vector<std::uint64_t> neighbor_masks(const Graph& g) {
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const Edge& e : g.edges()) {
    nbr[e.u - 1] |= std::uint64_t{1} << (e.v - 1);
    if (!g.is_directed()) nbr[e.v - 1] |= std::uint64_t{1} << (e.u - 1);
  }
  return nbr;
}

// ---------------------------------------------------------------------------
// Coloring

class ColoringSearch {
 public:
  ColoringSearch(const Graph& g, int q) : q_(q), adj_(g.adjacency()), n_(g.vertex_count()) {
    color_.assign(static_cast<std::size_t>(n_) + 1, 0);
    domain_.assign(static_cast<std::size_t>(n_) + 1, (q == 32) ? ~0U : ((1U << q) - 1));
  }

  bool run() { return extend(0, 0); }

  Coloring coloring() const { return Coloring(std::vector<int>(color_.begin() + 1, color_.end())); }

 private:
  int pick() const {
    int best = 0;
    int best_dom = std::numeric_limits<int>::max();
    int best_deg = -1;
    for (int v = 1; v <= n_; ++v) {
      if (color_[v]) continue;
      const int dom = std::popcount(domain_[v]);
      const int deg = static_cast<int>(adj_[v].size());
      if (dom < best_dom || (dom == best_dom && deg > best_deg)) {
        best = v;
        best_dom = dom;
        best_deg = deg;
      }
    }
    return best;
  }

  bool extend(int colored, int max_used) {
    if (colored == n_) return true;
    const int v = pick();
    // Colors above max_used + 1 are symmetric to max_used + 1.
    const int limit = std::min(q_, max_used + 1);
    for (int c = 1; c <= limit; ++c) {
      const std::uint32_t bit = 1U << (c - 1);
      if (!(domain_[v] & bit)) continue;
      std::vector<std::pair<int, std::uint32_t>> trail;
      bool wiped = false;
      for (int w : adj_[v]) {
        if (color_[w] || !(domain_[w] & bit)) continue;
        trail.emplace_back(w, domain_[w]);
        domain_[w] &= ~bit;
        if (domain_[w] == 0) {
          wiped = true;
          break;
        }
      }
      if (!wiped) {
        color_[v] = c;
        if (extend(colored + 1, std::max(max_used, c))) return true;
        color_[v] = 0;
      }
      for (auto it = trail.rbegin(); it != trail.rend(); ++it) domain_[it->first] = it->second;
    }
    return false;
  }

  int q_;
  std::vector<std::vector<int>> adj_;
  int n_;
  std::vector<int> color_;
  std::vector<std::uint32_t> domain_;
};

// ---------------------------------------------------------------------------
// Independent set

class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const Graph& g) : nbr_(neighbor_masks(g)) {}

  void run(std::uint64_t all) { search(all, 0, 0); }

  int best_size() const { return best_size_; }
  std::uint64_t best_set() const { return best_set_; }

 private:
  // Greedy clique cover of P in index order; its size bounds alpha(G[P]).
  int clique_cover(std::uint64_t p) const {
    std::uint64_t cliques[64];
    int count = 0;
    while (p) {
      const int v = std::countr_zero(p);
      p &= p - 1;
      int k = 0;
      while (k < count && (cliques[k] & ~nbr_[v])) ++k;
      if (k == count) cliques[count++] = 0;
      cliques[k] |= std::uint64_t{1} << v;
    }
    return count;
  }

  void record(std::uint64_t set, int size) {
    if (size > best_size_) {
      best_size_ = size;
      best_set_ = set;
    }
  }

  void search(std::uint64_t p, std::uint64_t current, int size) {
    if (p == 0) {
      record(current, size);
      return;
    }
    if (size + clique_cover(p) <= best_size_) return;
    int v = -1;
    int max_deg = -1;
    for (std::uint64_t rest = p; rest; rest &= rest - 1) {
      const int u = std::countr_zero(rest);
      const int deg = std::popcount(nbr_[u] & p);
      if (deg > max_deg) {
        max_deg = deg;
        v = u;
      }
    }
    if (max_deg == 0) {
      record(current | p, size + std::popcount(p));
      return;
    }
    const std::uint64_t bit = std::uint64_t{1} << v;
    search(p & ~nbr_[v] & ~bit, current | bit, size + 1);
    search(p & ~bit, current, size);
  }

  std::vector<std::uint64_t> nbr_;
  int best_size_ = -1;
  std::uint64_t best_set_ = 0;
};

// ---------------------------------------------------------------------------
// Hamiltonicity

std::vector<int> ham_subset_dp(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n), 0);
  for (const Edge& e : g.edges()) {
    out[e.u - 1] |= 1U << (e.v - 1);
    if (!g.is_directed()) out[e.v - 1] |= 1U << (e.u - 1);
  }
  // ends[mask]: vertices v such that some path from vertex 0 covers mask and ends at v.
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<std::uint32_t> ends(full + 1, 0);
  ends[1] = 1;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if (!(mask & 1U) || !ends[mask]) continue;
    for (std::uint32_t rest = ends[mask]; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      std::uint32_t next = out[v] & ~static_cast<std::uint32_t>(mask);
      for (; next; next &= next - 1) {
        const int w = std::countr_zero(next);
        ends[mask | (std::size_t{1} << w)] |= 1U << w;
      }
    }
  }
  std::uint32_t closing = 0;
  for (int v = 1; v < n; ++v)
    if ((ends[full] >> v & 1U) && (out[v] & 1U)) closing |= 1U << v;
  if (!closing) return {};
  std::vector<int> rev;
  std::size_t mask = full;
  int v = std::countr_zero(closing);
  while (v != 0) {
    rev.push_back(v + 1);
    const std::size_t prev = mask & ~(std::size_t{1} << v);
    std::uint32_t cand = ends[prev];
    int u = -1;
    for (; cand; cand &= cand - 1) {
      const int w = std::countr_zero(cand);
      if (out[w] >> v & 1U) {
        u = w;
        break;
      }
    }
    mask = prev;
    v = u;
  }
  rev.push_back(1);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

class HamBacktrack {
 public:
  explicit HamBacktrack(const Graph& g) : n_(g.vertex_count()) {
    out_.assign(static_cast<std::size_t>(n_), 0);
    in_.assign(static_cast<std::size_t>(n_), 0);
    for (const Edge& e : g.edges()) {
      add(e.u - 1, e.v - 1);
      if (!g.is_directed()) add(e.v - 1, e.u - 1);
    }
  }

  std::vector<int> run() {
    path_.assign(1, 0);
    const std::uint64_t all = (n_ == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
    if (!extend(0, all & ~std::uint64_t{1})) return {};
    std::vector<int> cycle;
    for (int v : path_) cycle.push_back(v + 1);
    return cycle;
  }

 private:
  void add(int u, int v) {
    out_[u] |= std::uint64_t{1} << v;
    in_[v] |= std::uint64_t{1} << u;
  }

  bool feasible(int current, std::uint64_t unvisited) const {
    const std::uint64_t may_enter = unvisited | (std::uint64_t{1} << current);
    const std::uint64_t may_leave = unvisited | std::uint64_t{1};
    for (std::uint64_t rest = unvisited; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (!(in_[v] & may_enter) || !(out_[v] & may_leave)) return false;
    }
    return true;
  }

  bool extend(int current, std::uint64_t unvisited) {
    if (!unvisited) return (out_[current] & std::uint64_t{1}) != 0;
    if (!feasible(current, unvisited)) return false;
    for (std::uint64_t next = out_[current] & unvisited; next; next &= next - 1) {
      const int w = std::countr_zero(next);
      path_.push_back(w);
      if (extend(w, unvisited & ~(std::uint64_t{1} << w))) return true;
      path_.pop_back();
    }
    return false;
  }

  int n_;
  std::vector<std::uint64_t> out_;
  std::vector<std::uint64_t> in_;
  std::vector<int> path_;
};

// ---------------------------------------------------------------------------
// Subset sum

SubsetSumResult meet_in_middle(const SubsetSumInstance& s) {
  const int n = static_cast<int>(s.item_count());
  const int half = n / 2;
  const auto items = s.items();
  auto sums = [&](int lo, int hi) {
    const std::size_t count = std::size_t{1} << (hi - lo);
    std::vector<std::pair<BigInt, std::uint32_t>> out(count);
    out[0] = {BigInt(0), 0};
    for (std::size_t mask = 1; mask < count; ++mask) {
      const int bit = std::countr_zero(mask);
      const std::size_t prev = mask & (mask - 1);
      out[mask] = {out[prev].first + items[static_cast<std::size_t>(lo + bit)], static_cast<std::uint32_t>(mask)};
    }
    return out;
  };
  auto left = sums(0, half);
  auto right = sums(half, n);
  std::sort(right.begin(), right.end());
  for (const auto& [sum, mask] : left) {
    if (sum > s.target()) continue;
    const BigInt need = s.target() - sum;
    auto it = std::lower_bound(right.begin(), right.end(), need,
                               [](const auto& entry, const BigInt& v) { return entry.first < v; });
    if (it == right.end() || it->first != need) continue;
    SubsetSumResult r{true, {}};
    for (int i = 0; i < half; ++i)
      if (mask >> i & 1U) r.witness.push_back(i + 1);
    for (int i = 0; i < n - half; ++i)
      if (it->second >> i & 1U) r.witness.push_back(half + i + 1);
    return r;
  }
  return {};
}

class SubsetSumBranch {
 public:
  explicit SubsetSumBranch(const SubsetSumInstance& s) : target_(s.target()) {
    const auto items = s.items();
    order_.resize(items.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return items[a] > items[b]; });
    for (int i : order_) values_.push_back(items[i]);
    suffix_.assign(values_.size() + 1, BigInt(0));
    for (std::size_t i = values_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + values_[i];
  }

  SubsetSumResult run() {
    SubsetSumResult r;
    if (!search(0, BigInt(0))) return r;
    r.feasible = true;
    for (int pos : chosen_) r.witness.push_back(order_[pos] + 1);
    std::sort(r.witness.begin(), r.witness.end());
    return r;
  }

 private:
  bool search(std::size_t i, const BigInt& current) {
    if (current == target_) return true;
    if (i == values_.size() || current + suffix_[i] < target_) return false;
    const BigInt with = current + values_[i];
    if (with <= target_) {
      chosen_.push_back(static_cast<int>(i));
      if (search(i + 1, with)) return true;
      chosen_.pop_back();
    }
    return search(i + 1, current);
  }

  BigInt target_;
  std::vector<int> order_;
  std::vector<BigInt> values_;
  std::vector<BigInt> suffix_;
  std::vector<int> chosen_;
};

}  // namespace

ColoringResult is_k_colorable(const Graph& g, int q) {
  require_undirected(g, "is_k_colorable");
  require_cap(g.vertex_count(), kMaxColoringVertices, "is_k_colorable");
  if (q < 1 || q > 32) throw Error("color count must lie in 1..32");
  ColoringSearch search(g, q);
  if (!search.run()) return {};
  return {true, search.coloring()};
}

ChromaticResult chromatic_number(const Graph& g) {
  require_undirected(g, "chromatic_number");
  require_cap(g.vertex_count(), kMaxChromaticVertices, "chromatic_number");
  if (g.vertex_count() == 0) return {0, Coloring{}};
  for (int q = 1;; ++q) {
    auto r = is_k_colorable(g, q);
    if (r.colorable) return {q, *r.witness};
  }
}

VertexSetResult max_independent_set(const Graph& g) {
  require_undirected(g, "max_independent_set");
  require_cap(g.vertex_count(), kMaxIndependentSetVertices, "max_independent_set");
  const int n = g.vertex_count();
  IndependentSetSearch search(g);
  search.run(n == 0 ? 0 : ((std::uint64_t{1} << n) - 1));
  VertexSetResult r{search.best_size(), {}};
  for (int v = 0; v < n; ++v)
    if (search.best_set() >> v & 1U) r.witness.push_back(v + 1);
  return r;
}

VertexSetResult min_vertex_cover(const Graph& g) {
  require_undirected(g, "min_vertex_cover");
  require_cap(g.vertex_count(), kMaxIndependentSetVertices, "min_vertex_cover");
  auto is = max_independent_set(g);
  VertexSetResult r{g.vertex_count() - is.value, {}};
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (int v : is.witness) in[v] = 1;
  for (int v = 1; v <= g.vertex_count(); ++v)
    if (!in[v]) r.witness.push_back(v);
  return r;
}

HamiltonianResult has_hamiltonian_cycle(const Graph& g, HamMethod method) {
  const int n = g.vertex_count();
  if (method == HamMethod::automatic) method = n <= 16 ? HamMethod::subset_dp : HamMethod::backtracking;
  if (method == HamMethod::subset_dp) require_cap(n, kMaxHamDpVertices, "has_hamiltonian_cycle (subset DP)");
  else require_cap(n, kMaxHamBacktrackVertices, "has_hamiltonian_cycle (backtracking)");
  if (n < 2 || (!g.is_directed() && n < 3)) return {};
  std::vector<int> cycle = method == HamMethod::subset_dp ? ham_subset_dp(g) : HamBacktrack(g).run();
  if (cycle.empty()) return {};
  return {true, std::move(cycle)};
}

bool is_hamiltonian_cycle(const Graph& g, std::span<const int> cycle) {
  const int n = g.vertex_count();
  if (static_cast<int>(cycle.size()) != n || n < 2 || (!g.is_directed() && n < 3)) return false;
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : cycle) {
    if (v < 1 || v > n || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  return true;
}

Rational eval_assignment(const CspInstance& f, const Assignment& a) {
  if (a.size() != f.variable_count())
    throw Error("assignment covers " + std::to_string(a.size()) + " variables, formula has " +
                std::to_string(f.variable_count()));
  if (f.clause_count() == 0) return Rational(1);
  std::size_t satisfied = 0;
  for (const Clause& c : f.clauses()) {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < c.vars().size(); ++i)
      if (a[c.vars()[i]]) code |= 1U << i;
    if (c.value(code)) ++satisfied;
  }
  return Rational(BigInt(satisfied), BigInt(f.clause_count()));
}

CspResult max_csp_value(const CspInstance& f) {
  const int n = f.variable_count();
  require_cap(n, kMaxCspVariables, "max_csp_value");
  if (f.clause_count() == 0) return {Rational(1), std::nullopt};
  struct Compiled {
    std::vector<int> shifts;
    const Clause* clause;
  };
  std::vector<Compiled> compiled;
  for (const Clause& c : f.clauses()) {
    Compiled k{{}, &c};
    for (int v : c.vars()) k.shifts.push_back(v - 1);
    compiled.push_back(std::move(k));
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  std::size_t best = 0;
  std::uint64_t best_code = 0;
  bool found = false;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::size_t satisfied = 0;
    for (const Compiled& k : compiled) {
      std::uint32_t local = 0;
      for (std::size_t i = 0; i < k.shifts.size(); ++i) local |= static_cast<std::uint32_t>((code >> k.shifts[i]) & 1U) << i;
      satisfied += k.clause->value(local);
    }
    if (!found || satisfied > best) {
      best = satisfied;
      best_code = code;
      found = true;
      if (best == f.clause_count()) break;
    }
  }
  std::vector<std::uint8_t> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[i] = static_cast<std::uint8_t>((best_code >> i) & 1U);
  return {Rational(BigInt(best), BigInt(f.clause_count())), Assignment(std::move(values))};
}

SubsetSumResult subset_sum_decide(const SubsetSumInstance& s, SubsetSumMethod method) {
  const int n = static_cast<int>(s.item_count());
  if (method == SubsetSumMethod::automatic)
    method = n <= 24 ? SubsetSumMethod::meet_in_middle : SubsetSumMethod::branch_and_bound;
  if (method == SubsetSumMethod::meet_in_middle) {
    require_cap(n, kMaxMeetInMiddleItems, "subset_sum_decide (meet in the middle)");
    return meet_in_middle(s);
  }
  require_cap(n, kMaxBranchAndBoundItems, "subset_sum_decide (branch and bound)");
  return SubsetSumBranch(s).run();
}

bool is_subset_sum_witness(const SubsetSumInstance& s, std::span<const int> items) {
  std::vector<char> used(s.item_count() + 1, 0);
  BigInt sum = 0;
  for (int i : items) {
    if (i < 1 || i > static_cast<int>(s.item_count()) || used[i]) return false;
    used[i] = 1;
    sum += s.items()[static_cast<std::size_t>(i - 1)];
  }
  return sum == s.target();
}

}  // namespace perc
