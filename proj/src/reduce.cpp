#include "perc/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace perc {

std::string_view cloud_kind_name(CloudKind kind) {
  switch (kind) {
    case CloudKind::vertex: return "vertex";
    case CloudKind::variable: return "variable";
    case CloudKind::clause: return "clause";
    case CloudKind::item: return "item";
  }
  return "?";
}

std::vector<int> CloudMap::owners(int produced_count) const {
  std::vector<int> owner(static_cast<std::size_t>(produced_count) + 1, 0);
  for (std::size_t i = 0; i < forward.size(); ++i)
    for (int x : forward[i]) {
      if (x < 1 || x > produced_count) throw Error("cloud map refers to produced element " + std::to_string(x));
      owner[x] = static_cast<int>(i) + 1;
    }
  return owner;
}

std::string serialize(const CloudMap& m) {
  std::ostringstream out;
  out << "c cloudmap " << cloud_kind_name(m.kind) << '\n';
  for (std::size_t i = 0; i < m.forward.size(); ++i) {
    out << i + 1 << " :";
    for (int x : m.forward[i]) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

CloudMap parse_cloud_map(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  CloudMap m;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "c") {
      std::string tag, kind;
      if (fields >> tag >> kind && tag == "cloudmap") {
        if (kind == "vertex") m.kind = CloudKind::vertex;
        else if (kind == "variable") m.kind = CloudKind::variable;
        else if (kind == "clause") m.kind = CloudKind::clause;
        else if (kind == "item") m.kind = CloudKind::item;
        else throw ParseError(number, "unknown cloud kind '" + kind + "'");
      }
      continue;
    }
    std::string colon;
    if (!(fields >> colon) || colon != ":") throw ParseError(number, "expected '<original-id> : <produced-id> ...'");
    int id = 0;
    try {
      id = std::stoi(first);
    } catch (const std::exception&) {
      throw ParseError(number, "bad original id '" + first + "'");
    }
    if (id != m.original_count() + 1) throw ParseError(number, "original ids must be consecutive from 1");
    std::vector<int> cloud;
    int x = 0;
    while (fields >> x) cloud.push_back(x);
    if (!fields.eof()) throw ParseError(number, "bad produced id");
    m.forward.push_back(std::move(cloud));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Graph constructions

namespace {

CloudMap contiguous_clouds(CloudKind kind, int n, int R, int first) {
  CloudMap m{kind, {}};
  m.forward.resize(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v)
    for (int j = 1; j <= R; ++j) m.forward[v - 1].push_back(first + (v - 1) * R + j - 1);
  return m;
}

void require_factor(int R) {
  if (R < 1) throw Error("blowup factor R must be >= 1, got " + std::to_string(R));
}

}  // namespace

GraphBlowup blowup_graph(const Graph& g, int R) {
  require_factor(R);
  if (g.is_directed()) throw Error("blowup_graph expects an undirected graph");
  const int n = g.vertex_count();
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() * static_cast<std::size_t>(R) * static_cast<std::size_t>(R));
  for (const Edge& e : g.edges())
    for (int a = 1; a <= R; ++a)
      for (int b = 1; b <= R; ++b) edges.push_back({(e.u - 1) * R + a, (e.v - 1) * R + b});
  return {Graph::undirected(n * R, std::move(edges)), contiguous_clouds(CloudKind::vertex, n, R, 1), R};
}

int coloring_blowup_factor(int n, double C) {
  if (n < 2) throw Error("coloring blowup needs n >= 2");
  if (!(C > 0)) throw Error("coloring blowup needs C > 0");
  return std::max(1, static_cast<int>(std::ceil(C * std::sqrt(std::log(static_cast<double>(n))))));
}

GraphBlowup coloring_blowup(const Graph& g, double C) {
  return blowup_graph(g, coloring_blowup_factor(g.vertex_count(), C));
}

GraphBlowup ham_gadget(const Graph& g, int R) {
  require_factor(R);
  if (!g.is_directed()) throw Error("ham_gadget expects a directed graph");
  const int N = g.vertex_count();
  auto cloud = [&](int i, int l) { return N + (i - 1) * R + l; };
  std::vector<Edge> edges;
  for (int i = 1; i <= N; ++i) {
    for (int a = 1; a <= R; ++a) {
      edges.push_back({i, cloud(i, a)});
      for (int b = 1; b <= R; ++b)
        if (a != b) edges.push_back({cloud(i, a), cloud(i, b)});
    }
  }
  for (const Edge& e : g.edges())
    for (int a = 1; a <= R; ++a) edges.push_back({cloud(e.u, a), e.v});
  return {Graph::directed(N * (1 + R), std::move(edges)), contiguous_clouds(CloudKind::vertex, N, R, N + 1), R};
}

// ---------------------------------------------------------------------------
// CSP clause clouds

CspBlowup csp_cloud_blowup(const CspInstance& f, int R) {
  require_factor(R);
  CspBlowup out;
  out.R = R;
  out.variable_clouds = contiguous_clouds(CloudKind::variable, f.variable_count(), R, 1);
  out.clause_clouds.kind = CloudKind::clause;
  std::vector<Clause> clauses;
  for (const Clause& c : f.clauses()) {
    const int a = c.arity();
    std::vector<int> copy(static_cast<std::size_t>(a), 1);  // odometer, last position fastest
    std::vector<int> members;
    while (true) {
      std::vector<int> vars(static_cast<std::size_t>(a));
      for (int t = 0; t < a; ++t) vars[t] = (c.vars()[t] - 1) * R + copy[t];
      clauses.push_back(c.with_vars(std::move(vars)));
      members.push_back(static_cast<int>(clauses.size()));
      int t = a - 1;
      while (t >= 0 && copy[t] == R) copy[t--] = 1;
      if (t < 0) break;
      ++copy[t];
    }
    out.clause_clouds.forward.push_back(std::move(members));
  }
  out.formula = CspInstance(f.variable_count() * R, f.k_max(), std::move(clauses));
  return out;
}

// ---------------------------------------------------------------------------
// Subset-sum gadget

SubsetSumInstance pad_to_even(const SubsetSumInstance& s) {
  if (s.item_count() % 2 == 0) return s;
  std::vector<BigInt> items(s.items().begin(), s.items().end());
  items.emplace_back(0);
  return SubsetSumInstance(std::move(items), s.target());
}

namespace {

int ceil_log2(const BigInt& x) {
  if (x <= 1) return 1;  // ceil(log2 0) is undefined; treat sums <= 1 as one bit
  const auto msb = static_cast<int>(boost::multiprecision::msb(x));
  return (BigInt(1) << msb) == x ? msb : msb + 1;
}

struct GadgetNumbers {
  int N = 0;
  int N_prime = 1;
  BigInt scale;
  std::vector<BigInt> powers;
};

GadgetNumbers gadget_numbers(const SubsetSumInstance& padded, int C_prime) {
  GadgetNumbers g;
  g.N = static_cast<int>(padded.item_count());
  BigInt total = 0;
  for (const BigInt& a : padded.items()) total += a;
  g.N_prime = ceil_log2(total);
  g.scale = BigInt(g.N) * g.N * g.N;
  for (int i = 1; i <= g.N; ++i)
    g.powers.push_back(BigInt(1) << (static_cast<unsigned>(C_prime) * static_cast<unsigned>(g.N_prime + i)));
  return g;
}

std::optional<std::string> dominance_violation(const SubsetSumInstance& padded, const GadgetNumbers& g, int R) {
  BigInt a_max = 0;
  for (const BigInt& a : padded.items()) a_max = std::max(a_max, a);
  const BigInt spread = BigInt(g.N) * (a_max * g.scale + R);
  const BigInt target_part = padded.target() * g.scale + 2 * R;
  BigInt lower_totals = 0;  // sum_{j<i} U_j
  BigInt lower_powers = 0;  // sum_{j<i} M_j
  for (int i = 1; i <= g.N; ++i) {
    const BigInt& m = g.powers[i - 1];
    const BigInt bound = std::max(lower_totals, BigInt(lower_powers + target_part)) + spread;
    if (m <= bound)
      return "M_" + std::to_string(i) + " = " + m.str() + " must exceed " + bound.str() +
             " = max(sum_{j<i} U_j, sum_{j<i} M_j + S N^3 + 2R) + N (a_max N^3 + R)";
    lower_totals += BigInt(2 * R + 1) * (2 * m + padded.items()[i - 1] * g.scale);
    lower_powers += m;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> gadget_dominance_violation(const SubsetSumInstance& s, int R, int C_prime) {
  const SubsetSumInstance padded = pad_to_even(s);
  return dominance_violation(padded, gadget_numbers(padded, C_prime), R);
}

int minimal_gadget_exponent(const SubsetSumInstance& s, int R) {
  require_factor(R);
  const SubsetSumInstance padded = pad_to_even(s);
  for (int c = 1; c <= 4096; ++c)
    if (!dominance_violation(padded, gadget_numbers(padded, c), R)) return c;
  throw Error("no gadget exponent C' <= 4096 satisfies dominance");
}

SubsetSumGadget subset_sum_gadget(const SubsetSumInstance& s, int R, int C_prime, GadgetOptions options) {
  require_factor(R);
  if (C_prime < 1) throw Error("gadget exponent C' must be >= 1");
  if (s.item_count() == 0) throw Error("subset-sum gadget needs at least one item");
  SubsetSumGadget out;
  const SubsetSumInstance padded = pad_to_even(s);
  out.padded = padded.item_count() != s.item_count();
  const GadgetNumbers g = gadget_numbers(padded, C_prime);
  if (options.enforce_offset_bound && static_cast<long long>(g.N) * g.N <= R)
    throw Error("offset bound violated: need R < N^2 (R = " + std::to_string(R) + ", N = " + std::to_string(g.N) + ")");
  if (auto violation = dominance_violation(padded, g, R)) throw Error("dominance violated: " + *violation);

  out.N = g.N;
  out.R = R;
  out.C_prime = C_prime;
  out.N_prime = g.N_prime;
  out.scale = g.scale;
  out.powers = g.powers;
  out.clouds.kind = CloudKind::item;
  std::vector<BigInt> items;
  BigInt target = padded.target() * g.scale;
  for (int i = 1; i <= g.N; ++i) {
    const BigInt& m = g.powers[i - 1];
    target += m;
    std::vector<int> members;
    for (bool primed : {false, true}) {
      const BigInt base = primed ? m : m + padded.items()[i - 1] * g.scale;
      for (int k = -R; k <= R; ++k) {
        items.push_back(base + k);
        out.labels.push_back({i, primed, k});
        members.push_back(static_cast<int>(items.size()));
      }
    }
    out.clouds.forward.push_back(std::move(members));
  }
  out.instance = SubsetSumInstance(std::move(items), std::move(target));
  return out;
}

// ---------------------------------------------------------------------------
// Parameter planning

Theorem parse_theorem(std::string_view name) {
  if (name == "coloring") return Theorem::coloring;
  if (name == "vc_edge") return Theorem::vc_edge;
  if (name == "vc_vertex") return Theorem::vc_vertex;
  if (name == "ham") return Theorem::ham;
  if (name == "csp_clause") return Theorem::csp_clause;
  if (name == "csp_variable") return Theorem::csp_variable;
  if (name == "subset_sum") return Theorem::subset_sum;
  throw Error("unknown theorem '" + std::string(name) + "'");
}

std::string_view theorem_name(Theorem t) {
  switch (t) {
    case Theorem::coloring: return "coloring";
    case Theorem::vc_edge: return "vc_edge";
    case Theorem::vc_vertex: return "vc_vertex";
    case Theorem::ham: return "ham";
    case Theorem::csp_clause: return "csp_clause";
    case Theorem::csp_variable: return "csp_variable";
    case Theorem::subset_sum: return "subset_sum";
  }
  return "?";
}

std::int64_t produced_size(Theorem t, int N, int R, int k) {
  (void)k;
  const auto n = static_cast<std::int64_t>(N);
  const auto r = static_cast<std::int64_t>(R);
  switch (t) {
    case Theorem::ham: return n * (1 + r);
    case Theorem::subset_sum: return 2 * n * (2 * r + 1);
    default: return n * r;
  }
}

namespace {

double achieved_exponent(Theorem t, double p, std::int64_t n) {
  const double ln_n = std::log(static_cast<double>(n));
  if (ln_n <= 0) return 0.0;
  if (t == Theorem::subset_sum) return std::log(p * std::sqrt(static_cast<double>(n))) / ln_n;
  return std::log(p * static_cast<double>(n)) / ln_n;
}

// R >= base^{power / c(R)}, with c(R) computed from the produced size at R.
bool meets_exponent(const PlanRequest& q, int R, double base, double power) {
  const double c = achieved_exponent(q.theorem, q.p, produced_size(q.theorem, q.N, R, q.k));
  if (!(c > 0)) return false;
  return static_cast<double>(R) >= std::pow(base, power / c) * (1 - 1e-12);
}

bool feasible(const PlanRequest& q, int R) {
  const double N = q.N;
  switch (q.theorem) {
    case Theorem::vc_edge: return meets_exponent(q, R, N, 2.0);
    case Theorem::vc_vertex:
      return meets_exponent(q, R, N / (q.epsilon * q.epsilon), 1.0) &&
             static_cast<double>(R) > q.C * q.C * std::log(N) / (q.epsilon * q.epsilon * q.p);
    case Theorem::ham:
    case Theorem::csp_variable:
    case Theorem::subset_sum: return meets_exponent(q, R, N, 1.0);
    default: return true;
  }
}

}  // namespace

ReductionParams plan_parameters(const PlanRequest& q) {
  if (q.N < 1) throw Error("plan_parameters needs N >= 1");
  if (!(q.p > 0 && q.p <= 1)) throw Error("plan_parameters needs p in (0,1]");
  if (!(q.epsilon > 0 && q.epsilon < 1) || !(q.delta > 0 && q.delta <= 1))
    throw Error("plan_parameters needs epsilon in (0,1) and delta in (0,1]");
  if (q.k < 1) throw Error("plan_parameters needs arity k >= 1");
  if (!(q.C > 0)) throw Error("plan_parameters needs C > 0");

  ReductionParams out;
  out.C = q.C;
  out.epsilon = q.epsilon;
  out.delta = q.delta;
  out.p = q.p;
  auto finish = [&](int R) {
    out.R = R;
    out.produced_size = produced_size(q.theorem, q.N, R, q.k);
    if (out.produced_size > q.size_cap)
      throw Infeasible(std::string(theorem_name(q.theorem)) + ": R = " + std::to_string(R) + " produces " +
                       std::to_string(out.produced_size) + " elements, above the cap " + std::to_string(q.size_cap));
    out.c = achieved_exponent(q.theorem, q.p, out.produced_size);
    return out;
  };

  switch (q.theorem) {
    case Theorem::coloring: return finish(q.N < 2 ? 1 : coloring_blowup_factor(q.N, q.C));
    case Theorem::csp_clause: {
      // Smallest R >= N^{k/delta}; then M R^k >= (N R)^{k - delta}.
      const double bound = std::pow(static_cast<double>(q.N), q.k / q.delta);
      if (bound > 1e9) throw Infeasible("csp_clause: N^{k/delta} exceeds the integer range");
      return finish(static_cast<int>(std::ceil(bound * (1 - 1e-12))));
    }
    default: break;
  }
  // Nothing is deleted at p = 1; vc_vertex still needs its sampling inequality.
  if (q.p == 1.0 && q.theorem != Theorem::vc_vertex) return finish(1);

  // feasible(R) is monotone in R: c(R) grows with the produced size. Double
  // until feasible, then bisect for the smallest feasible R.
  int lo = 0;
  int hi = 1;
  while (!feasible(q, hi)) {
    if (produced_size(q.theorem, q.N, hi, q.k) > q.size_cap)
      throw Infeasible(std::string(theorem_name(q.theorem)) + ": no R keeps the produced size under " +
                       std::to_string(q.size_cap) + " for p = " + std::to_string(q.p) + ", N = " +
                       std::to_string(q.N));
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (feasible(q, mid) ? hi : lo) = mid;
  }
  return finish(hi);
}

}  // namespace perc
