#include "perc/percolate.hpp"

#include "perc/error.hpp"

#include <charconv>
#include <sstream>

namespace perc {

PercolationMode parse_percolation_mode(std::string_view name) {
  if (name == "edge") return PercolationMode::edge;
  if (name == "vertex") return PercolationMode::vertex;
  if (name == "clause") return PercolationMode::clause;
  if (name == "variable") return PercolationMode::variable;
  if (name == "item") return PercolationMode::item;
  throw Error("unknown percolation mode '" + std::string(name) + "'");
}

std::string_view mode_name(PercolationMode mode) {
  switch (mode) {
    case PercolationMode::edge: return "edge";
    case PercolationMode::vertex: return "vertex";
    case PercolationMode::clause: return "clause";
    case PercolationMode::variable: return "variable";
    case PercolationMode::item: return "item";
  }
  return "?";
}

void PercolationSpec::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("survival probability must lie in [0,1]");
}

namespace {

void require_mode(const PercolationSpec& spec, PercolationMode expected) {
  spec.validate();
  if (spec.mode != expected)
    throw Error("percolation mode mismatch: expected " + std::string(mode_name(expected)) + ", got " +
                std::string(mode_name(spec.mode)));
}

// Keeps indices 1..n whose stream value is below p.
SurvivorMap keep_indices(const PercolationSpec& spec, int n, bool with_relabel) {
  SurvivorMap s;
  s.mode = spec.mode;
  s.original_size = n;
  if (with_relabel) s.relabel.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    if (!survives(spec, static_cast<std::uint64_t>(i))) continue;
    s.kept.push_back(i);
    if (with_relabel) s.relabel[i] = static_cast<int>(s.kept.size());
  }
  return s;
}

}  // namespace

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  std::vector<int> relabel(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  int next = 0;
  for (int v : vertices) relabel[v] = ++next;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (relabel[e.u] && relabel[e.v]) edges.push_back({relabel[e.u], relabel[e.v]});
  return g.is_directed() ? Graph::directed(next, std::move(edges)) : Graph::undirected(next, std::move(edges));
}

Percolated<Graph> edge_percolate(const Graph& g, const PercolationSpec& spec) {
  require_mode(spec, PercolationMode::edge);
  SurvivorMap s;
  s.mode = PercolationMode::edge;
  s.original_size = static_cast<int>(g.edge_count());
  for (const Edge& e : g.edges())
    if (survives(spec, edge_key(e))) s.kept_edges.push_back(e);
  Graph out = g.is_directed() ? Graph::directed(g.vertex_count(), s.kept_edges)
                              : Graph::undirected(g.vertex_count(), s.kept_edges);
  return {std::move(out), std::move(s)};
}

Percolated<Graph> vertex_percolate(const Graph& g, const PercolationSpec& spec) {
  require_mode(spec, PercolationMode::vertex);
  SurvivorMap s = keep_indices(spec, g.vertex_count(), true);
  Graph out = induced_subgraph(g, s.kept);
  return {std::move(out), std::move(s)};
}

Percolated<CspInstance> clause_percolate(const CspInstance& f, const PercolationSpec& spec) {
  require_mode(spec, PercolationMode::clause);
  SurvivorMap s = keep_indices(spec, static_cast<int>(f.clause_count()), false);
  std::vector<Clause> clauses;
  clauses.reserve(s.kept.size());
  for (int c : s.kept) clauses.push_back(f.clauses()[static_cast<std::size_t>(c - 1)]);
  return {CspInstance(f.variable_count(), f.k_max(), std::move(clauses)), std::move(s)};
}

Percolated<CspInstance> variable_percolate(const CspInstance& f, const PercolationSpec& spec) {
  require_mode(spec, PercolationMode::variable);
  SurvivorMap s = keep_indices(spec, f.variable_count(), true);
  std::vector<Clause> clauses;
  for (const Clause& c : f.clauses()) {
    std::vector<int> vars;
    vars.reserve(c.vars().size());
    for (int v : c.vars()) {
      if (s.relabel[v] == 0) break;
      vars.push_back(s.relabel[v]);
    }
    if (vars.size() == c.vars().size()) clauses.push_back(c.with_vars(std::move(vars)));
  }
  const int n = static_cast<int>(s.kept.size());
  return {CspInstance(n, f.k_max(), std::move(clauses)), std::move(s)};
}

Percolated<SubsetSumInstance> item_percolate(const SubsetSumInstance& inst, const PercolationSpec& spec) {
  require_mode(spec, PercolationMode::item);
  SurvivorMap s = keep_indices(spec, static_cast<int>(inst.item_count()), false);
  std::vector<BigInt> items;
  items.reserve(s.kept.size());
  for (int i : s.kept) items.push_back(inst.items()[static_cast<std::size_t>(i - 1)]);
  return {SubsetSumInstance(std::move(items), inst.target()), std::move(s)};
}

Percolated<Instance> percolate(const Instance& inst, const PercolationSpec& spec) {
  auto wrap = [](auto&& r) { return Percolated<Instance>{Instance(std::move(r.instance)), std::move(r.survivors)}; };
  if (auto* g = std::get_if<Graph>(&inst)) {
    if (spec.mode == PercolationMode::edge) return wrap(edge_percolate(*g, spec));
    if (spec.mode == PercolationMode::vertex) return wrap(vertex_percolate(*g, spec));
  } else if (auto* f = std::get_if<CspInstance>(&inst)) {
    if (spec.mode == PercolationMode::clause) return wrap(clause_percolate(*f, spec));
    if (spec.mode == PercolationMode::variable) return wrap(variable_percolate(*f, spec));
  } else if (auto* s = std::get_if<SubsetSumInstance>(&inst)) {
    if (spec.mode == PercolationMode::item) return wrap(item_percolate(*s, spec));
  }
  throw Error("percolation mode " + std::string(mode_name(spec.mode)) + " does not apply to this instance");
}

std::string serialize(const SurvivorMap& s) {
  std::ostringstream out;
  out << "p survivors " << mode_name(s.mode) << ' ' << s.original_size << ' ' << s.survivor_count() << '\n';
  if (s.mode == PercolationMode::edge) {
    for (const Edge& e : s.kept_edges) out << "k " << e.u << ' ' << e.v << '\n';
  } else {
    for (int i : s.kept) out << "k " << i << '\n';
  }
  return out.str();
}

SurvivorMap parse_survivor_map(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  SurvivorMap s;
  bool have_header = false;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag == "c") continue;
    if (!have_header) {
      std::string kind, mode;
      if (tag != "p" || !(fields >> kind >> mode >> s.original_size >> count) || kind != "survivors")
        throw ParseError(number, "expected 'p survivors <mode> <original_size> <count>'");
      try {
        s.mode = parse_percolation_mode(mode);
      } catch (const Error& e) {
        throw ParseError(number, e.what());
      }
      have_header = true;
      continue;
    }
    if (tag != "k") throw ParseError(number, "expected 'k <element>'");
    if (s.mode == PercolationMode::edge) {
      Edge e;
      if (!(fields >> e.u >> e.v)) throw ParseError(number, "expected 'k <u> <v>'");
      s.kept_edges.push_back(e);
    } else {
      int i = 0;
      if (!(fields >> i) || i < 1 || i > s.original_size) throw ParseError(number, "element index out of range");
      if (!s.kept.empty() && i <= s.kept.back()) throw ParseError(number, "elements must be increasing");
      s.kept.push_back(i);
    }
  }
  if (!have_header) throw ParseError(1, "missing 'p survivors' header");
  if (s.survivor_count() != count) throw ParseError(number, "survivor count does not match header");
  if (s.mode == PercolationMode::vertex || s.mode == PercolationMode::variable) {
    s.relabel.assign(static_cast<std::size_t>(s.original_size) + 1, 0);
    for (std::size_t i = 0; i < s.kept.size(); ++i) s.relabel[s.kept[i]] = static_cast<int>(i) + 1;
  }
  return s;
}

}  // namespace perc
