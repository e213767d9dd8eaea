#include "perc/instances.hpp"

#include "perc/error.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace perc {

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(bool directed, int n, std::vector<Edge> edges)
    : directed_(directed), n_(n), edges_(std::move(edges)) {
  if (n_ < 0) throw InvalidInstance("negative vertex count");
  for (Edge& e : edges_) {
    if (e.u < 1 || e.u > n_ || e.v < 1 || e.v > n_)
      throw InvalidInstance("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") has an endpoint outside 1.." + std::to_string(n_));
    if (e.u == e.v) throw InvalidInstance("self-loop at vertex " + std::to_string(e.u));
    if (!directed_ && e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw InvalidInstance("duplicate edge (" + std::to_string(dup->u) + "," +
                          std::to_string(dup->v) + ")");
}

Graph Graph::undirected(int n, std::vector<Edge> edges) { return Graph(false, n, std::move(edges)); }

Graph Graph::directed(int n, std::vector<Edge> edges) { return Graph(true, n, std::move(edges)); }

bool Graph::has_edge(int u, int v) const {
  Edge e{u, v};
  if (!directed_ && e.u > e.v) std::swap(e.u, e.v);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_) + 1);
  for (const Edge& e : edges_) {
    out[e.u].push_back(e.v);
    if (!directed_) out[e.v].push_back(e.u);
  }
  for (auto& row : out) std::sort(row.begin(), row.end());
  return out;
}

// ---------------------------------------------------------------------------
// Clause / CspInstance

Clause::Clause(std::vector<int> vars, std::vector<bool> table)
    : vars_(std::move(vars)), table_(std::move(table)) {
  if (vars_.empty()) throw InvalidInstance("clause has arity 0");
  if (arity() > kMaxArity)
    throw InvalidInstance("clause arity " + std::to_string(arity()) + " exceeds " +
                          std::to_string(kMaxArity));
  if (table_.size() != (std::size_t{1} << vars_.size()))
    throw InvalidInstance("truth table of arity-" + std::to_string(arity()) + " clause has " +
                          std::to_string(table_.size()) + " bits");
  std::vector<int> sorted = vars_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInstance("clause repeats a variable");
}

Clause Clause::disjunction(std::span<const int> literals) {
  std::vector<int> vars;
  std::uint32_t falsifier = 0;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    const int lit = literals[i];
    if (lit == 0) throw InvalidInstance("literal 0 inside a clause");
    vars.push_back(lit > 0 ? lit : -lit);
    // The only falsifying assignment sets positive literals to 0, negative to 1.
    if (lit < 0) falsifier |= std::uint32_t{1} << i;
  }
  if (vars.size() > static_cast<std::size_t>(kMaxArity))
    throw InvalidInstance("clause arity exceeds " + std::to_string(kMaxArity));
  std::vector<bool> table(std::size_t{1} << vars.size(), true);
  table[falsifier] = false;
  return Clause(std::move(vars), std::move(table));
}

std::optional<std::vector<int>> Clause::as_disjunction() const {
  std::optional<std::uint32_t> zero;
  for (std::uint32_t j = 0; j < table_.size(); ++j) {
    if (table_[j]) continue;
    if (zero) return std::nullopt;
    zero = j;
  }
  if (!zero) return std::nullopt;
  std::vector<int> lits;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    lits.push_back(((*zero >> i) & 1U) ? -vars_[i] : vars_[i]);
  return lits;
}

CspInstance::CspInstance(int n_vars, int k_max, std::vector<Clause> clauses)
    : n_vars_(n_vars), k_max_(k_max), clauses_(std::move(clauses)) {
  if (n_vars_ < 0) throw InvalidInstance("negative variable count");
  if (k_max_ < 0) throw InvalidInstance("negative maximum arity");
  std::set<const Clause*, decltype([](const Clause* a, const Clause* b) { return *a < *b; })> seen;
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    const Clause& clause = clauses_[c];
    if (clause.arity() > k_max_)
      throw InvalidInstance("clause " + std::to_string(c + 1) + " has arity " +
                            std::to_string(clause.arity()) + " > k_max " + std::to_string(k_max_));
    for (int v : clause.vars())
      if (v < 1 || v > n_vars_)
        throw InvalidInstance("clause " + std::to_string(c + 1) + " uses variable " +
                              std::to_string(v) + " outside 1.." + std::to_string(n_vars_));
    if (!seen.insert(&clause).second)
      throw InvalidInstance("clause " + std::to_string(c + 1) + " duplicates an earlier clause");
  }
}

Assignment::Assignment(std::vector<std::uint8_t> values) : values_(std::move(values)) {
  for (auto v : values_)
    if (v > 1) throw InvalidInstance("assignment value other than 0/1");
}

// ---------------------------------------------------------------------------
// SubsetSumInstance / Coloring

SubsetSumInstance::SubsetSumInstance(std::vector<BigInt> items, BigInt target)
    : items_(std::move(items)), target_(std::move(target)) {
  for (const BigInt& a : items_)
    if (a < 0) throw InvalidInstance("negative subset-sum item " + a.str());
  if (target_ < 0) throw InvalidInstance("negative subset-sum target");
}

Coloring::Coloring(std::vector<int> colors) : colors_(std::move(colors)) {
  for (int c : colors_)
    if (c < 1) throw InvalidInstance("color index must be >= 1");
}

int Coloring::color_count() const {
  std::set<int> used(colors_.begin(), colors_.end());
  return static_cast<int>(used.size());
}

bool is_legal_coloring(const Graph& g, const Coloring& c) {
  if (c.vertex_count() != g.vertex_count()) return false;
  return std::none_of(g.edges().begin(), g.edges().end(),
                      [&](const Edge& e) { return c[e.u] == c[e.v]; });
}

bool is_independent_set(const Graph& g, std::span<const int> vertices) {
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (int v : vertices) {
    if (v < 1 || v > g.vertex_count() || in[v]) return false;
    in[v] = 1;
  }
  return std::none_of(g.edges().begin(), g.edges().end(),
                      [&](const Edge& e) { return in[e.u] && in[e.v]; });
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

// Splits into whitespace-separated tokens, dropping blank and comment lines.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t') ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (line.tokens.empty() || line.tokens.front() == "c") continue;
    lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

long long to_int(const Line& line, std::string_view tok) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line.number, "expected an integer, got '" + std::string(tok) + "'");
  return v;
}

int to_count(const Line& line, std::string_view tok) {
  long long v = to_int(line, tok);
  if (v < 0 || v > 1'000'000'000) throw ParseError(line.number, "count out of range");
  return static_cast<int>(v);
}

BigInt to_bigint(const Line& line, std::string_view tok) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw ParseError(line.number, "expected a nonnegative decimal integer, got '" + std::string(tok) + "'");
  return BigInt(std::string(tok));
}

void expect_arity(const Line& line, std::size_t n) {
  if (line.tokens.size() != n)
    throw ParseError(line.number, "expected " + std::to_string(n) + " fields, got " +
                                      std::to_string(line.tokens.size()));
}

const Line& header(const std::vector<Line>& lines, std::string_view kind) {
  if (lines.empty() || lines.front().tokens.front() != "p")
    throw ParseError(lines.empty() ? 1 : lines.front().number, "missing 'p' header line");
  const Line& h = lines.front();
  if (h.tokens.size() < 2 || h.tokens[1] != kind)
    throw ParseError(h.number, "expected 'p " + std::string(kind) + "' header");
  return h;
}

template <typename F>
auto rethrow_at(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const InvalidInstance& e) {
    throw ParseError(line, e.what());
  }
}

int hex_digit(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "missing 'p' header line");
  const Line& h = lines.front();
  if (h.tokens.front() != "p" || h.tokens.size() < 2 || (h.tokens[1] != "edge" && h.tokens[1] != "arc"))
    throw ParseError(h.number, "expected 'p edge' or 'p arc' header");
  const bool directed = h.tokens[1] == "arc";
  const std::string_view tag = directed ? "a" : "e";
  expect_arity(h, 4);
  const int n = to_count(h, h.tokens[2]);
  const int m = to_count(h, h.tokens[3]);
  if (lines.size() - 1 != static_cast<std::size_t>(m))
    throw ParseError(lines.back().number, "header declares " + std::to_string(m) + " edges, found " +
                                              std::to_string(lines.size() - 1));
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.front() != tag)
      throw ParseError(l.number, "expected '" + std::string(tag) + " <u> <v>'");
    expect_arity(l, 3);
    long long u = to_int(l, l.tokens[1]);
    long long v = to_int(l, l.tokens[2]);
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError(l.number, "vertex index outside 1.." + std::to_string(n));
    if (u == v) throw ParseError(l.number, "self-loop at vertex " + std::to_string(u));
    Edge e{static_cast<int>(u), static_cast<int>(v)};
    if (!directed && e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert(e).second) throw ParseError(l.number, "duplicate edge");
    edges.push_back(e);
  }
  return directed ? Graph::directed(n, std::move(edges)) : Graph::undirected(n, std::move(edges));
}

CspInstance parse_cnf(std::string_view text) {
  auto lines = tokenize(text);
  const Line& h = header(lines, "cnf");
  expect_arity(h, 4);
  const int n = to_count(h, h.tokens[2]);
  const int m = to_count(h, h.tokens[3]);
  std::vector<Clause> clauses;
  std::set<Clause> seen;
  std::vector<int> lits;
  int k_max = 0;
  std::size_t last_line = h.number;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    last_line = l.number;
    if (l.tokens.front() == "%") break;
    for (auto tok : l.tokens) {
      long long lit = to_int(l, tok);
      if (lit == 0) {
        if (static_cast<int>(clauses.size()) == m) throw ParseError(l.number, "more clauses than declared");
        Clause c = rethrow_at(l.number, [&] { return Clause::disjunction(lits); });
        for (int v : c.vars())
          if (v > n) throw ParseError(l.number, "variable " + std::to_string(v) + " outside 1.." + std::to_string(n));
        if (!seen.insert(c).second) throw ParseError(l.number, "duplicate clause");
        k_max = std::max(k_max, c.arity());
        clauses.push_back(std::move(c));
        lits.clear();
        continue;
      }
      if (lit > n || lit < -n) throw ParseError(l.number, "variable " + std::to_string(lit) + " outside 1.." + std::to_string(n));
      lits.push_back(static_cast<int>(lit));
    }
  }
  if (!lits.empty()) throw ParseError(last_line, "clause not terminated by 0");
  if (static_cast<int>(clauses.size()) != m)
    throw ParseError(last_line, "header declares " + std::to_string(m) + " clauses, found " +
                                    std::to_string(clauses.size()));
  return CspInstance(n, k_max, std::move(clauses));
}

CspInstance parse_csp(std::string_view text) {
  auto lines = tokenize(text);
  const Line& h = header(lines, "csp");
  expect_arity(h, 5);
  const int n = to_count(h, h.tokens[2]);
  const int m = to_count(h, h.tokens[3]);
  const int k = to_count(h, h.tokens[4]);
  if (lines.size() - 1 != static_cast<std::size_t>(m))
    throw ParseError(lines.back().number, "header declares " + std::to_string(m) + " clauses, found " +
                                              std::to_string(lines.size() - 1));
  std::vector<Clause> clauses;
  std::set<Clause> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const int arity = to_count(l, l.tokens.front());
    if (arity < 1 || arity > kMaxArity) throw ParseError(l.number, "clause arity out of range");
    if (arity > k) throw ParseError(l.number, "clause arity exceeds k_max " + std::to_string(k));
    expect_arity(l, static_cast<std::size_t>(arity) + 2);
    std::vector<int> vars;
    for (int a = 0; a < arity; ++a) {
      long long v = to_int(l, l.tokens[static_cast<std::size_t>(a) + 1]);
      if (v < 1 || v > n) throw ParseError(l.number, "variable index outside 1.." + std::to_string(n));
      vars.push_back(static_cast<int>(v));
    }
    const std::size_t bits = std::size_t{1} << arity;
    const std::size_t digits = (bits + 3) / 4;
    std::string_view hex = l.tokens.back();
    if (hex.size() != digits)
      throw ParseError(l.number, "truth table needs " + std::to_string(digits) + " hex digits");
    std::vector<bool> table(bits, false);
    for (std::size_t d = 0; d < digits; ++d) {
      int val = hex_digit(hex[digits - 1 - d]);
      if (val < 0) throw ParseError(l.number, "invalid hex digit in truth table");
      for (int b = 0; b < 4; ++b) {
        const std::size_t j = 4 * d + static_cast<std::size_t>(b);
        const bool bit = (val >> b) & 1;
        if (j < bits) table[j] = bit;
        else if (bit) throw ParseError(l.number, "truth table sets padding bits");
      }
    }
    Clause c = rethrow_at(l.number, [&] { return Clause(std::move(vars), std::move(table)); });
    if (!seen.insert(c).second) throw ParseError(l.number, "duplicate clause");
    clauses.push_back(std::move(c));
  }
  return CspInstance(n, k, std::move(clauses));
}

SubsetSumInstance parse_subset_sum(std::string_view text) {
  auto lines = tokenize(text);
  const Line& h = header(lines, "ss");
  expect_arity(h, 3);
  const int n = to_count(h, h.tokens[2]);
  if (lines.size() < 2 || lines[1].tokens.front() != "t")
    throw ParseError(lines.size() < 2 ? h.number : lines[1].number, "expected 't <S>' after header");
  expect_arity(lines[1], 2);
  BigInt target = to_bigint(lines[1], lines[1].tokens[1]);
  if (lines.size() - 2 != static_cast<std::size_t>(n))
    throw ParseError(lines.back().number, "header declares " + std::to_string(n) + " items, found " +
                                              std::to_string(lines.size() - 2));
  std::vector<BigInt> items;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.front() != "i") throw ParseError(l.number, "expected 'i <a>'");
    expect_arity(l, 2);
    items.push_back(to_bigint(l, l.tokens[1]));
  }
  return SubsetSumInstance(std::move(items), std::move(target));
}

Format parse_format(std::string_view name) {
  if (name == "graph") return Format::graph;
  if (name == "cnf") return Format::cnf;
  if (name == "csp") return Format::csp;
  if (name == "ss") return Format::ss;
  throw Error("unknown format '" + std::string(name) + "'");
}

std::string_view format_name(Format f) {
  switch (f) {
    case Format::graph: return "graph";
    case Format::cnf: return "cnf";
    case Format::csp: return "csp";
    case Format::ss: return "ss";
  }
  return "?";
}

Instance parse_instance(std::string_view text, Format format) {
  switch (format) {
    case Format::graph: return parse_graph(text);
    case Format::cnf: return parse_cnf(text);
    case Format::csp: return parse_csp(text);
    case Format::ss: return parse_subset_sum(text);
  }
  throw Error("unknown format");
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize(const Graph& g) {
  std::ostringstream out;
  const char* tag = g.is_directed() ? "a" : "e";
  out << "p " << (g.is_directed() ? "arc" : "edge") << ' ' << g.vertex_count() << ' ' << g.edge_count()
      << '\n';
  for (const Edge& e : g.edges()) out << tag << ' ' << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::string serialize_cnf(const CspInstance& f) {
  std::ostringstream out;
  out << "p cnf " << f.variable_count() << ' ' << f.clause_count() << '\n';
  for (const Clause& c : f.clauses()) {
    auto lits = c.as_disjunction();
    if (!lits) throw InvalidInstance("clause is not a disjunction of literals; use the csp format");
    for (int lit : *lits) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

std::string serialize_csp(const CspInstance& f) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::ostringstream out;
  out << "p csp " << f.variable_count() << ' ' << f.clause_count() << ' ' << f.k_max() << '\n';
  for (const Clause& c : f.clauses()) {
    out << c.arity();
    for (int v : c.vars()) out << ' ' << v;
    const auto& table = c.table();
    const std::size_t digits = (table.size() + 3) / 4;
    std::string hex(digits, '0');
    for (std::size_t d = 0; d < digits; ++d) {
      int val = 0;
      for (int b = 0; b < 4; ++b) {
        const std::size_t j = 4 * d + static_cast<std::size_t>(b);
        if (j < table.size() && table[j]) val |= 1 << b;
      }
      hex[digits - 1 - d] = kHex[val];
    }
    out << ' ' << hex << '\n';
  }
  return out.str();
}

std::string serialize(const SubsetSumInstance& s) {
  std::ostringstream out;
  out << "p ss " << s.item_count() << '\n' << "t " << s.target() << '\n';
  for (const BigInt& a : s.items()) out << "i " << a << '\n';
  return out.str();
}

std::string serialize_instance(const Instance& inst, Format format) {
  switch (format) {
    case Format::graph:
      if (auto* g = std::get_if<Graph>(&inst)) return serialize(*g);
      break;
    case Format::cnf:
      if (auto* f = std::get_if<CspInstance>(&inst)) return serialize_cnf(*f);
      break;
    case Format::csp:
      if (auto* f = std::get_if<CspInstance>(&inst)) return serialize_csp(*f);
      break;
    case Format::ss:
      if (auto* s = std::get_if<SubsetSumInstance>(&inst)) return serialize(*s);
      break;
  }
  throw Error("instance kind does not match format '" + std::string(format_name(format)) + "'");
}

}  // namespace perc
