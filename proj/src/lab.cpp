#include "perc/lab.hpp"

#include "perc/error.hpp"
#include "perc/solve.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace perc {

std::uint64_t SplitMix64::below(std::uint64_t n) noexcept {
  const std::uint64_t limit = -n % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t x = next();
    if (x >= limit) return x % n;
  }
}

FrequencySummary wilson(std::int64_t successes, std::int64_t trials) {
  FrequencySummary f{successes, trials, 0.0, 0.0, 1.0};
  if (trials <= 0) return f;
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (phat + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom;
  f.estimate = phat;
  f.wilson_lo = std::clamp(center - half, 0.0, phat);
  f.wilson_hi = std::clamp(center + half, phat, 1.0);
  return f;
}

// ---------------------------------------------------------------------------
// Names

namespace {

template <typename E, std::size_t N>
E lookup(const std::pair<std::string_view, E> (&table)[N], std::string_view name, const char* what) {
  for (const auto& [key, value] : table)
    if (key == name) return value;
  throw Error(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

template <typename E, std::size_t N>
std::string_view reverse_lookup(const std::pair<std::string_view, E> (&table)[N], E value) {
  for (const auto& [key, v] : table)
    if (v == value) return key;
  return "?";
}

constexpr std::pair<std::string_view, Construction> kConstructions[] = {
    {"none", Construction::none}, {"blowup", Construction::blowup},         {"coloring", Construction::coloring},
    {"ham", Construction::ham},   {"csp_blowup", Construction::csp_blowup}, {"subset_sum", Construction::subset_sum}};
constexpr std::pair<std::string_view, Property> kProperties[] = {
    {"colorable", Property::colorable},   {"alpha_at_least", Property::alpha_at_least},
    {"vc_at_most", Property::vc_at_most}, {"hamiltonian", Property::hamiltonian},
    {"val_at_least", Property::val_at_least}, {"ss_feasible", Property::ss_feasible},
    {"lift", Property::lift}};
constexpr std::pair<std::string_view, DecodeRule> kDecodeRules[] = {
    {"none", DecodeRule::none},         {"majority", DecodeRule::majority}, {"threshold", DecodeRule::threshold},
    {"expected", DecodeRule::expected}, {"project", DecodeRule::project},   {"lift", DecodeRule::lift}};

}  // namespace

Construction parse_construction(std::string_view name) { return lookup(kConstructions, name, "construction"); }
std::string_view construction_name(Construction c) { return reverse_lookup(kConstructions, c); }
Property parse_property(std::string_view name) { return lookup(kProperties, name, "property"); }
std::string_view property_name(Property p) { return reverse_lookup(kProperties, p); }
DecodeRule parse_decode_rule(std::string_view name) { return lookup(kDecodeRules, name, "decode rule"); }
std::string_view decode_rule_name(DecodeRule d) { return reverse_lookup(kDecodeRules, d); }

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::decode_fail: return "decode-fail";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

bool needs_graph(Property p) {
  return p == Property::colorable || p == Property::alpha_at_least || p == Property::vc_at_most ||
         p == Property::hamiltonian;
}

int target_int(const Experiment& e) {
  if (denominator(e.target) != 1) throw Error("property target must be an integer for " + std::string(property_name(e.property)));
  return numerator(e.target).convert_to<int>();
}

// Everything a trial needs that does not depend on the trial index.
struct Prepared {
  Instance produced;
  std::optional<CloudMap> clouds;
  std::optional<SubsetSumGadget> gadget;
  std::vector<int> original_witness;  // lift only
};

Prepared prepare(const Experiment& e) {
  e.validate();
  Prepared out;
  switch (e.construction) {
    case Construction::none:
      out.produced = e.original;
      break;
    case Construction::blowup: {
      GraphBlowup b = blowup_graph(std::get<Graph>(e.original), e.R);
      out.produced = std::move(b.graph);
      out.clouds = std::move(b.clouds);
      break;
    }
    case Construction::coloring: {
      GraphBlowup b = coloring_blowup(std::get<Graph>(e.original), e.C);
      out.produced = std::move(b.graph);
      out.clouds = std::move(b.clouds);
      break;
    }
    case Construction::ham: {
      GraphBlowup b = ham_gadget(std::get<Graph>(e.original), e.R);
      out.produced = std::move(b.graph);
      out.clouds = std::move(b.clouds);
      break;
    }
    case Construction::csp_blowup: {
      CspBlowup b = csp_cloud_blowup(std::get<CspInstance>(e.original), e.R);
      out.produced = std::move(b.formula);
      out.clouds = std::move(b.variable_clouds);
      break;
    }
    case Construction::subset_sum: {
      const auto& s = std::get<SubsetSumInstance>(e.original);
      const int c = e.C_prime > 0 ? e.C_prime : minimal_gadget_exponent(s, e.R);
      SubsetSumGadget g = subset_sum_gadget(s, e.R, c, GadgetOptions{e.enforce_offset_bound});
      out.produced = g.instance;
      out.clouds = g.clouds;
      out.gadget = std::move(g);
      break;
    }
  }
  if (e.property == Property::lift) {
    const SubsetSumResult r = subset_sum_decide(std::get<SubsetSumInstance>(e.original));
    if (!r.feasible) throw Error("lift experiments need a feasible original instance");
    out.original_witness = r.witness;
  }
  return out;
}

TrialReport run_prepared(const Experiment& e, const Prepared& prep, std::int64_t trial) {
  const PercolationSpec spec{e.mode, e.p, e.seed, static_cast<std::uint64_t>(trial)};
  Percolated<Instance> perc = percolate(prep.produced, spec);
  TrialReport out;
  out.trial = trial;
  out.seed = trial_seed(e.seed, static_cast<std::uint64_t>(trial));
  out.survivors = static_cast<std::int64_t>(perc.survivors.survivor_count());
  auto context = [&] { return DecodeContext{*prep.clouds, perc.survivors}; };

  switch (e.property) {
    case Property::colorable: {
      const auto& g = std::get<Graph>(perc.instance);
      const ColoringResult r = is_k_colorable(g, target_int(e));
      out.verdict = r.colorable ? Verdict::yes : Verdict::no;
      out.detail = r.colorable ? "colorable" : "not-colorable";
      if (r.colorable && e.decode == DecodeRule::majority) {
        try {
          const Coloring decoded = majority_color_decode(*r.witness, context());
          const bool legal = is_legal_coloring(std::get<Graph>(e.original), decoded);
          out.detail += legal ? ";decoded=legal" : ";decoded=illegal";
          if (!legal) out.verdict = Verdict::decode_fail;
        } catch (const DecodeError&) {
          out.detail += ";decoded=empty-cloud";
          out.verdict = Verdict::decode_fail;
        }
      }
      break;
    }
    case Property::alpha_at_least:
    case Property::vc_at_most: {
      const auto& g = std::get<Graph>(perc.instance);
      const VertexSetResult r = e.property == Property::alpha_at_least ? max_independent_set(g) : min_vertex_cover(g);
      const bool yes = e.property == Property::alpha_at_least ? r.value >= target_int(e) : r.value <= target_int(e);
      out.verdict = yes ? Verdict::yes : Verdict::no;
      out.detail = (e.property == Property::alpha_at_least ? "alpha=" : "vc=") + std::to_string(r.value);
      if (e.decode == DecodeRule::threshold) {
        const std::vector<int> is = e.property == Property::alpha_at_least ? r.witness : max_independent_set(g).witness;
        const std::vector<int> decoded = threshold_is_decode(is, e.decode_threshold, context());
        out.detail += ";decoded=" + std::to_string(decoded.size());
        if (!is_independent_set(std::get<Graph>(e.original), decoded)) out.verdict = Verdict::decode_fail;
      }
      break;
    }
    case Property::hamiltonian: {
      const auto& g = std::get<Graph>(perc.instance);
      const HamiltonianResult r = has_hamiltonian_cycle(g);
      out.verdict = r.hamiltonian ? Verdict::yes : Verdict::no;
      out.detail = r.hamiltonian ? "hamiltonian" : "not-hamiltonian";
      if (r.hamiltonian && e.decode == DecodeRule::project) {
        try {
          ham_cycle_project(r.cycle, std::get<Graph>(e.original));
          out.detail += ";decoded=cycle";
        } catch (const DecodeError&) {
          out.detail += ";decoded=invalid";
          out.verdict = Verdict::decode_fail;
        }
      }
      break;
    }
    case Property::val_at_least: {
      const auto& f = std::get<CspInstance>(perc.instance);
      const CspResult r = max_csp_value(f);
      out.detail = "val=" + to_string(r.value);
      if (e.decode == DecodeRule::expected) {
        const auto& original = std::get<CspInstance>(e.original);
        const Assignment t = r.witness ? *r.witness : Assignment(std::vector<std::uint8_t>(f.variable_count(), 0));
        try {
          const CspDecoding d = csp_expected_decode(original, t, context());
          const Rational decoded = eval_assignment(original, d.assignment);
          out.detail += ";expectation=" + to_string(d.expectation) + ";decoded=" + to_string(decoded);
          out.verdict = decoded >= e.target ? Verdict::yes : Verdict::no;
        } catch (const DecodeError&) {
          out.detail += ";decoded=empty-cloud";
          out.verdict = Verdict::decode_fail;
        }
      } else {
        out.verdict = r.value >= e.target ? Verdict::yes : Verdict::no;
      }
      break;
    }
    case Property::ss_feasible: {
      const SubsetSumResult r = subset_sum_decide(std::get<SubsetSumInstance>(perc.instance));
      out.verdict = r.feasible ? Verdict::yes : Verdict::no;
      out.detail = r.feasible ? "feasible" : "infeasible";
      break;
    }
    case Property::lift: {
      const LiftResult r = subset_sum_lift(prep.original_witness, *prep.gadget, perc.survivors);
      out.verdict = r.success ? Verdict::yes : Verdict::no;
      out.detail = r.success ? "lifted" : "unmatched-pair=" + std::to_string(*r.failed_pair);
      break;
    }
  }
  return out;
}

}  // namespace

void Experiment::validate() const {
  if (trials < 1) throw Error("experiment needs trials >= 1");
  if (workers < 1) throw Error("experiment needs workers >= 1");
  if (R < 1) throw Error("experiment needs R >= 1");
  if (decode_threshold < 1) throw Error("decode threshold must be >= 1");
  PercolationSpec{mode, p, seed, 0}.validate();

  const bool graph = std::holds_alternative<Graph>(original);
  const bool csp = std::holds_alternative<CspInstance>(original);
  const bool ss = std::holds_alternative<SubsetSumInstance>(original);
  switch (construction) {
    case Construction::none: break;
    case Construction::blowup:
    case Construction::coloring:
    case Construction::ham:
      if (!graph) throw Error("construction " + std::string(construction_name(construction)) + " needs a graph");
      break;
    case Construction::csp_blowup:
      if (!csp) throw Error("construction csp_blowup needs a CSP instance");
      break;
    case Construction::subset_sum:
      if (!ss) throw Error("construction subset_sum needs a subset-sum instance");
      break;
  }
  if (needs_graph(property) && !graph) throw Error("property " + std::string(property_name(property)) + " needs a graph");
  if (property == Property::val_at_least && !csp) throw Error("property val_at_least needs a CSP instance");
  if ((property == Property::ss_feasible || property == Property::lift) && !ss)
    throw Error("property " + std::string(property_name(property)) + " needs a subset-sum instance");
  if (property == Property::lift && construction != Construction::subset_sum)
    throw Error("property lift needs the subset_sum construction");

  const bool has_clouds = construction != Construction::none;
  switch (decode) {
    case DecodeRule::none: break;
    case DecodeRule::majority:
      if (property != Property::colorable || !has_clouds) throw Error("majority decode needs colorable on a blowup");
      break;
    case DecodeRule::threshold:
      if ((property != Property::alpha_at_least && property != Property::vc_at_most) || !has_clouds)
        throw Error("threshold decode needs alpha_at_least or vc_at_most on a blowup");
      break;
    case DecodeRule::expected:
      if (property != Property::val_at_least || construction != Construction::csp_blowup)
        throw Error("expected decode needs val_at_least on csp_blowup");
      break;
    case DecodeRule::project:
      if (property != Property::hamiltonian || construction != Construction::ham)
        throw Error("project decode needs hamiltonian on the ham gadget");
      break;
    case DecodeRule::lift:
      if (property != Property::lift) throw Error("lift decode goes with the lift property");
      break;
  }
}

TrialReport run_trial(const Experiment& e, std::int64_t trial) { return run_prepared(e, prepare(e), trial); }

ExperimentResult run_experiment(const Experiment& e) {
  const Prepared prep = prepare(e);
  const auto n = static_cast<std::size_t>(e.trials);
  std::vector<TrialReport> reports(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (std::size_t i; !failed && (i = next++) < n;) {
      try {
        reports[i] = run_prepared(e, prep, static_cast<std::int64_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  const int workers = std::min<std::int64_t>(e.workers, e.trials);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    const std::string prefix = "trial " + std::to_string(i) + ": ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const CapExceeded& x) {
      throw CapExceeded(prefix + x.what());
    } catch (const std::exception& x) {
      throw Error(prefix + x.what());
    }
  }

  std::int64_t yes = 0;
  for (const TrialReport& r : reports) yes += r.verdict == Verdict::yes ? 1 : 0;
  return ExperimentResult{wilson(yes, e.trials), std::move(reports)};
}

std::string report_csv(const ExperimentResult& r) {
  std::string out = "trial,seed,survivors,verdict,detail\n";
  for (const TrialReport& t : r.trials) {
    out += std::to_string(t.trial) + ',' + std::to_string(t.seed) + ',' + std::to_string(t.survivors) + ',';
    out += verdict_name(t.verdict);
    out += ',' + t.detail + '\n';
  }
  if (!r.trials.empty()) {
    char interval[64];
    std::snprintf(interval, sizeof interval, "%.6f:%.6f", r.summary.wilson_lo, r.summary.wilson_hi);
    out += "summary,,," + std::to_string(r.summary.successes) + '/' + std::to_string(r.summary.trials) + ',' +
           interval + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Experiment description files

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& value, int line, const std::string& key) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ParseError(line, "bad value '" + value + "' for " + key);
  return out;
}

Rational parse_rational(const std::string& value, int line) {
  try {
    return Rational(value);
  } catch (const std::exception&) {
    throw ParseError(line, "bad rational '" + value + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

Experiment parse_experiment(std::string_view text, const std::filesystem::path& base_dir) {
  Experiment e;
  std::optional<std::filesystem::path> instance;
  std::optional<Format> format;
  std::istringstream lines{std::string(text)};
  std::string raw;
  int number = 0;
  std::set<std::string> seen;
  while (std::getline(lines, raw)) {
    ++number;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError(number, "duplicate key '" + key + "'");
    try {
      if (key == "name") e.name = value;
      else if (key == "instance") instance = base_dir / value;
      else if (key == "format") format = parse_format(value);
      else if (key == "construction") e.construction = parse_construction(value);
      else if (key == "R") e.R = parse_number<int>(value, number, key);
      else if (key == "C") e.C = parse_number<double>(value, number, key);
      else if (key == "C_prime") e.C_prime = parse_number<int>(value, number, key);
      else if (key == "offset_bound") {
        if (value != "true" && value != "false") throw ParseError(number, "offset_bound must be true or false");
        e.enforce_offset_bound = value == "true";
      } else if (key == "mode") e.mode = parse_percolation_mode(value);
      else if (key == "p") e.p = parse_number<double>(value, number, key);
      else if (key == "seed") e.seed = parse_number<std::uint64_t>(value, number, key);
      else if (key == "trials") e.trials = parse_number<std::int64_t>(value, number, key);
      else if (key == "property") e.property = parse_property(value);
      else if (key == "target") e.target = parse_rational(value, number);
      else if (key == "decode") e.decode = parse_decode_rule(value);
      else if (key == "decode_threshold") e.decode_threshold = parse_number<int>(value, number, key);
      else if (key == "workers") e.workers = parse_number<int>(value, number, key);
      else throw ParseError(number, "unknown key '" + key + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const Error& x) {
      throw ParseError(number, x.what());
    }
  }
  if (!instance) throw ParseError(number, "missing key 'instance'");
  if (!format) throw ParseError(number, "missing key 'format'");
  e.original = parse_instance(read_file(*instance), *format);
  e.validate();
  return e;
}

Experiment load_experiment(const std::filesystem::path& file) {
  return parse_experiment(read_file(file), file.parent_path());
}

// ---------------------------------------------------------------------------
// Bound checkers

TuranReport check_turan_bound(const Graph& g) {
  if (g.is_directed()) throw Error("Turan check expects an undirected graph");
  TuranReport r;
  const BigInt l = g.vertex_count();
  const BigInt e = static_cast<long long>(g.edge_count());
  r.alpha = max_independent_set(g).value;
  r.bound = l == 0 ? Rational(0) : Rational(l * l, 2 * e + l);
  r.slack = Rational(r.alpha) - r.bound;
  r.holds = r.slack >= 0;
  return r;
}

EdgeCountReport check_edge_count_corollary(const Graph& g) {
  if (g.is_directed()) throw Error("edge-count check expects an undirected graph");
  const int n = g.vertex_count();
  if (n > 20) throw CapExceeded("edge-count check is exhaustive; n <= 20");
  EdgeCountReport r;
  r.k = max_independent_set(g).value + 1;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    const int l = std::popcount(mask);
    if (l < r.k) continue;
    std::int64_t spanned = 0;
    for (const Edge& e : g.edges())
      if ((mask >> (e.u - 1) & 1U) && (mask >> (e.v - 1) & 1U)) ++spanned;
    ++r.subsets;
    // spanned >= l(l-k)/2k  <=>  2k * spanned >= l(l-k)
    if (2 * static_cast<std::int64_t>(r.k) * spanned < static_cast<std::int64_t>(l) * (l - r.k)) ++r.violations;
  }
  return r;
}

AlphaPercolationReport check_alpha_percolation(const Graph& g, double p, std::int64_t trials, std::uint64_t seed,
                                               const std::vector<double>& A_grid) {
  AlphaPercolationReport r;
  r.alpha = max_independent_set(g).value;
  for (std::int64_t t = 0; t < trials; ++t) {
    const PercolationSpec spec{PercolationMode::edge, p, seed, static_cast<std::uint64_t>(t)};
    r.percolated_alpha.push_back(max_independent_set(edge_percolate(g, spec).instance).value);
  }
  const double scale = r.alpha / p * std::log(g.vertex_count() * p);
  for (double A : A_grid) {
    const auto over = std::count_if(r.percolated_alpha.begin(), r.percolated_alpha.end(),
                                    [&](int a) { return a > A * scale; });
    r.sweep.push_back({A, wilson(over, trials)});
    if (!r.empirical_A && r.sweep.back().frequency.estimate < 0.05) r.empirical_A = A;
  }
  return r;
}

bool has_bipartite_independent_set(const std::vector<std::uint64_t>& adjacency, int right_count, int t) {
  const int left = static_cast<int>(adjacency.size());
  if (right_count > 64) throw CapExceeded("bipartite check supports at most 64 right vertices");
  if (t <= 0) return true;
  if (t > left || t > right_count) return false;
  const std::uint64_t full = right_count == 64 ? ~0ULL : (1ULL << right_count) - 1;
  // Grow a left set in index order, keeping its common non-neighborhood.
  auto search = [&](auto&& self, int start, int chosen, std::uint64_t common) -> bool {
    if (chosen == t) return true;
    for (int i = start; i <= left - (t - chosen); ++i) {
      const std::uint64_t next = common & ~adjacency[static_cast<std::size_t>(i)] & full;
      if (std::popcount(next) >= t && self(self, i + 1, chosen + 1, next)) return true;
    }
    return false;
  };
  return search(search, 0, 0, full);
}

KrrReport check_krr_lemma(int R, double p, std::int64_t trials, std::uint64_t seed, const std::vector<double>& C_grid) {
  if (R < 2 || R > 64) throw CapExceeded("K_{R,R} check needs 2 <= R <= 64");
  KrrReport r;
  r.R = R;
  r.bound = std::pow(static_cast<double>(R), -3.0);
  std::vector<Edge> edges;
  for (int a = 1; a <= R; ++a)
    for (int b = 1; b <= R; ++b) edges.push_back({a, R + b});
  const Graph k = Graph::undirected(2 * R, std::move(edges));

  std::vector<std::vector<std::uint64_t>> adjacency;
  for (std::int64_t t = 0; t < trials; ++t) {
    const Graph perc = edge_percolate(k, {PercolationMode::edge, p, seed, static_cast<std::uint64_t>(t)}).instance;
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(R), 0);
    for (const Edge& e : perc.edges()) adj[static_cast<std::size_t>(e.u - 1)] |= 1ULL << (e.v - R - 1);
    adjacency.push_back(std::move(adj));
  }
  for (double C : C_grid) {
    const int t = static_cast<int>(std::ceil(C * std::log(static_cast<double>(R)) / p));
    std::int64_t bad = 0;
    for (const auto& adj : adjacency) bad += has_bipartite_independent_set(adj, R, t) ? 1 : 0;
    r.sweep.push_back({C, wilson(bad, trials)});
  }
  return r;
}

SandwichReport check_vc_sandwich(const Graph& g, int R, double p, std::int64_t trials, std::uint64_t seed,
                                 const std::vector<double>& C_grid) {
  SandwichReport r;
  r.alpha = max_independent_set(g).value;
  const Graph h = blowup_graph(g, R).graph;
  const int lower = r.alpha * R;
  for (std::int64_t t = 0; t < trials; ++t) {
    const Graph perc = edge_percolate(h, {PercolationMode::edge, p, seed, static_cast<std::uint64_t>(t)}).instance;
    const int a = max_independent_set(perc).value;
    r.percolated_alpha.push_back(a);
    if (a < lower) ++r.lower_violations;
  }
  for (double C : C_grid) {
    const double upper = lower + C * std::log(static_cast<double>(R)) / p * g.vertex_count();
    const auto over = std::count_if(r.percolated_alpha.begin(), r.percolated_alpha.end(),
                                    [&](int a) { return a > upper; });
    r.sweep.push_back({C, wilson(over, trials)});
  }
  return r;
}

ConcentrationReport check_val_concentration(const CspInstance& f, PercolationMode mode, double p, double epsilon,
                                            std::int64_t trials, std::uint64_t seed) {
  if (mode != PercolationMode::clause && mode != PercolationMode::variable)
    throw Error("value concentration uses clause or variable percolation");
  ConcentrationReport r;
  r.value = max_csp_value(f).value;
  std::int64_t deviations = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const PercolationSpec spec{mode, p, seed, static_cast<std::uint64_t>(t)};
    const CspInstance perc =
        mode == PercolationMode::clause ? clause_percolate(f, spec).instance : variable_percolate(f, spec).instance;
    const Rational v = max_csp_value(perc).value;
    r.percolated.push_back(v);
    const Rational gap = v > r.value ? Rational(v - r.value) : Rational(r.value - v);
    if (gap.convert_to<double>() >= epsilon) ++deviations;
    if (r.value == 1 && v != 1) r.one_sided_holds = false;
  }
  r.deviation = wilson(deviations, trials);
  return r;
}

ChernoffReport check_chernoff(int n, double p, int m, std::int64_t trials, std::uint64_t seed,
                              const std::vector<double>& C_grid) {
  if (n < 1 || m < 1) throw Error("Chernoff check needs n, m >= 1");
  if (!(p >= 0 && p <= 1)) throw Error("Chernoff check needs p in [0,1]");
  ChernoffReport r;
  r.bound = std::pow(static_cast<double>(m), -3.0);
  const double mean = p * n;
  for (std::int64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    double worst = 0.0;
    for (int j = 0; j < m; ++j) {
      std::int64_t sum = 0;
      for (int i = 0; i < n; ++i) sum += rng.unit() < p ? 1 : 0;
      worst = std::max(worst, std::abs(static_cast<double>(sum) - mean));
    }
    r.max_deviation.push_back(worst);
  }
  for (double C : C_grid) {
    const double limit = std::sqrt(C * p * n * std::log(static_cast<double>(m)));
    const auto over = std::count_if(r.max_deviation.begin(), r.max_deviation.end(),
                                    [&](double d) { return d > 0 && d >= limit; });
    r.sweep.push_back({C, wilson(over, trials)});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Generators

Graph random_graph(int n, double q, std::uint64_t seed) {
  if (n < 0) throw Error("random_graph needs n >= 0");
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (rng.bernoulli(q)) edges.push_back({u, v});
  return Graph::undirected(n, std::move(edges));
}

Graph random_digraph(int n, double q, std::uint64_t seed) {
  if (n < 0) throw Error("random_digraph needs n >= 0");
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v && rng.bernoulli(q)) edges.push_back({u, v});
  return Graph::directed(n, std::move(edges));
}

CspInstance random_kcnf(int n, int m, int k, std::uint64_t seed) {
  if (k < 1 || k > n || k > kMaxArity) throw Error("random_kcnf needs 1 <= k <= min(n, 16)");
  if (m < 0) throw Error("random_kcnf needs m >= 0");
  SplitMix64 rng(seed);
  std::vector<Clause> clauses;
  std::set<Clause> seen;
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (std::int64_t attempts = 0; static_cast<int>(clauses.size()) < m; ++attempts) {
    if (attempts > 100LL * m + 1000) throw Error("random_kcnf could not find enough distinct clauses");
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    std::vector<int> literals;
    for (int j = 0; j < k; ++j) {
      const auto pick = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - j)));
      std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(pick)]);
      literals.push_back(pool[static_cast<std::size_t>(j)]);
    }
    std::sort(literals.begin(), literals.end());
    for (int& lit : literals)
      if (rng.bernoulli(0.5)) lit = -lit;
    Clause c = Clause::disjunction(literals);
    if (seen.insert(c).second) clauses.push_back(std::move(c));
  }
  return CspInstance(n, k, std::move(clauses));
}

PlantedColoring planted_3colorable(int n, double q, std::uint64_t seed) {
  if (n < 1) throw Error("planted_3colorable needs n >= 1");
  SplitMix64 rng(seed);
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (int& c : colors) c = 1 + static_cast<int>(rng.below(3));
  if (n >= 3) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(order[static_cast<std::size_t>(i)], order[rng.below(static_cast<std::uint64_t>(i + 1))]);
    for (int c = 0; c < 3; ++c) colors[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])] = c + 1;
  }
  std::vector<Edge> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (colors[static_cast<std::size_t>(u - 1)] != colors[static_cast<std::size_t>(v - 1)] && rng.bernoulli(q))
        edges.push_back({u, v});
  return {Graph::undirected(n, std::move(edges)), Coloring(std::move(colors))};
}

PlantedSubsetSum planted_subset_sum(int n, std::int64_t max_value, std::uint64_t seed) {
  if (n < 1 || max_value < 1) throw Error("planted_subset_sum needs n >= 1 and max_value >= 1");
  SplitMix64 rng(seed);
  std::vector<BigInt> items;
  for (int i = 0; i < n; ++i) items.emplace_back(1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_value))));
  std::vector<int> witness;
  for (int i = 1; i <= n; ++i)
    if (rng.bernoulli(0.5)) witness.push_back(i);
  if (witness.empty()) witness.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
  BigInt target = 0;
  for (int i : witness) target += items[static_cast<std::size_t>(i - 1)];
  return {SubsetSumInstance(std::move(items), std::move(target)), std::move(witness)};
}

}  // namespace perc
