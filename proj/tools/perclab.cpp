// perclab: command-line front end for generating, reducing, percolating,
// solving and decoding instances, and for running experiment files.

#include "perc/decode.hpp"
#include "perc/error.hpp"
#include "perc/lab.hpp"
#include "perc/percolate.hpp"
#include "perc/reduce.hpp"
#include "perc/solve.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace perc;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// Whitespace-separated integers; lines starting with "c" are headers.
std::vector<int> read_indices(const std::string& path) {
  std::istringstream lines(read_file(path));
  std::vector<int> out;
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("c", 0) == 0) continue;
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoi(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw Error("bad index '" + token + "' in " + path);
      }
    }
  }
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

struct Common {
  std::uint64_t seed = 0;
  std::int64_t trials = 1;
  double p = 1.0;
  int R = 1;
  double C = 1.0;
  std::string out;
  std::string format = "graph";
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Percolation-robust reduction laboratory"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Master seed");
    sub->add_option("--trials", common.trials, "Trial count");
    sub->add_option("--p", common.p, "Survival probability");
    sub->add_option("--R", common.R, "Blowup factor");
    sub->add_option("--C", common.C, "Log-factor constant");
    sub->add_option("--out", common.out, "Output path (stdout when omitted)");
    sub->add_option("--format", common.format, "graph | cnf | csp | ss")
        ->check(CLI::IsMember({"graph", "cnf", "csp", "ss"}));
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random or planted instance");
  add_common(gen);
  std::string kind = "graph";
  int n = 10, m = 20, k = 3;
  double q = 0.5;
  std::int64_t max_value = 100;
  gen->add_option("--kind", kind, "graph | digraph | kcnf | planted3 | plantedss")
      ->check(CLI::IsMember({"graph", "digraph", "kcnf", "planted3", "plantedss"}));
  gen->add_option("--n", n, "Vertices, variables or items");
  gen->add_option("--m", m, "Clauses (kcnf)");
  gen->add_option("--k", k, "Clause arity (kcnf)");
  gen->add_option("--q", q, "Edge probability");
  gen->add_option("--max", max_value, "Largest item (plantedss)");

  // reduce
  auto* red = app.add_subcommand("reduce", "Apply a construction; writes <out>.cloudmap alongside");
  add_common(red);
  std::string in_path, construction = "blowup";
  int c_prime = 0;
  bool no_offset_bound = false;
  red->add_option("--in", in_path, "Input instance")->required();
  red->add_option("--construction", construction, "blowup | coloring | ham | csp_blowup | subset_sum")
      ->check(CLI::IsMember({"blowup", "coloring", "ham", "csp_blowup", "subset_sum"}));
  red->add_option("--C-prime", c_prime, "Subset-sum exponent (0 = smallest valid)");
  red->add_flag("--no-offset-bound", no_offset_bound, "Allow R >= N^2 in the subset-sum gadget");

  // percolate
  auto* perc_cmd = app.add_subcommand("percolate", "Percolate an instance; writes <out>.survivors alongside");
  add_common(perc_cmd);
  std::string mode = "edge";
  std::uint64_t trial = 0;
  perc_cmd->add_option("--in", in_path, "Input instance")->required();
  perc_cmd->add_option("--mode", mode, "edge | vertex | clause | variable | item")
      ->check(CLI::IsMember({"edge", "vertex", "clause", "variable", "item"}));
  perc_cmd->add_option("--trial", trial, "Trial index");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Run an exact oracle");
  add_common(solve_cmd);
  std::string problem = "mis";
  int colors = 3;
  solve_cmd->add_option("--in", in_path, "Input instance")->required();
  solve_cmd->add_option("--problem", problem, "color | chromatic | mis | vc | ham | csp | ss")
      ->check(CLI::IsMember({"color", "chromatic", "mis", "vc", "ham", "csp", "ss"}));
  solve_cmd->add_option("--q", colors, "Colors for --problem color");

  // decode
  auto* dec = app.add_subcommand("decode", "Map a reduced-instance witness back to the original");
  add_common(dec);
  std::string rule = "majority", witness_path, cloud_path, survivor_path, original_path;
  int threshold = 1;
  dec->add_option("--rule", rule, "majority | threshold | expected | project | lift")
      ->check(CLI::IsMember({"majority", "threshold", "expected", "project", "lift"}));
  dec->add_option("--witness", witness_path, "Witness on the (percolated) reduced instance")->required();
  dec->add_option("--original", original_path, "Original instance")->required();
  dec->add_option("--cloudmap", cloud_path, "Cloud map (not needed for project and lift)");
  dec->add_option("--survivors", survivor_path, "Survivor map of the percolation, if any");
  dec->add_option("--threshold", threshold, "Cloud hits needed (threshold rule)");
  dec->add_option("--C-prime", c_prime, "Subset-sum exponent used for the gadget (lift)");
  dec->add_flag("--no-offset-bound", no_offset_bound, "Gadget was built with R >= N^2 (lift)");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment description file and write CSV");
  add_common(exp_cmd);
  std::string exp_path;
  int workers = 0;
  exp_cmd->add_option("file", exp_path, "Experiment description")->required();
  exp_cmd->add_option("--workers", workers, "Worker threads (results do not depend on it)");

  CLI11_PARSE(app, argc, argv);

  try {
    const Format format = parse_format(common.format);
    if (gen->parsed()) {
      if (kind == "graph") emit(common.out, serialize(random_graph(n, q, common.seed)));
      else if (kind == "digraph") emit(common.out, serialize(random_digraph(n, q, common.seed)));
      else if (kind == "kcnf") emit(common.out, serialize_cnf(random_kcnf(n, m, k, common.seed)));
      else if (kind == "planted3") {
        const PlantedColoring p = planted_3colorable(n, q, common.seed);
        std::vector<int> hidden(p.coloring.colors().begin(), p.coloring.colors().end());
        emit(common.out, "c planted coloring " + join(hidden) + "\n" + serialize(p.graph));
      } else {
        const PlantedSubsetSum p = planted_subset_sum(n, max_value, common.seed);
        emit(common.out, "c planted witness " + join(p.witness) + "\n" + serialize(p.instance));
      }
    } else if (red->parsed()) {
      const Instance inst = parse_instance(read_file(in_path), format);
      Instance produced;
      CloudMap clouds;
      if (construction == "csp_blowup") {
        CspBlowup b = csp_cloud_blowup(std::get<CspInstance>(inst), common.R);
        produced = b.formula;
        clouds = b.variable_clouds;
      } else if (construction == "subset_sum") {
        const auto& s = std::get<SubsetSumInstance>(inst);
        const int c = c_prime > 0 ? c_prime : minimal_gadget_exponent(s, common.R);
        SubsetSumGadget g = subset_sum_gadget(s, common.R, c, GadgetOptions{!no_offset_bound});
        produced = g.instance;
        clouds = g.clouds;
        std::cerr << "C' = " << c << "\n";
      } else {
        const Graph& g = std::get<Graph>(inst);
        GraphBlowup b = construction == "blowup"     ? blowup_graph(g, common.R)
                        : construction == "coloring" ? coloring_blowup(g, common.C)
                                                     : ham_gadget(g, common.R);
        produced = b.graph;
        clouds = b.clouds;
        if (construction == "coloring") std::cerr << "R = " << b.R << "\n";
      }
      emit(common.out, serialize_instance(produced, format));
      if (!common.out.empty()) emit(common.out + ".cloudmap", serialize(clouds));
    } else if (perc_cmd->parsed()) {
      const Instance inst = parse_instance(read_file(in_path), format);
      const auto r = percolate(inst, PercolationSpec{parse_percolation_mode(mode), common.p, common.seed, trial});
      emit(common.out, serialize_instance(r.instance, format));
      if (!common.out.empty()) emit(common.out + ".survivors", serialize(r.survivors));
    } else if (solve_cmd->parsed()) {
      const Instance inst = parse_instance(read_file(in_path), format);
      std::ostringstream out;
      if (problem == "csp") {
        const CspResult r = max_csp_value(std::get<CspInstance>(inst));
        out << "c value " << to_string(r.value) << '\n';
        if (r.witness) {
          std::vector<int> bits(r.witness->values().begin(), r.witness->values().end());
          out << join(bits) << '\n';
        }
      } else if (problem == "ss") {
        const SubsetSumResult r = subset_sum_decide(std::get<SubsetSumInstance>(inst));
        out << "c " << (r.feasible ? "feasible" : "infeasible") << '\n' << join(r.witness) << '\n';
      } else {
        const Graph& g = std::get<Graph>(inst);
        if (problem == "color") {
          const ColoringResult r = is_k_colorable(g, colors);
          out << "c " << (r.colorable ? "colorable" : "not-colorable") << '\n';
          if (r.witness) out << join({r.witness->colors().begin(), r.witness->colors().end()}) << '\n';
        } else if (problem == "chromatic") {
          const ChromaticResult r = chromatic_number(g);
          out << "c chromatic " << r.chromatic_number << '\n'
              << join({r.witness.colors().begin(), r.witness.colors().end()}) << '\n';
        } else if (problem == "mis" || problem == "vc") {
          const VertexSetResult r = problem == "mis" ? max_independent_set(g) : min_vertex_cover(g);
          out << "c " << problem << ' ' << r.value << '\n' << join(r.witness) << '\n';
        } else {
          const HamiltonianResult r = has_hamiltonian_cycle(g);
          out << "c " << (r.hamiltonian ? "hamiltonian" : "not-hamiltonian") << '\n' << join(r.cycle) << '\n';
        }
      }
      emit(common.out, out.str());
    } else if (dec->parsed()) {
      const Instance original = parse_instance(read_file(original_path), format);
      const std::vector<int> witness = read_indices(witness_path);
      std::optional<SurvivorMap> survivors;
      if (!survivor_path.empty()) survivors = parse_survivor_map(read_file(survivor_path));
      auto context = [&] {
        if (cloud_path.empty()) throw Error("--cloudmap is required for rule " + rule);
        return DecodeContext{parse_cloud_map(read_file(cloud_path)), survivors};
      };
      std::vector<int> decoded;
      if (rule == "majority") {
        const Coloring c = majority_color_decode(Coloring(witness), context());
        decoded.assign(c.colors().begin(), c.colors().end());
      } else if (rule == "threshold") {
        decoded = threshold_is_decode(witness, threshold, context());
      } else if (rule == "expected") {
        const std::vector<std::uint8_t> bits(witness.begin(), witness.end());
        const CspDecoding d = csp_expected_decode(std::get<CspInstance>(original), Assignment(bits), context());
        std::cerr << "expectation " << to_string(d.expectation) << "\n";
        decoded.assign(d.assignment.values().begin(), d.assignment.values().end());
      } else if (rule == "project") {
        decoded = ham_cycle_project(witness, std::get<Graph>(original));
      } else {
        const auto& s = std::get<SubsetSumInstance>(original);
        const int c = c_prime > 0 ? c_prime : minimal_gadget_exponent(s, common.R);
        const SubsetSumGadget g = subset_sum_gadget(s, common.R, c, GadgetOptions{!no_offset_bound});
        const LiftResult r = subset_sum_lift(witness, g, survivors);
        if (!r.success) throw DecodeError("no matching offsets for pair (" + std::to_string(*r.failed_pair) + ", " +
                                          std::to_string(*r.failed_pair + 1) + ")");
        decoded = r.items;
      }
      emit(common.out, serialize_witness(rule, decoded));
    } else if (exp_cmd->parsed()) {
      Experiment e = load_experiment(exp_path);
      if (exp_cmd->count("--seed")) e.seed = common.seed;
      if (exp_cmd->count("--trials")) e.trials = common.trials;
      if (exp_cmd->count("--p")) e.p = common.p;
      if (exp_cmd->count("--R")) e.R = common.R;
      if (exp_cmd->count("--C")) e.C = common.C;
      if (workers > 0) e.workers = workers;
      const ExperimentResult r = run_experiment(e);
      emit(common.out, report_csv(r));
    }
  } catch (const std::exception& e) {
    std::cerr << "perclab: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
