#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kpgnn/kpgnn.hpp"

using namespace kpgnn;

namespace {

struct OutputFlags {
  std::string out;
  std::vector<std::string> formats;
  std::string config;
  std::string save_config;
};

void add_output_flags(CLI::App* cmd, OutputFlags& f, bool experiment = true) {
  cmd->add_option("--out", f.out, "output path stem; stdout when omitted");
  cmd->add_option("--format", f.formats, "csv, json or svg (repeatable)")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  if (experiment) {
    cmd->add_option("--config", f.config, "load all parameters from a saved config")
        ->check(CLI::ExistingFile);
    cmd->add_option("--save-config", f.save_config, "write the effective config as JSON");
  }
}

void emit(const ResultTable& table, const OutputFlags& f, const std::vector<std::string>& fallback) {
  const auto names = f.formats.empty() ? fallback : f.formats;
  std::vector<OutputFormat> formats;
  for (const auto& n : names) formats.push_back(parse_format(n));
  if (f.out.empty()) {
    std::cout << render(table, formats.front());
    return;
  }
  for (const auto& path : emit_outputs(table, f.out, formats)) std::cerr << "wrote " << path << "\n";
}

ExperimentConfig effective(const std::string& command, const OutputFlags& f, ExperimentConfig cfg) {
  if (!f.config.empty()) {
    cfg = load_config(f.config);
    if (cfg.command != command) {
      throw Error(ErrorCode::kInvalidArgument, "config is for '" + cfg.command + "', not '" + command + "'");
    }
  }
  cfg.command = command;
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.formats.empty()) cfg.formats = f.formats;
  if (!f.save_config.empty()) save_config(cfg, f.save_config);
  return cfg;
}

OutputFlags flags_of(const ExperimentConfig& cfg) { return {cfg.out, cfg.formats, {}, {}}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-hop color refinement experiments"};
  app.require_subcommand(1);

  // regular-sim
  ExperimentConfig sim_cfg;
  OutputFlags sim_flags;
  auto* sim = app.add_subcommand("regular-sim", "random regular graphs under 1-layer SPD K-hop refinement");
  sim->add_option("--n", sim_cfg.regular_sim.n_list, "node counts");
  sim->add_option("--r", sim_cfg.regular_sim.r, "degree");
  sim->add_option("--graphs", sim_cfg.regular_sim.graphs_per_n, "graphs per node count");
  sim->add_option("-K,--k-max", sim_cfg.regular_sim.k_max, "largest K");
  sim->add_option("--seed", sim_cfg.regular_sim.seed, "base seed");
  add_output_flags(sim, sim_flags);

  // table1
  ExperimentConfig t1_cfg;
  OutputFlags t1_flags;
  std::string dataset = "csl";
  std::vector<std::string> t1_kernels;
  bool t1_capped = false;
  auto* t1 = app.add_subcommand("table1", "distinct fingerprints over a benchmark corpus");
  t1->add_option("--dataset", dataset, "csl, sr or pairs")->check(CLI::IsMember({"csl", "sr", "pairs"}));
  t1->add_option("--file", t1_cfg.table1.path, "graph6 corpus for sr / pairs");
  t1->add_option("--method", t1_cfg.table1.methods, "wl1, khop, gineplus, kp, de1, fwl2 (repeatable)");
  t1->add_option("--kernel", t1_kernels, "spd or gd (repeatable)")->check(CLI::IsMember({"spd", "gd"}));
  t1->add_option("--k-min", t1_cfg.table1.k_min, "smallest K");
  t1->add_option("-K,--k-max", t1_cfg.table1.k_max, "largest K");
  t1->add_option("-L", t1_cfg.table1.L, "iterations; 0 means L = K");
  t1->add_option("--kprime", t1_cfg.table1.k_prime, "k' for KP");
  t1->add_flag("--capped", t1_capped, "cap peripheral edge and component counts (6 and 3)");
  t1->add_flag("--walk-counts", t1_cfg.table1.walk_counts, "attach walk counts to hop neighbors");
  add_output_flags(t1, t1_flags);

  // property-suite
  ExperimentConfig ps_cfg;
  OutputFlags ps_flags;
  std::string report_path;
  auto* ps = app.add_subcommand("property-suite", "3-WL bound, hierarchy and witness searches");
  ps->add_option("--er-pairs", ps_cfg.property_suite.er_pairs, "random ER pairs");
  ps->add_option("--max-n", ps_cfg.property_suite.er_max_n, "largest ER graph");
  ps->add_option("--witness-max-n", ps_cfg.property_suite.witness_max_n, "largest enumerated graph");
  ps->add_option("--seed", ps_cfg.property_suite.seed, "base seed");
  ps->add_option("--report", report_path, "write the JSON failure/witness report here");
  add_output_flags(ps, ps_flags);

  // pair
  PairParams pp;
  std::string pair_kernel = "spd";
  bool pair_capped = false;
  std::string pair_out;
  auto* pair = app.add_subcommand("pair", "verdict and diagnostics for two graphs");
  pair->add_option("a", pp.a, "graph6 file, catalog name or graph6 string")->required();
  pair->add_option("b", pp.b, "graph6 file, catalog name or graph6 string")->required();
  pair->add_option("--method", pp.method, "wl1, khop, gineplus, kp, de1 or fwl2")
      ->check(CLI::IsMember({"wl1", "khop", "gineplus", "kp", "de1", "fwl2"}));
  pair->add_option("--kernel", pair_kernel, "spd or gd")->check(CLI::IsMember({"spd", "gd"}));
  pair->add_option("-K", pp.K, "hops");
  pair->add_option("-L", pp.L, "iterations");
  pair->add_option("--kprime", pp.k_prime, "k' for KP");
  pair->add_flag("--capped", pair_capped, "cap peripheral edge and component counts");
  pair->add_flag("--walk-counts", pp.walk_counts, "attach walk counts to hop neighbors");
  pair->add_option("--out", pair_out, "write the JSON report here");

  // catalog
  std::string catalog_name;
  auto* cat = app.add_subcommand("catalog", "list named graphs or print one as graph6");
  cat->add_option("name", catalog_name, "graph name, e.g. shrikhande or cycle(6)");

  // gen
  GeneratorSpec gs;
  std::string gen_kind = "regular";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate graphs as graph6 lines");
  gen->add_option("--kind", gen_kind, "regular, csl, er, catalog or enumerate")
      ->check(CLI::IsMember({"regular", "csl", "er", "catalog", "enumerate"}));
  gen->add_option("--n", gs.n, "nodes");
  gen->add_option("--r", gs.r, "degree");
  gen->add_option("--skip", gs.skip, "CSL skip");
  gen->add_option("--p", gs.p, "edge probability");
  gen->add_option("--name", gs.name, "catalog name");
  gen->add_option("--seed", gs.seed, "seed");
  gen->add_option("--count", gs.count, "number of seeded graphs");
  gen->add_option("--out", gen_out, "output file; stdout when omitted");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const auto cfg = effective("regular-sim", sim_flags, sim_cfg);
      emit(cmd_regular_sim(cfg.regular_sim), flags_of(cfg), {"csv"});
    } else if (*t1) {
      t1_cfg.table1.dataset = nlohmann::json(dataset).get<Dataset>();
      if (!t1_kernels.empty()) {
        t1_cfg.table1.kernels.clear();
        for (const auto& k : t1_kernels) t1_cfg.table1.kernels.push_back(parse_kernel(k));
      }
      t1_cfg.table1.uncapped = !t1_capped;
      const auto cfg = effective("table1", t1_flags, t1_cfg);
      const auto table = cmd_table1(cfg.table1);
      if (const auto it = table.metadata.find("warning"); it != table.metadata.end())
        std::cerr << "warning: " << it->second << "\n";
      emit(table, flags_of(cfg), {"csv"});
    } else if (*ps) {
      const auto cfg = effective("property-suite", ps_flags, ps_cfg);
      const auto result = cmd_property_suite(cfg.property_suite);
      emit(result.table, flags_of(cfg), {"csv"});
      if (!report_path.empty()) write_file(report_path, result.report.dump(2) + "\n");
      if (!result.ok()) {
        std::cerr << to_string(ErrorCode::kSuiteFailure) << ": " << result.report.dump() << "\n";
        return 1;
      }
    } else if (*pair) {
      pp.kernel = parse_kernel(pair_kernel);
      pp.uncapped = !pair_capped;
      const Graph a = resolve_graph(pp.a);
      const Graph b = resolve_graph(pp.b);
      const auto method = make_corpus_method(pp.method, pp.kernel, pp.K, pp.L, pp.k_prime, pp.uncapped,
                                             pp.walk_counts);
      const auto report = cmd_pair(a, b, method);
      const std::string text = report.diagnostics.dump(2) + "\n";
      if (pair_out.empty()) {
        std::cout << text;
      } else {
        write_file(pair_out, text);
        std::cout << to_string(report.verdict) << "\n";
      }
    } else if (*cat) {
      if (catalog_name.empty()) {
        for (const auto& n : catalog_names()) std::cout << n << "\n";
      } else {
        std::cout << graph6::emit(catalog(catalog_name)) << "\n";
      }
    } else if (*gen) {
      if (gen_kind == "regular") gs.kind = GeneratorKind::kRandomRegular;
      if (gen_kind == "csl") gs.kind = GeneratorKind::kCsl;
      if (gen_kind == "er") gs.kind = GeneratorKind::kEr;
      if (gen_kind == "catalog") gs.kind = GeneratorKind::kCatalog;
      if (gen_kind == "enumerate") gs.kind = GeneratorKind::kEnumerate;
      std::string text;
      for (const auto& g : generate(gs)) text += graph6::emit(g) + "\n";
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_file(gen_out, text);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
