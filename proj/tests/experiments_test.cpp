#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "kpgnn/experiments.hpp"

using namespace kpgnn;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "kpgnn_experiments_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_lines(const std::string& name, const std::vector<std::string>& lines) {
  const auto path = scratch(name);
  std::ofstream out(path);
  for (const auto& l : lines) out << l << "\n";
  return path.string();
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Results, CsvQuotingAndNumbers) {
  ResultTable t;
  t.param_names = {"name", "K"};
  t.add({"a,b", "2"}, "say \"hi\"", 0.1);
  t.add({"plain", "3"}, "m", 1.0);
  EXPECT_EQ(to_csv(t), "name,K,metric,value\r\n\"a,b\",2,\"say \"\"hi\"\"\",0.1\r\nplain,3,m,1\r\n");
  EXPECT_THROW(t.add({"x"}, "m", 0), Error);
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333333333");
}

TEST(Results, EmptyTableHasHeaderOnly) {
  ResultTable t;
  t.param_names = {"n"};
  EXPECT_EQ(to_csv(t), "n,metric,value\r\n");
}

TEST(Results, JsonRoundTrip) {
  ResultTable t = make_table({"n", "K"}, "unit", 3);
  t.add({"20", "1"}, "x", 0.25);
  t.add({"40", "2"}, "y", 1e-9);
  const auto back = table_from_json(nlohmann::json::parse(to_json(t).dump()));
  EXPECT_EQ(back, t);
  EXPECT_EQ(back.find("y", {{"n", "40"}}), 1e-9);
  EXPECT_FALSE(back.find("y", {{"n", "20"}}).has_value());
  EXPECT_EQ(t.metadata.at("prng"), std::string(kPrngId));
  EXPECT_THROW(table_from_json(nlohmann::json::parse("{\"rows\": 1}")), Error);
}

TEST(Results, HeatmapHasOneCellPerPoint) {
  ResultTable t;
  t.param_names = {"n", "K"};
  for (const char* n : {"20", "40", "160"})
    for (const char* k : {"1", "2"}) {
      t.add({n, k}, "node_pair_indistinguishable_fraction", 0.5);
      t.add({n, k}, "other", 0.5);
    }
  const auto svg = to_svg_heatmap(t);
  EXPECT_EQ(count_of(svg, "<rect"), 6u);
  EXPECT_NE(svg.find("0.5000"), std::string::npos);
  // Numeric order: 40 before 160.
  EXPECT_LT(svg.find(">40<"), svg.find(">160<"));
  HeatmapAxes bad;
  bad.x = "missing";
  EXPECT_THROW(to_svg_heatmap(t, bad), Error);
}

TEST(Results, EmitOutputs) {
  ResultTable t;
  t.param_names = {"n", "K"};
  t.add({"1", "1"}, "node_pair_indistinguishable_fraction", 0);
  const auto stem = scratch("emit").string();
  const auto paths = emit_outputs(t, stem, {OutputFormat::kCsv, OutputFormat::kJson, OutputFormat::kSvg});
  ASSERT_EQ(paths.size(), 3u);
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p));
  EXPECT_EQ(parse_format("json"), OutputFormat::kJson);
  EXPECT_THROW(parse_format("xml"), Error);
  EXPECT_THROW(write_file("/nonexistent-dir/x.csv", "x"), Error);
}

TEST(Config, RoundTrip) {
  ExperimentConfig cfg;
  cfg.command = "table1";
  cfg.table1.kernels = {Kernel::kGd};
  cfg.table1.dataset = Dataset::kPairFile;
  cfg.regular_sim.n_list = {10, 12};
  cfg.formats = {"csv", "svg"};
  const auto path = scratch("cfg.json").string();
  save_config(cfg, path);
  const auto back = load_config(path);
  EXPECT_EQ(nlohmann::json(back), nlohmann::json(cfg));
  EXPECT_EQ(nlohmann::json(back.table1)["dataset"], "pairs");

  // Missing fields take defaults.
  const auto partial = write_lines("partial.json", {"{\"command\": \"regular-sim\", \"regular_sim\": {\"r\": 4}}"});
  const auto p = load_config(partial);
  EXPECT_EQ(p.regular_sim.r, 4u);
  EXPECT_EQ(p.regular_sim.graphs_per_n, 100u);
  EXPECT_THROW(load_config(write_lines("broken.json", {"{"})), Error);
  EXPECT_THROW(load_config(scratch("absent.json").string()), Error);
}

TEST(Experiments, StronglyRegularParameters) {
  const auto s = strongly_regular_parameters(catalog("shrikhande"));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(*s, (std::array<std::size_t, 4>{16, 6, 2, 2}));
  EXPECT_FALSE(strongly_regular_parameters(catalog("prism")).has_value());
}

TEST(Experiments, ResolveGraphOrder) {
  EXPECT_EQ(resolve_graph("prism"), catalog("prism"));
  EXPECT_EQ(resolve_graph("Bw"), catalog("cycle(3)"));
  const auto file = write_lines("one.g6", {"A_", "Bw"});
  EXPECT_EQ(resolve_graph(file).node_count(), 2u);
  EXPECT_THROW(resolve_graph("not a graph"), Error);
}

TEST(Experiments, Table1OnCsl) {
  Table1Params p;
  p.methods = {"wl1", "khop", "kp", "fwl2"};
  p.kernels = {Kernel::kSpd};
  p.k_min = 1;
  p.k_max = 2;
  const auto t = cmd_table1(p);
  EXPECT_EQ(t.find("distinct_fingerprints", {{"method", "wl1"}}), 1.0);
  EXPECT_EQ(t.find("pairs_distinguished", {{"method", "wl1"}}), 0.0);
  EXPECT_EQ(t.find("distinct_fingerprints", {{"method", "fwl2"}}), 10.0);
  EXPECT_EQ(t.find("pairs_distinguished", {{"method", "fwl2"}}), 45.0);
  EXPECT_EQ(t.find("distinguished", {{"method", "fwl2"}, {"a", "csl41_2"}, {"b", "csl41_3"}}), 1.0);
  EXPECT_EQ(t.find("distinct_fingerprints", {{"method", "khop"}, {"K", "1"}}), 1.0);
  EXPECT_EQ(t.metadata.at("L_rule"), "L=K");
  EXPECT_EQ(cmd_table1(p), t);
}

TEST(Experiments, Table1FileDatasets) {
  Table1Params p;
  p.methods = {"khop"};
  p.k_max = 1;
  p.dataset = Dataset::kPairFile;
  p.path = write_lines("odd.g6", {"Bw", "A_", "@"});
  EXPECT_THROW(cmd_table1(p), Error);
  p.path = write_lines("pairs.g6", {graph6::emit(catalog("prism")), graph6::emit(catalog("k33")),
                                    graph6::emit(catalog("cycle(6)")), graph6::emit(catalog("two_triangles"))});
  p.k_max = 2;
  const auto t = cmd_table1(p);
  EXPECT_EQ(t.find("distinguished", {{"kernel", "gd"}, {"K", "2"}, {"a", "0"}, {"b", "1"}}), 1.0);
  EXPECT_EQ(t.find("distinguished", {{"kernel", "spd"}, {"K", "2"}, {"a", "0"}, {"b", "1"}}), 0.0);
  EXPECT_EQ(t.find("distinguished", {{"kernel", "spd"}, {"K", "2"}, {"a", "2"}, {"b", "3"}}), 1.0);
  EXPECT_FALSE(t.find("distinguished", {{"a", "0"}, {"b", "2"}}).has_value());

  p.dataset = Dataset::kSrFile;
  p.path = write_lines("sr16.g6", {graph6::emit(catalog("shrikhande")), graph6::emit(catalog("rook4"))});
  const auto sr = cmd_table1(p);
  EXPECT_EQ(sr.metadata.count("warning"), 1u);
  EXPECT_EQ(sr.find("pairs_distinguished", {{"method", "khop"}, {"K", "2"}}), 0.0);
  p.path = write_lines("notsr.g6", {graph6::emit(catalog("prism"))});
  EXPECT_THROW(cmd_table1(p), Error);
}

TEST(Experiments, RegularSimIsReproducible) {
  RegularSimParams p;
  p.n_list = {12, 16};
  p.graphs_per_n = 6;
  p.k_max = 3;
  p.seed = 5;
  const auto a = cmd_regular_sim(p);
  const auto b = cmd_regular_sim(p);
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_EQ(a.rows.size(), 2u * 3u * 4u);
  // One hop on regular graphs sees only the degree.
  EXPECT_EQ(a.find("graph_pair_distinguished_fraction", {{"n", "12"}, {"K", "1"}}), 0.0);
  EXPECT_EQ(a.find("node_pair_indistinguishable_fraction", {{"n", "12"}, {"K", "1"}}), 1.0);
  for (const auto& row : a.rows) {
    ASSERT_GE(row.value, 0.0);
    if (row.metric != "distinct_fingerprints") {
      ASSERT_LE(row.value, 1.0);
    }
  }
  p.seed = 6;
  EXPECT_NE(to_csv(cmd_regular_sim(p)), to_csv(a));
  EXPECT_EQ(regular_sim_threshold(20), 3u);
}

TEST(Experiments, PairDiagnostics) {
  const auto kp = make_corpus_method("kp", Kernel::kSpd, 1, 1, 0, true, false);
  const auto r = cmd_pair(catalog("shrikhande"), catalog("rook4"), kp);
  EXPECT_EQ(r.verdict, Verdict::kDistinguished);
  EXPECT_EQ(r.diagnostics["verdict"], "DISTINGUISHED");
  const auto& hop1a = r.diagnostics["peripheral"]["a"][0]["encodings"];
  const auto& hop1b = r.diagnostics["peripheral"]["b"][0]["encodings"];
  ASSERT_EQ(hop1a.size(), 1u);
  ASSERT_EQ(hop1b.size(), 1u);
  EXPECT_EQ(hop1a[0]["components"], 1);
  EXPECT_EQ(hop1b[0]["components"], 2);
  EXPECT_EQ(hop1a[0]["nodes"], 16);

  const auto khop = make_corpus_method("khop", Kernel::kSpd, 2, 2, 0, true, false);
  const auto same = cmd_pair(catalog("prism"), catalog("prism"), khop);
  EXPECT_EQ(same.verdict, Verdict::kNotDistinguished);
  EXPECT_EQ(same.diagnostics["distinct_colors"].size(), 3u);
  EXPECT_EQ(cmd_pair(catalog("cycle(6)"), catalog("two_triangles"), make_corpus_method("fwl2", Kernel::kSpd, 1, 1, 0, true, false))
                .verdict,
            Verdict::kDistinguished);
  EXPECT_THROW(make_corpus_method("nope", Kernel::kSpd, 1, 1, 0, true, false), Error);
}

TEST(Experiments, MalformedGraphFile) {
  const auto path = write_lines("bad.g6", {"Bw", "B"});
  try {
    read_graph6_file(path);
    FAIL() << "accepted a malformed file";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedLine);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Experiments, PropertyCorpusLayout) {
  PropertySuiteParams p;
  const auto corpus = property_corpus(p);
  EXPECT_EQ(corpus.size(), 200u + 22u + 45u);
  EXPECT_EQ(corpus[1].a.node_count(), corpus[1].b.node_count());
  EXPECT_EQ(distinguish_3wl(corpus[1].a, corpus[1].b), Verdict::kNotDistinguished);
}

TEST(Experiments, SmallPropertySuitePasses) {
  PropertySuiteParams p;
  p.er_pairs = 20;
  p.witness_max_n = 5;
  p.bound_max_k = 2;
  p.bound_max_l = 2;
  const auto report = cmd_property_suite(p);
  EXPECT_EQ(report.violations, 0u) << report.report.dump();
  EXPECT_EQ(report.table.metadata.at("command"), "property-suite");
}
