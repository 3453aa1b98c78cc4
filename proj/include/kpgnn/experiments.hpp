#ifndef KPGNN_EXPERIMENTS_HPP
#define KPGNN_EXPERIMENTS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kpgnn/error.hpp"
#include "kpgnn/generators.hpp"
#include "kpgnn/graph.hpp"
#include "kpgnn/graph6.hpp"
#include "kpgnn/khop.hpp"
#include "kpgnn/peripheral.hpp"
#include "kpgnn/refine.hpp"
#include "kpgnn/results.hpp"
#include "kpgnn/wl3.hpp"

namespace kpgnn {

NLOHMANN_JSON_SERIALIZE_ENUM(Kernel, {{Kernel::kSpd, "spd"}, {Kernel::kGd, "gd"}})

enum class Dataset { kCsl, kSrFile, kPairFile };

NLOHMANN_JSON_SERIALIZE_ENUM(Dataset, {{Dataset::kCsl, "csl"}, {Dataset::kSrFile, "sr"}, {Dataset::kPairFile, "pairs"}})

struct RegularSimParams {
  std::vector<std::size_t> n_list{20, 40, 80, 160, 320};
  std::size_t r = 3;
  std::size_t graphs_per_n = 100;
  std::size_t k_max = 6;
  std::uint64_t seed = 1;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RegularSimParams, n_list, r, graphs_per_n, k_max, seed)

struct Table1Params {
  Dataset dataset = Dataset::kCsl;
  std::string path;
  std::vector<std::string> methods{"khop", "kp"};
  std::vector<Kernel> kernels{Kernel::kSpd, Kernel::kGd};
  std::size_t k_min = 1;
  std::size_t k_max = 4;
  std::size_t L = 0;  // 0: L = K
  std::size_t k_prime = 1;
  bool uncapped = true;
  bool walk_counts = false;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(Table1Params, dataset, path, methods, kernels, k_min, k_max, L,
                                                k_prime, uncapped, walk_counts)

struct PropertySuiteParams {
  std::size_t er_pairs = 200;
  std::size_t er_min_n = 4;
  std::size_t er_max_n = 12;
  std::vector<double> p_list{0.2, 0.5};
  std::size_t bound_max_k = 4;
  std::size_t bound_max_l = 4;
  std::size_t hierarchy_k = 3;
  std::size_t hierarchy_l = 3;
  std::size_t witness_max_n = 7;
  std::uint64_t seed = 1;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PropertySuiteParams, er_pairs, er_min_n, er_max_n, p_list,
                                                bound_max_k, bound_max_l, hierarchy_k, hierarchy_l,
                                                witness_max_n, seed)

struct PairParams {
  std::string a;
  std::string b;
  std::string method = "khop";
  Kernel kernel = Kernel::kSpd;
  std::size_t K = 1;
  std::size_t L = 1;
  std::size_t k_prime = 0;
  bool uncapped = true;
  bool walk_counts = false;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PairParams, a, b, method, kernel, K, L, k_prime, uncapped,
                                                walk_counts)

/// Everything needed to re-run one command; stored next to its outputs.
struct ExperimentConfig {
  std::string command;
  RegularSimParams regular_sim;
  Table1Params table1;
  PropertySuiteParams property_suite;
  PairParams pair;
  std::string out;
  std::vector<std::string> formats{"csv"};
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ExperimentConfig, command, regular_sim, table1, property_suite,
                                                pair, out, formats)

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config '" + path + "'");
  try {
    return nlohmann::json::parse(in).get<ExperimentConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, "config '" + path + "': " + e.what());
  }
}

inline void save_config(const ExperimentConfig& cfg, const std::string& path) {
  write_file(path, nlohmann::json(cfg).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Shared helpers

/// Strongly regular parameters (n, k, lambda, mu) or nothing.
inline std::optional<std::array<std::size_t, 4>> strongly_regular_parameters(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) return std::nullopt;
  const std::size_t k = g.degree(0);
  for (std::size_t v = 1; v < n; ++v)
    if (g.degree(static_cast<Node>(v)) != k) return std::nullopt;
  std::optional<std::size_t> lambda, mu;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      std::size_t common = 0;
      const auto a = g.neighbors(static_cast<Node>(u));
      const auto b = g.neighbors(static_cast<Node>(v));
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
          ++i;
        } else if (b[j] < a[i]) {
          ++j;
        } else {
          ++common;
          ++i;
          ++j;
        }
      }
      auto& slot = g.has_edge(static_cast<Node>(u), static_cast<Node>(v)) ? lambda : mu;
      if (slot && *slot != common) return std::nullopt;
      slot = common;
    }
  }
  return std::array<std::size_t, 4>{n, k, lambda.value_or(0), mu.value_or(0)};
}

/// Graph argument: an existing graph6 file (first graph), a catalog name, or
/// a literal graph6 string, tried in that order.
inline Graph resolve_graph(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::kIo, "cannot open '" + arg + "'");
    auto graphs = graph6::parse(in);
    if (graphs.empty()) throw Error(ErrorCode::kMalformedLine, "'" + arg + "' contains no graph");
    return std::move(graphs.front());
  }
  try {
    return catalog(arg);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnknownName) throw;
  }
  return graph6::parse_line(arg);
}

inline std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return graph6::parse(in);
}

inline std::size_t pairs_of(std::size_t count) { return count < 2 ? 0 : count * (count - 1) / 2; }

/// Method names accepted by the corpus commands: the refinement methods plus
/// "fwl2" (pair refinement, 3-WL equivalent).
struct CorpusMethod {
  std::string name;
  MethodSpec spec;
};

inline CorpusMethod make_corpus_method(const std::string& name, Kernel kernel, std::size_t K, std::size_t L,
                                       std::size_t k_prime, bool uncapped, bool walk_counts) {
  CorpusMethod m{name, {}};
  if (name == "fwl2") return m;
  m.spec.method = parse_method(name);
  m.spec.kernel = kernel;
  m.spec.K = K;
  m.spec.L = L;
  m.spec.use_walk_counts = walk_counts;
  m.spec.peripheral = uncapped ? PeripheralOptions::uncapped(k_prime) : PeripheralOptions{k_prime};
  return m;
}

/// One comparable key per graph; equal keys mean the method does not
/// distinguish the two graphs.
inline std::vector<std::vector<std::uint64_t>> corpus_keys(std::span<const Graph> graphs, const CorpusMethod& m) {
  std::vector<std::vector<std::uint64_t>> keys;
  auto flat = [](const Fingerprint& fp, std::vector<std::uint64_t>& out) {
    out.push_back(fp.node_count);
    out.insert(out.end(), fp.colors.begin(), fp.colors.end());
  };
  if (m.name == "fwl2") {
    for (auto& sig : fwl2_corpus_signatures(graphs)) keys.emplace_back(sig.begin(), sig.end());
    for (std::size_t i = 0; i < graphs.size(); ++i) keys[i].insert(keys[i].begin(), graphs[i].node_count());
    return keys;
  }
  if (m.spec.method == Method::kDe1) {
    ColorInterner interner;
    for (const auto& g : graphs) {
      std::vector<std::uint64_t> key{g.node_count()};
      for (const auto& fp : de1_graph_signature(g, m.spec.L, interner)) flat(fp, key);
      keys.push_back(std::move(key));
    }
    return keys;
  }
  for (const auto& fp : corpus_fingerprints(graphs, m.spec)) {
    std::vector<std::uint64_t> key;
    flat(fp, key);
    keys.push_back(std::move(key));
  }
  return keys;
}

template <typename T>
std::size_t distinct_count(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return static_cast<std::size_t>(std::unique(values.begin(), values.end()) - values.begin());
}

inline ResultTable make_table(std::vector<std::string> param_names, std::string command, std::uint64_t seed) {
  ResultTable t;
  t.param_names = std::move(param_names);
  t.metadata["command"] = std::move(command);
  t.metadata["seed"] = std::to_string(seed);
  t.metadata["prng"] = std::string(kPrngId);
  t.metadata["version"] = std::string(kVersion);
  return t;
}

// ---------------------------------------------------------------------------
// regular-sim

inline std::size_t regular_sim_threshold(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(0.55 * std::log2(2.0 * static_cast<double>(n))));
}

/// Random r-regular corpora and 1-layer SPD K-hop refinement. Per (n, K):
///   node_pair_indistinguishable_fraction: unordered node pairs of the whole
///     corpus (pooled over all graphs) with equal color;
///   node_pair_indistinguishable_fraction_within: the same over pairs inside
///     one graph only;
///   graph_pair_distinguished_fraction: graph pairs with different
///     fingerprints.
inline ResultTable cmd_regular_sim(const RegularSimParams& p) {
  auto table = make_table({"n", "r", "K", "L", "graphs"}, "regular-sim", p.seed);
  for (std::size_t n : p.n_list) {
    std::vector<Graph> graphs;
    graphs.reserve(p.graphs_per_n);
    for (std::size_t i = 0; i < p.graphs_per_n; ++i)
      graphs.push_back(random_regular(n, p.r, derive_seed(p.seed, n, i)));
    const auto joint = disjoint_union_all(graphs);
    const double total_nodes = static_cast<double>(joint.graph.node_count());
    for (std::size_t K = 1; K <= p.k_max; ++K) {
      RefineOptions options;
      options.stop_when_stable = false;
      const auto coloring = run_khop(joint.graph, K, 1, Kernel::kSpd, false, options);
      const auto& colors = coloring.final_colors();

      std::map<ColorId, std::size_t> pooled;
      for (ColorId c : colors) ++pooled[c];
      double equal_pooled = 0;
      for (const auto& [c, s] : pooled) equal_pooled += static_cast<double>(pairs_of(s));

      double equal_within = 0;
      double within_total = 0;
      std::vector<Fingerprint> fps;
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto begin = static_cast<std::size_t>(joint.offsets[i]);
        const auto end = static_cast<std::size_t>(joint.offsets[i + 1]);
        fps.push_back(fingerprint(coloring, {}, begin, end));
        std::map<ColorId, std::size_t> local;
        for (std::size_t v = begin; v < end; ++v) ++local[colors[v]];
        for (const auto& [c, s] : local) equal_within += static_cast<double>(pairs_of(s));
        within_total += static_cast<double>(pairs_of(end - begin));
      }
      std::map<Fingerprint, std::size_t> classes;
      for (const auto& fp : fps) ++classes[fp];
      double equal_graph_pairs = 0;
      for (const auto& [fp, s] : classes) equal_graph_pairs += static_cast<double>(pairs_of(s));
      const double graph_pairs = static_cast<double>(pairs_of(graphs.size()));

      const std::vector<std::string> params{std::to_string(n), std::to_string(p.r), std::to_string(K), "1",
                                            std::to_string(graphs.size())};
      const double node_pairs = total_nodes * (total_nodes - 1) / 2;
      table.add(params, "node_pair_indistinguishable_fraction", node_pairs > 0 ? equal_pooled / node_pairs : 0.0);
      table.add(params, "node_pair_indistinguishable_fraction_within",
                within_total > 0 ? equal_within / within_total : 0.0);
      table.add(params, "graph_pair_distinguished_fraction",
                graph_pairs > 0 ? 1.0 - equal_graph_pairs / graph_pairs : 0.0);
      table.add(params, "distinct_fingerprints", static_cast<double>(classes.size()));
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// table1

struct NamedCorpus {
  std::vector<Graph> graphs;
  std::vector<std::string> names;
  std::vector<std::string> warnings;
};

inline NamedCorpus load_dataset(const Table1Params& p) {
  NamedCorpus c;
  if (p.dataset == Dataset::kCsl) {
    for (std::size_t s : csl_benchmark_skips()) {
      c.graphs.push_back(csl(41, s));
      c.names.push_back("csl41_" + std::to_string(s));
    }
    return c;
  }
  c.graphs = read_graph6_file(p.path);
  for (std::size_t i = 0; i < c.graphs.size(); ++i) c.names.push_back(std::to_string(i));
  if (p.dataset == Dataset::kSrFile) {
    std::optional<std::array<std::size_t, 4>> first;
    bool same = true;
    for (const auto& g : c.graphs) {
      const auto params = strongly_regular_parameters(g);
      if (!params) {
        throw Error(ErrorCode::kInvalidArgument, "'" + p.path + "' contains a graph that is not strongly regular");
      }
      if (first && *first != *params) same = false;
      if (!first) first = params;
    }
    if (!same) throw Error(ErrorCode::kInvalidArgument, "'" + p.path + "' mixes strongly regular parameters");
    const std::array<std::size_t, 4> expected{25, 12, 5, 6};
    if (c.graphs.size() != 15 || !first || *first != expected) {
      c.warnings.push_back("expected 15 graphs with parameters (25,12,5,6)");
    }
  } else if (c.graphs.size() % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "'" + p.path + "' must hold an even number of graphs (pairs)");
  }
  return c;
}

/// Distinct fingerprint counts per (method, kernel, K) and the pairwise
/// verdicts (all pairs for csl/sr, consecutive pairs for pair files).
inline ResultTable cmd_table1(const Table1Params& p) {
  const auto corpus = load_dataset(p);
  auto table = make_table({"dataset", "method", "kernel", "K", "L", "kprime", "a", "b"}, "table1", 0);
  table.metadata["dataset"] = nlohmann::json(p.dataset).get<std::string>();
  if (!p.path.empty()) table.metadata["path"] = p.path;
  table.metadata["L_rule"] = p.L == 0 ? "L=K" : "fixed";
  for (const auto& w : corpus.warnings) table.metadata["warning"] = w;
  const std::string dataset = table.metadata["dataset"];
  const bool all_pairs = p.dataset != Dataset::kPairFile;

  for (const auto& name : p.methods) {
    const bool has_kernel = name == "khop" || name == "kp";
    const bool has_hops = name != "fwl2" && name != "wl1" && name != "de1";
    const bool has_layers = name != "fwl2";
    const auto kernels = has_kernel ? p.kernels : std::vector<Kernel>{Kernel::kSpd};
    for (Kernel kernel : kernels) {
      for (std::size_t K = p.k_min; K <= p.k_max; ++K) {
        const std::size_t L = p.L == 0 ? K : p.L;
        const auto method = make_corpus_method(name, kernel, K, L, p.k_prime, p.uncapped, p.walk_counts);
        const auto keys = corpus_keys(corpus.graphs, method);
        const std::string kp = name == "kp" ? std::to_string(p.k_prime) : "-";
        const std::string ks = has_hops ? std::to_string(K) : "-";
        const std::string ls = has_layers ? std::to_string(L) : "-";
        const std::string kn = has_kernel ? std::string(to_string(kernel)) : "-";
        table.add({dataset, name, kn, ks, ls, kp, "", ""}, "distinct_fingerprints",
                  static_cast<double>(distinct_count(keys)));
        std::size_t distinguished = 0;
        for (std::size_t i = 0; i < keys.size(); ++i) {
          for (std::size_t j = i + 1; j < keys.size(); ++j) {
            if (!all_pairs && (i % 2 != 0 || j != i + 1)) continue;
            const bool differ = keys[i] != keys[j];
            distinguished += differ ? 1 : 0;
            table.add({dataset, name, kn, ks, ls, kp, corpus.names[i], corpus.names[j]}, "distinguished",
                      differ ? 1.0 : 0.0);
          }
        }
        table.add({dataset, name, kn, ks, ls, kp, "", ""}, "pairs_distinguished", static_cast<double>(distinguished));
        // Methods without hops or layers give one row set only.
        if (!has_hops && !has_layers) break;
        if (!has_hops && p.L != 0) break;
      }
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// property-suite

struct LabeledPair {
  std::string name;
  Graph a;
  Graph b;
};

/// Seeded ER pairs (alternately independent draws and a draw against a
/// random relabeling of itself) plus every same-size pair of named graphs.
inline std::vector<LabeledPair> property_corpus(const PropertySuiteParams& p) {
  std::vector<LabeledPair> out;
  const std::size_t span = p.er_max_n - p.er_min_n + 1;
  for (std::size_t i = 0; i < p.er_pairs; ++i) {
    const std::size_t n = p.er_min_n + i % span;
    const double prob = p.p_list[(i / span) % p.p_list.size()];
    Graph a = random_er(n, prob, derive_seed(p.seed, i, 0));
    Graph b;
    if (i % 2 == 0) {
      b = random_er(n, prob, derive_seed(p.seed, i, 1));
    } else {
      Rng rng(derive_seed(p.seed, i, 2));
      std::vector<Node> perm(n);
      std::iota(perm.begin(), perm.end(), Node{0});
      for (std::size_t k = n - 1; k > 0; --k) std::swap(perm[k], perm[uniform_below(rng, k + 1)]);
      b = a.relabeled(perm);
    }
    out.push_back({"er" + std::to_string(i) + "_n" + std::to_string(n) + "_p" + format_number(prob), a, b});
  }
  const std::vector<std::string> names{"prism", "k33", "two_triangles", "cycle6", "path6", "star5",
                                       "complete6", "shrikhande", "rook4"};
  std::vector<Graph> named;
  for (const auto& nm : names) named.push_back(catalog(nm));
  for (std::size_t i = 0; i < named.size(); ++i)
    for (std::size_t j = i + 1; j < named.size(); ++j)
      if (named[i].node_count() == named[j].node_count())
        out.push_back({names[i] + "/" + names[j], named[i], named[j]});
  const auto& skips = csl_benchmark_skips();
  for (std::size_t i = 0; i < skips.size(); ++i)
    for (std::size_t j = i + 1; j < skips.size(); ++j)
      out.push_back({"csl" + std::to_string(skips[i]) + "/csl" + std::to_string(skips[j]), csl(41, skips[i]),
                     csl(41, skips[j])});
  return out;
}

struct SuiteReport {
  ResultTable table;
  nlohmann::json report;
  std::size_t violations = 0;
  std::size_t missing_witnesses = 0;

  bool ok() const { return violations == 0 && missing_witnesses == 0; }
};

struct WitnessCounts {
  std::size_t count = 0;
  nlohmann::json first;
};

/// Graph-level witnesses among connected graphs of each size: pairs split by
/// `a` but not by `b`, for both orders.
inline std::pair<WitnessCounts, WitnessCounts> graph_witnesses(const std::vector<Graph>& graphs,
                                                               const MethodSpec& a, const MethodSpec& b) {
  std::pair<WitnessCounts, WitnessCounts> out;
  if (graphs.size() < 2) return out;
  const auto fa = corpus_fingerprints(graphs, a);
  const auto fb = corpus_fingerprints(graphs, b);
  auto scan = [&](const std::vector<Fingerprint>& split, const std::vector<Fingerprint>& same, WitnessCounts& w) {
    std::map<Fingerprint, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < graphs.size(); ++i) buckets[same[i]].push_back(i);
    for (const auto& [fp, members] : buckets) {
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          if (split[members[x]] == split[members[y]]) continue;
          if (w.count++ == 0)
            w.first = {graph6::emit(graphs[members[x]]), graph6::emit(graphs[members[y]])};
        }
      }
    }
  };
  scan(fa, fb, out.first);
  scan(fb, fa, out.second);
  return out;
}

/// Node-level witnesses between different graphs of one size: node pairs
/// split by DE-1 after 2 iterations but equal under stable SPD 2-hop
/// refinement (first), and split by SPD 2-hop after 2 iterations but equal
/// under stable DE-1 (second).
inline std::pair<WitnessCounts, WitnessCounts> node_witnesses(const std::vector<Graph>& graphs,
                                                              std::size_t layers) {
  std::pair<WitnessCounts, WitnessCounts> out;
  if (graphs.size() < 2) return out;
  const std::size_t n = graphs.front().node_count();
  const std::size_t stable = std::max<std::size_t>(n, layers);

  const auto joint = disjoint_union_all(graphs);
  RefineOptions opts;
  const auto khop = run_khop(joint.graph, 2, stable, Kernel::kSpd, false, opts);
  const auto& khop_short = khop.at(layers);
  const auto& khop_stable = khop.at(stable);

  ColorInterner interner;
  RefineOptions de_opts;
  de_opts.interner = &interner;
  de_opts.stop_when_stable = false;
  std::vector<ColorId> de_short(joint.graph.node_count());
  std::vector<ColorId> de_stable(joint.graph.node_count());
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto c = run_de1(graphs[gi], static_cast<Node>(v), stable, de_opts);
      de_short[joint.offsets[gi] + v] = c.at(layers)[v];
      de_stable[joint.offsets[gi] + v] = c.at(stable)[v];
    }
  }
  auto scan = [&](const std::vector<ColorId>& split, const std::vector<ColorId>& same, WitnessCounts& w) {
    std::map<ColorId, std::vector<std::size_t>> buckets;
    for (std::size_t x = 0; x < same.size(); ++x) buckets[same[x]].push_back(x);
    for (const auto& [c, members] : buckets) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          const std::size_t x = members[i];
          const std::size_t y = members[j];
          const std::size_t gx = x / n;
          const std::size_t gy = y / n;
          if (gx == gy || split[x] == split[y]) continue;
          if (w.count++ == 0) {
            w.first = {{"a", graph6::emit(graphs[gx])}, {"node_a", x % n},
                       {"b", graph6::emit(graphs[gy])}, {"node_b", y % n}};
          }
        }
      }
    }
  };
  scan(de_short, khop_stable, out.first);
  scan(khop_short, de_stable, out.second);
  return out;
}

inline SuiteReport empty_suite_report(std::uint64_t seed) {
  SuiteReport out;
  out.table = make_table({"suite", "check"}, "property-suite", seed);
  out.report = {{"violations", nlohmann::json::array()}, {"witnesses", nlohmann::json::object()}};
  return out;
}

/// K-hop (both kernels, K and L up to the bounds) never separates a pair
/// that pair refinement cannot.
inline void bound_suite(const std::vector<LabeledPair>& corpus, const PropertySuiteParams& p, SuiteReport& out) {
  auto& violations = out.report["violations"];
  std::size_t bound_checked = 0;
  std::size_t fwl_equal = 0;
  std::size_t bound_violations = 0;
  for (const auto& pair : corpus) {
    if (distinguish_3wl(pair.a, pair.b) == Verdict::kDistinguished) continue;
    ++fwl_equal;
    for (Kernel kernel : {Kernel::kSpd, Kernel::kGd}) {
      for (std::size_t K = 1; K <= p.bound_max_k; ++K) {
        for (std::size_t L = 1; L <= p.bound_max_l; ++L) {
          MethodSpec spec{Method::kKhop, kernel, K, L};
          ++bound_checked;
          if (distinguish(pair.a, pair.b, spec) == Verdict::kDistinguished) {
            ++bound_violations;
            violations.push_back({{"suite", "bound"}, {"pair", pair.name}, {"kernel", to_string(kernel)},
                                  {"K", K}, {"L", L}, {"a", graph6::emit(pair.a)}, {"b", graph6::emit(pair.b)}});
          }
        }
      }
    }
  }
  out.table.add({"bound", "pairs"}, "count", static_cast<double>(corpus.size()));
  out.table.add({"bound", "fwl2_equal_pairs"}, "count", static_cast<double>(fwl_equal));
  out.table.add({"bound", "khop_runs_checked"}, "count", static_cast<double>(bound_checked));
  out.table.add({"bound", "violations"}, "count", static_cast<double>(bound_violations));
  out.violations += bound_violations;
}

/// At matched (L, K): distinguished(1-WL) within distinguished(GINE+) within
/// distinguished(K-hop) within distinguished(KP).
inline void hierarchy_suite(const std::vector<LabeledPair>& corpus, const PropertySuiteParams& p,
                            SuiteReport& out) {
  auto& violations = out.report["violations"];
  const MethodSpec wl1{Method::kWl1, Kernel::kSpd, 1, p.hierarchy_l};
  const MethodSpec gine{Method::kGinePlus, Kernel::kSpd, p.hierarchy_k, p.hierarchy_l};
  const MethodSpec khop{Method::kKhop, Kernel::kSpd, p.hierarchy_k, p.hierarchy_l};
  MethodSpec kp{Method::kKp, Kernel::kSpd, p.hierarchy_k, p.hierarchy_l};
  kp.peripheral = PeripheralOptions::uncapped(1);
  std::array<std::size_t, 3> hierarchy_violations{};
  std::array<std::size_t, 4> split_counts{};
  const std::array<const char*, 3> steps{"wl1_in_gineplus", "gineplus_in_khop", "khop_in_kp"};
  for (const auto& pair : corpus) {
    const std::array<bool, 4> d{distinguish(pair.a, pair.b, wl1) == Verdict::kDistinguished,
                                distinguish(pair.a, pair.b, gine) == Verdict::kDistinguished,
                                distinguish(pair.a, pair.b, khop) == Verdict::kDistinguished,
                                distinguish(pair.a, pair.b, kp) == Verdict::kDistinguished};
    for (std::size_t i = 0; i < 4; ++i) split_counts[i] += d[i] ? 1 : 0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (d[i] && !d[i + 1]) {
        ++hierarchy_violations[i];
        violations.push_back({{"suite", "hierarchy"}, {"step", steps[i]}, {"pair", pair.name},
                              {"a", graph6::emit(pair.a)}, {"b", graph6::emit(pair.b)}});
      }
    }
  }
  const std::array<const char*, 4> names{"wl1", "gineplus", "khop", "kp"};
  for (std::size_t i = 0; i < 4; ++i)
    out.table.add({"hierarchy", std::string(names[i]) + "_distinguished"}, "count",
                  static_cast<double>(split_counts[i]));
  for (std::size_t i = 0; i < 3; ++i) {
    out.table.add({"hierarchy", std::string(steps[i]) + "_violations"}, "count",
                  static_cast<double>(hierarchy_violations[i]));
    out.violations += hierarchy_violations[i];
  }
}

/// Witness searches over all connected graphs up to witness_max_n nodes, in
/// the four incomparability directions.
inline void witness_suite(const PropertySuiteParams& p, SuiteReport& out) {
  const MethodSpec one_layer_two_hop{Method::kKhop, Kernel::kSpd, 2, 1};
  const MethodSpec two_layer_wl{Method::kWl1, Kernel::kSpd, 1, 2};
  WitnessCounts w_khop, w_wl, w_de, w_spd;
  for (std::size_t n = 1; n <= p.witness_max_n; ++n) {
    const auto graphs = enumerate_connected(n);
    auto [a, b] = graph_witnesses(graphs, one_layer_two_hop, two_layer_wl);
    auto [c, d] = node_witnesses(graphs, 2);
    auto merge = [](WitnessCounts& into, WitnessCounts& from) {
      if (into.count == 0 && from.count > 0) into.first = from.first;
      into.count += from.count;
    };
    merge(w_khop, a);
    merge(w_wl, b);
    merge(w_de, c);
    merge(w_spd, d);
  }
  const std::array<std::pair<const char*, WitnessCounts*>, 4> directions{{
      {"khop2_1layer_not_wl1_2layer", &w_khop},
      {"wl1_2layer_not_khop2_1layer", &w_wl},
      {"de1_not_spd2_node", &w_de},
      {"spd2_not_de1_node", &w_spd},
  }};
  for (const auto& [name, w] : directions) {
    out.table.add({"witness", name}, "count", static_cast<double>(w->count));
    out.report["witnesses"][name] = {{"count", w->count}, {"example", w->first}};
    if (w->count == 0) ++out.missing_witnesses;
  }

  // The named kernel-sensitivity example: prism vs K3,3 at node 0.
  const Graph prism = catalog("prism");
  const Graph k33 = catalog("k33");
  const bool de_splits =
      node_distinguish(prism, 0, k33, 0, {Method::kDe1, Kernel::kSpd, 1, 2}) == Verdict::kDistinguished;
  const bool spd_splits =
      node_distinguish(prism, 0, k33, 0, {Method::kKhop, Kernel::kSpd, 2, 6}) == Verdict::kDistinguished;
  out.table.add({"witness", "prism_k33_de1_distinguished"}, "count", de_splits ? 1.0 : 0.0);
  out.table.add({"witness", "prism_k33_spd2_distinguished"}, "count", spd_splits ? 1.0 : 0.0);
}

/// Bound, hierarchy and witness suites. `report` lists every violation; the
/// suite passes when there are none and every witness search found one.
inline SuiteReport cmd_property_suite(const PropertySuiteParams& p) {
  auto out = empty_suite_report(p.seed);
  const auto corpus = property_corpus(p);
  bound_suite(corpus, p, out);
  hierarchy_suite(corpus, p, out);
  witness_suite(p, out);
  out.table.add({"summary", "violations"}, "count", static_cast<double>(out.violations));
  out.table.add({"summary", "missing_witnesses"}, "count", static_cast<double>(out.missing_witnesses));
  out.report["ok"] = out.ok();
  return out;
}

// ---------------------------------------------------------------------------
// pair

struct PairReport {
  Verdict verdict = Verdict::kNotDistinguished;
  nlohmann::json diagnostics;
};

inline nlohmann::json encoding_json(const PeripheralEncoding& e) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [type, c] : e.edge_count_by_type) edges.push_back({{"type", type}, {"count", c}});
  nlohmann::json j{{"edges", edges}, {"components", e.component_count}};
  if (!e.kprime_configuration.empty()) {
    j["kprime_configuration"] = e.kprime_configuration;
    j["kprime_edge_totals"] = e.kprime_edge_totals;
  }
  if (!e.kprime_multiset.empty()) j["kprime_multiset"] = e.kprime_multiset;
  return j;
}

/// Per hop: the distinct peripheral encodings of one graph and how many
/// nodes have each.
inline nlohmann::json peripheral_summary(const Graph& g, const MethodSpec& spec) {
  const auto table = compute_peripheral_table(g, spec.K, spec.kernel, spec.peripheral);
  nlohmann::json hops = nlohmann::json::array();
  for (std::size_t k = 1; k <= spec.K; ++k) {
    std::map<std::vector<std::uint64_t>, std::pair<std::size_t, const PeripheralEncoding*>> seen;
    for (const auto& per_node : table) {
      auto& slot = seen[per_node[k - 1].key()];
      ++slot.first;
      slot.second = &per_node[k - 1];
    }
    nlohmann::json items = nlohmann::json::array();
    for (const auto& [key, entry] : seen) {
      auto item = encoding_json(*entry.second);
      item["nodes"] = entry.first;
      items.push_back(item);
    }
    hops.push_back({{"hop", k}, {"encodings", items}});
  }
  return hops;
}

inline PairReport cmd_pair(const Graph& a, const Graph& b, const CorpusMethod& method) {
  PairReport out;
  nlohmann::json& d = out.diagnostics;
  d["method"] = method.name;
  d["nodes"] = {a.node_count(), b.node_count()};
  d["edges"] = {a.edge_count(), b.edge_count()};
  if (method.name == "fwl2") {
    out.verdict = distinguish_3wl(a, b);
  } else {
    const auto& spec = method.spec;
    d["kernel"] = to_string(spec.kernel);
    d["K"] = spec.K;
    d["L"] = spec.L;
    out.verdict = distinguish(a, b, spec);
    if (spec.method != Method::kDe1) {
      const auto joint = disjoint_union(a, b);
      const auto coloring = run_method(joint.graph, spec);
      const auto split = static_cast<std::size_t>(joint.offset);
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t l = 0; l <= spec.L; ++l) {
        const auto& c = coloring.at(l);
        rows.push_back({{"iteration", l},
                        {"joint", coloring.distinct(l)},
                        {"a", distinct_count(std::vector<ColorId>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(split)))},
                        {"b", distinct_count(std::vector<ColorId>(c.begin() + static_cast<std::ptrdiff_t>(split), c.end()))}});
      }
      d["distinct_colors"] = rows;
      if (spec.method == Method::kKp) {
        d["kprime"] = spec.peripheral.k_prime;
        d["peripheral"] = {{"a", peripheral_summary(a, spec)}, {"b", peripheral_summary(b, spec)}};
      }
    }
  }
  d["verdict"] = to_string(out.verdict);
  return out;
}

}  // namespace kpgnn

#endif  // KPGNN_EXPERIMENTS_HPP
