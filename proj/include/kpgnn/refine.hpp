#ifndef KPGNN_REFINE_HPP
#define KPGNN_REFINE_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpgnn/error.hpp"
#include "kpgnn/graph.hpp"
#include "kpgnn/intern.hpp"
#include "kpgnn/khop.hpp"
#include "kpgnn/peripheral.hpp"

namespace kpgnn {

/// Schedule for the general K-hop color refinement: for iteration l (which
/// produces colors l+1 from colors 0..l) and hop k in 0..K, the set of past
/// iterations whose colors the hop-k neighbors contribute. Hop 0 is the node
/// itself. A configuration with L iterations stores entries for l = 0..L-1.
class RefinementConfiguration {
 public:
  using Schedule = std::vector<std::vector<std::vector<std::size_t>>>;

  RefinementConfiguration(std::size_t iterations, std::size_t max_hop, Schedule schedule)
      : iterations_(iterations), max_hop_(max_hop), schedule_(std::move(schedule)) {
    if (schedule_.size() != iterations_) {
      throw Error(ErrorCode::kInvalidConfiguration,
                  "schedule has " + std::to_string(schedule_.size()) + " iterations, expected " +
                      std::to_string(iterations_));
    }
    for (std::size_t l = 0; l < schedule_.size(); ++l) {
      if (schedule_[l].size() != max_hop_ + 1) {
        throw Error(ErrorCode::kInvalidConfiguration,
                    "iteration " + std::to_string(l) + " must list hops 0.." + std::to_string(max_hop_));
      }
      for (auto& sources : schedule_[l]) {
        std::sort(sources.begin(), sources.end());
        sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
        if (!sources.empty() && sources.back() > l) {
          throw Error(ErrorCode::kInvalidConfiguration,
                      "iteration " + std::to_string(l) + " reads colors from the future");
        }
      }
    }
  }

  static RefinementConfiguration one_wl(std::size_t iterations, std::size_t max_hop = 1) {
    Schedule s(iterations, std::vector<std::vector<std::size_t>>(max_hop + 1));
    for (std::size_t l = 0; l < iterations; ++l) {
      s[l][0] = {l};
      if (max_hop >= 1) s[l][1] = {l};
    }
    return {iterations, max_hop, std::move(s)};
  }

  static RefinementConfiguration k_hop(std::size_t iterations, std::size_t max_hop) {
    Schedule s(iterations, std::vector<std::vector<std::size_t>>(max_hop + 1));
    for (std::size_t l = 0; l < iterations; ++l)
      for (std::size_t k = 0; k <= max_hop; ++k) s[l][k] = {l};
    return {iterations, max_hop, std::move(s)};
  }

  // Hop k at iteration l reads colors from iteration l-k+1, so the receptive
  // field after L iterations stays L.
  static RefinementConfiguration gine_plus(std::size_t iterations, std::size_t max_hop) {
    Schedule s(iterations, std::vector<std::vector<std::size_t>>(max_hop + 1));
    for (std::size_t l = 0; l < iterations; ++l) {
      s[l][0] = {l};
      for (std::size_t k = 1; k <= max_hop && k <= l + 1; ++k) s[l][k] = {l + 1 - k};
    }
    return {iterations, max_hop, std::move(s)};
  }

  std::size_t iterations() const noexcept { return iterations_; }
  std::size_t max_hop() const noexcept { return max_hop_; }
  const std::vector<std::size_t>& sources(std::size_t l, std::size_t k) const {
    return schedule_.at(l).at(k);
  }

  /// Largest hop that any iteration reads from.
  std::size_t deepest_hop() const {
    std::size_t deepest = 0;
    for (const auto& it : schedule_)
      for (std::size_t k = 0; k < it.size(); ++k)
        if (!it[k].empty()) deepest = std::max(deepest, k);
    return deepest;
  }

  /// True when every iteration reads only the current colors with the same
  /// hop pattern and includes the node's own color, so a partition that stops
  /// splitting is stable forever.
  bool stationary() const {
    if (schedule_.empty()) return true;
    for (std::size_t l = 0; l < schedule_.size(); ++l) {
      if (schedule_[l][0] != std::vector<std::size_t>{l}) return false;
      for (std::size_t k = 0; k <= max_hop_; ++k) {
        const bool used = !schedule_[l][k].empty();
        if (used != !schedule_[0][k].empty()) return false;
        if (used && schedule_[l][k] != std::vector<std::size_t>{l}) return false;
      }
    }
    return true;
  }

 private:
  std::size_t iterations_;
  std::size_t max_hop_;
  Schedule schedule_;
};

/// Per-iteration node colors. history[0] are the initial colors. When a run
/// stops early on a stable partition, colors at later iterations induce the
/// same partition and at() returns the last computed row.
struct Coloring {
  std::vector<std::vector<ColorId>> history;
  std::size_t requested_iterations = 0;

  std::size_t computed_iterations() const { return history.empty() ? 0 : history.size() - 1; }
  const std::vector<ColorId>& at(std::size_t l) const {
    return history.at(std::min(l, history.size() - 1));
  }
  const std::vector<ColorId>& final_colors() const { return history.back(); }
  std::size_t node_count() const { return history.empty() ? 0 : history.front().size(); }

  std::size_t distinct(std::size_t l) const {
    auto c = at(l);
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
  }
};

struct RefineOptions {
  /// Replaces the graph's node labels as initial colors.
  std::optional<std::vector<Token>> initial_labels;
  /// Pair each hop-k neighbor color with the number of length-k walks to it.
  bool use_walk_counts = false;
  /// Constant per-(node, hop) encodings appended to every hop's message.
  const PeripheralTable* peripheral = nullptr;
  bool stop_when_stable = true;
  /// Shared id space; when null the run uses a private interner.
  ColorInterner* interner = nullptr;
};

namespace detail {

/// Flat per-node hop lists (and walk counts) for hops 1..H.
struct HopTable {
  std::size_t hops = 0;
  std::vector<std::size_t> offsets;  // (node * hops + (k-1)) -> range start
  std::vector<Node> members;
  std::vector<std::uint64_t> walks;

  std::span<const Node> at(Node v, std::size_t k) const {
    const std::size_t i = static_cast<std::size_t>(v) * hops + (k - 1);
    return {members.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
  std::span<const std::uint64_t> walks_at(Node v, std::size_t k) const {
    const std::size_t i = static_cast<std::size_t>(v) * hops + (k - 1);
    return {walks.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
};

inline HopTable build_hop_table(const Graph& g, std::size_t hops, Kernel kernel, bool with_walks) {
  HopTable t;
  t.hops = hops;
  if (hops == 0) return t;
  t.offsets.reserve(g.node_count() * hops + 1);
  t.offsets.push_back(0);
  HopExtractor extractor(g);
  HopSets hs;
  std::vector<std::vector<std::uint64_t>> counts;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    extractor.extract(static_cast<Node>(v), hops, kernel, hs, with_walks ? &counts : nullptr);
    for (std::size_t k = 0; k < hops; ++k) {
      t.members.insert(t.members.end(), hs.sets[k].begin(), hs.sets[k].end());
      if (with_walks) t.walks.insert(t.walks.end(), counts[k].begin(), counts[k].end());
      t.offsets.push_back(t.members.size());
    }
  }
  return t;
}

}  // namespace detail

/// General color refinement driven by a RefinementConfiguration.
inline Coloring run_general_cr(const Graph& g, const RefinementConfiguration& config, Kernel kernel,
                               const RefineOptions& options = {}) {
  const std::size_t n = g.node_count();
  if (options.initial_labels && options.initial_labels->size() != n) {
    throw Error(ErrorCode::kInvalidConfiguration, "initial label count does not match node count");
  }
  if (options.peripheral != nullptr && options.peripheral->size() != n) {
    throw Error(ErrorCode::kInvalidConfiguration, "peripheral table does not match node count");
  }
  ColorInterner local;
  ColorInterner& interner = options.interner != nullptr ? *options.interner : local;

  Coloring out;
  out.requested_iterations = config.iterations();
  std::vector<std::uint64_t> key;
  std::vector<ColorId> row(n);
  for (std::size_t v = 0; v < n; ++v) {
    const Token label = options.initial_labels ? (*options.initial_labels)[v] : g.label(static_cast<Node>(v));
    key.assign({tag::kInitial, static_cast<std::uint64_t>(label)});
    row[v] = interner.intern(key);
  }
  out.history.push_back(row);
  if (config.iterations() == 0) return out;

  std::size_t hops = config.deepest_hop();
  if (options.peripheral != nullptr) hops = std::max(hops, config.max_hop());
  if (options.peripheral != nullptr) {
    for (const auto& per_node : *options.peripheral) {
      if (per_node.size() < config.max_hop()) {
        throw Error(ErrorCode::kInvalidConfiguration, "peripheral table has too few hops");
      }
    }
  }
  const auto table = detail::build_hop_table(g, hops, kernel, options.use_walk_counts);

  // Peripheral encodings are constant across iterations: intern them once.
  std::vector<ColorId> peripheral_ids;
  if (options.peripheral != nullptr) {
    peripheral_ids.reserve(n * config.max_hop());
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t k = 1; k <= config.max_hop(); ++k) {
        key.assign({tag::kPeripheral});
        const auto enc = (*options.peripheral)[v][k - 1].key();
        key.insert(key.end(), enc.begin(), enc.end());
        peripheral_ids.push_back(interner.intern(key));
      }
    }
  }

  const bool stationary = config.stationary();
  std::size_t previous_distinct = out.distinct(0);
  std::vector<std::uint64_t> items;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::size_t l = 0; l < config.iterations(); ++l) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto node = static_cast<Node>(v);
      key.assign({tag::kRefine, l});
      for (std::size_t k = 0; k <= config.max_hop(); ++k) {
        const auto& sources = config.sources(l, k);
        key.push_back(sources.size());
        for (std::size_t s : sources) {
          const auto& colors = out.history[s];
          key.push_back(s);
          if (k == 0) {
            key.push_back(1);
            key.push_back(colors[v]);
            continue;
          }
          const auto members = table.at(node, k);
          key.push_back(members.size());
          if (options.use_walk_counts) {
            const auto walks = table.walks_at(node, k);
            pairs.clear();
            for (std::size_t i = 0; i < members.size(); ++i) pairs.emplace_back(colors[members[i]], walks[i]);
            std::sort(pairs.begin(), pairs.end());
            for (const auto& [c, w] : pairs) {
              key.push_back(c);
              key.push_back(w);
            }
          } else {
            items.clear();
            for (Node u : members) items.push_back(colors[u]);
            std::sort(items.begin(), items.end());
            key.insert(key.end(), items.begin(), items.end());
          }
        }
        if (k >= 1 && options.peripheral != nullptr) {
          key.push_back(peripheral_ids[v * config.max_hop() + (k - 1)]);
        }
      }
      row[v] = interner.intern(key);
    }
    out.history.push_back(row);
    const std::size_t distinct = out.distinct(l + 1);
    if (options.stop_when_stable && stationary && distinct == previous_distinct) break;
    previous_distinct = distinct;
  }
  return out;
}

inline Coloring run_one_wl(const Graph& g, std::size_t iterations, RefineOptions options = {}) {
  return run_general_cr(g, RefinementConfiguration::one_wl(iterations), Kernel::kSpd, options);
}

inline Coloring run_khop(const Graph& g, std::size_t K, std::size_t L, Kernel kernel,
                         bool use_walk_counts = false, RefineOptions options = {}) {
  if (K < 1) throw Error(ErrorCode::kInvalidConfiguration, "K must be at least 1");
  options.use_walk_counts = use_walk_counts;
  return run_general_cr(g, RefinementConfiguration::k_hop(L, K), kernel, options);
}

inline Coloring run_gine_plus(const Graph& g, std::size_t K, std::size_t L,
                              RefineOptions options = {}) {
  if (K < 1) throw Error(ErrorCode::kInvalidConfiguration, "K must be at least 1");
  return run_general_cr(g, RefinementConfiguration::gine_plus(L, K), Kernel::kSpd, options);
}

/// K-hop refinement whose hop-k message also carries the encoding of the
/// hop-k peripheral subgraph.
inline Coloring run_kp(const Graph& g, std::size_t K, std::size_t L, Kernel kernel,
                       const PeripheralOptions& peripheral, bool use_walk_counts = false,
                       RefineOptions options = {}) {
  if (K < 1) throw Error(ErrorCode::kInvalidConfiguration, "K must be at least 1");
  const auto table = compute_peripheral_table(g, K, kernel, peripheral);
  options.use_walk_counts = use_walk_counts;
  options.peripheral = &table;
  return run_general_cr(g, RefinementConfiguration::k_hop(L, K), kernel, options);
}

/// Distance encoding: initial color is (label, SPD distance to center), then
/// L rounds of 1-WL. Unreachable nodes share one dedicated distance token.
inline Coloring run_de1(const Graph& g, Node center, std::size_t L, RefineOptions options = {}) {
  if (!g.contains(center)) throw Error(ErrorCode::kInvalidNode, "center " + std::to_string(center));
  ColorInterner local;
  ColorInterner& interner = options.interner != nullptr ? *options.interner : local;
  options.interner = &interner;

  std::vector<std::uint64_t> distance(g.node_count(), ~std::uint64_t{0});
  std::vector<Node> queue{center};
  distance[center] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Node v = queue[head];
    for (Node w : g.neighbors(v)) {
      if (distance[w] == ~std::uint64_t{0}) {
        distance[w] = distance[v] + 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<Token> initial(g.node_count());
  std::vector<std::uint64_t> key;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    key.assign({tag::kDistance, static_cast<std::uint64_t>(g.label(static_cast<Node>(v))), distance[v]});
    initial[v] = static_cast<Token>(interner.intern(key));
  }
  options.initial_labels = std::move(initial);
  return run_general_cr(g, RefinementConfiguration::one_wl(L), Kernel::kSpd, options);
}

/// Multiset of node colors of one graph (or one block of a union).
struct Fingerprint {
  std::size_t node_count = 0;
  std::vector<ColorId> colors;  // sorted

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;

  /// 64-bit hex digest for reports; equality uses the full multiset.
  std::string digest() const {
    std::vector<std::uint64_t> words(colors.begin(), colors.end());
    words.push_back(node_count);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(detail::hash_words(words, 0x452821e638d01377ULL)));
    return buf;
  }
};

inline Fingerprint fingerprint(const Coloring& coloring, std::optional<std::size_t> at_iteration = {},
                               std::size_t begin = 0, std::optional<std::size_t> end = {}) {
  const auto& row = at_iteration ? coloring.at(*at_iteration) : coloring.final_colors();
  const std::size_t stop = end.value_or(row.size());
  Fingerprint fp;
  fp.node_count = stop - begin;
  fp.colors.assign(row.begin() + static_cast<std::ptrdiff_t>(begin),
                   row.begin() + static_cast<std::ptrdiff_t>(stop));
  std::sort(fp.colors.begin(), fp.colors.end());
  return fp;
}

enum class Method { kWl1, kKhop, kGinePlus, kKp, kDe1 };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::kWl1: return "wl1";
    case Method::kKhop: return "khop";
    case Method::kGinePlus: return "gineplus";
    case Method::kKp: return "kp";
    case Method::kDe1: return "de1";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "wl1" || s == "1wl") return Method::kWl1;
  if (s == "khop") return Method::kKhop;
  if (s == "gineplus" || s == "gine+") return Method::kGinePlus;
  if (s == "kp") return Method::kKp;
  if (s == "de1") return Method::kDe1;
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + std::string(s) + "'");
}

/// Which refinement to run and with what parameters. WL1 ignores the kernel;
/// DE1 ignores kernel and K.
struct MethodSpec {
  Method method = Method::kKhop;
  Kernel kernel = Kernel::kSpd;
  std::size_t K = 1;
  std::size_t L = 1;
  bool use_walk_counts = false;
  PeripheralOptions peripheral{};  // KP only; k_prime lives here
};

enum class Verdict { kDistinguished, kNotDistinguished };

inline std::string_view to_string(Verdict v) {
  return v == Verdict::kDistinguished ? "DISTINGUISHED" : "NOT_DISTINGUISHED";
}

/// Runs a node-centric method (everything except DE1) on g.
inline Coloring run_method(const Graph& g, const MethodSpec& spec, RefineOptions options = {}) {
  switch (spec.method) {
    case Method::kWl1:
      return run_one_wl(g, spec.L, options);
    case Method::kKhop:
      return run_khop(g, spec.K, spec.L, spec.kernel, spec.use_walk_counts, options);
    case Method::kGinePlus:
      return run_gine_plus(g, spec.K, spec.L, options);
    case Method::kKp:
      return run_kp(g, spec.K, spec.L, spec.kernel, spec.peripheral, spec.use_walk_counts, options);
    case Method::kDe1:
      break;
  }
  throw Error(ErrorCode::kInvalidConfiguration, "DE-1 is defined per center node");
}

/// Graph-level DE-1: labels every node as center once (n runs sharing one
/// interner) and returns the sorted list of per-center graph fingerprints.
inline std::vector<Fingerprint> de1_graph_signature(const Graph& g, std::size_t L,
                                                    ColorInterner& interner) {
  std::vector<Fingerprint> out;
  RefineOptions options;
  options.interner = &interner;
  options.stop_when_stable = false;
  for (std::size_t c = 0; c < g.node_count(); ++c)
    out.push_back(fingerprint(run_de1(g, static_cast<Node>(c), L, options)));
  std::sort(out.begin(), out.end());
  return out;
}

/// Graph-level verdict. Both graphs are refined jointly on their disjoint
/// union so color ids are comparable; different sizes are distinguished
/// immediately.
inline Verdict distinguish(const Graph& g1, const Graph& g2, const MethodSpec& spec) {
  if (g1.node_count() != g2.node_count()) return Verdict::kDistinguished;
  if (spec.method == Method::kDe1) {
    ColorInterner interner;
    return de1_graph_signature(g1, spec.L, interner) == de1_graph_signature(g2, spec.L, interner)
               ? Verdict::kNotDistinguished
               : Verdict::kDistinguished;
  }
  const auto joint = disjoint_union(g1, g2);
  const auto coloring = run_method(joint.graph, spec);
  const auto split = static_cast<std::size_t>(joint.offset);
  const auto a = fingerprint(coloring, {}, 0, split);
  const auto b = fingerprint(coloring, {}, split, joint.graph.node_count());
  return a == b ? Verdict::kNotDistinguished : Verdict::kDistinguished;
}

/// Node-level verdict for v1 in g1 against v2 in g2.
inline Verdict node_distinguish(const Graph& g1, Node v1, const Graph& g2, Node v2,
                                const MethodSpec& spec) {
  if (!g1.contains(v1)) throw Error(ErrorCode::kInvalidNode, "node " + std::to_string(v1));
  if (!g2.contains(v2)) throw Error(ErrorCode::kInvalidNode, "node " + std::to_string(v2));
  if (spec.method == Method::kDe1) {
    ColorInterner interner;
    RefineOptions options;
    options.interner = &interner;
    options.stop_when_stable = false;
    const auto c1 = run_de1(g1, v1, spec.L, options);
    const auto c2 = run_de1(g2, v2, spec.L, options);
    return c1.final_colors()[v1] == c2.final_colors()[v2] ? Verdict::kNotDistinguished
                                                          : Verdict::kDistinguished;
  }
  const auto joint = disjoint_union(g1, g2);
  const auto coloring = run_method(joint.graph, spec);
  const auto& colors = coloring.final_colors();
  return colors[v1] == colors[joint.offset + v2] ? Verdict::kNotDistinguished
                                                 : Verdict::kDistinguished;
}

/// Fingerprints of every graph of a corpus from one joint run on the union.
inline std::vector<Fingerprint> corpus_fingerprints(std::span<const Graph> graphs,
                                                    const MethodSpec& spec,
                                                    std::optional<std::size_t> at_iteration = {}) {
  std::vector<Fingerprint> out;
  if (spec.method == Method::kDe1) {
    throw Error(ErrorCode::kInvalidConfiguration, "use de1_graph_signature for DE-1 corpora");
  }
  const auto joint = disjoint_union_all(graphs);
  const auto coloring = run_method(joint.graph, spec);
  for (std::size_t i = 0; i < graphs.size(); ++i)
    out.push_back(fingerprint(coloring, at_iteration, static_cast<std::size_t>(joint.offsets[i]),
                              static_cast<std::size_t>(joint.offsets[i + 1])));
  return out;
}

inline std::size_t count_distinct(std::vector<Fingerprint> fps) {
  std::sort(fps.begin(), fps.end());
  return static_cast<std::size_t>(std::unique(fps.begin(), fps.end()) - fps.begin());
}

}  // namespace kpgnn

#endif  // KPGNN_REFINE_HPP
