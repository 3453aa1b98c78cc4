#ifndef KPGNN_KHOP_HPP
#define KPGNN_KHOP_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kpgnn/error.hpp"
#include "kpgnn/graph.hpp"

namespace kpgnn {

/// How the k-th hop is defined: exact shortest-path distance (SPD) or
/// existence of a length-k walk (graph diffusion, GD).
enum class Kernel { kSpd, kGd };

inline std::string_view to_string(Kernel k) { return k == Kernel::kSpd ? "spd" : "gd"; }

inline Kernel parse_kernel(std::string_view s) {
  if (s == "spd") return Kernel::kSpd;
  if (s == "gd") return Kernel::kGd;
  throw Error(ErrorCode::kInvalidArgument, "unknown kernel '" + std::string(s) + "'");
}

/// sets[k-1] holds the k-th hop neighbors, sorted. The center never appears.
struct HopSets {
  Kernel kernel = Kernel::kSpd;
  Node center = 0;
  std::vector<std::vector<Node>> sets;

  std::size_t hops() const noexcept { return sets.size(); }
  const std::vector<Node>& hop(std::size_t k) const { return sets.at(k - 1); }
};

struct NodeConfiguration {
  Kernel kernel = Kernel::kSpd;
  std::vector<std::size_t> counts;
  friend bool operator==(const NodeConfiguration&, const NodeConfiguration&) = default;
};

/// counts[i-1] = number of nodes in hop k+1 with exactly i edges into hop k.
/// Trailing zeros are trimmed; an empty hop k+1 gives an empty list.
struct CrossEdgeConfiguration {
  std::size_t hop = 0;
  std::vector<std::size_t> counts;
  friend bool operator==(const CrossEdgeConfiguration&, const CrossEdgeConfiguration&) = default;
};

/// Reusable per-graph scratch for extracting hop sets (and optionally walk
/// counts) around many centers. Work per center is proportional to the
/// explored neighborhood, not to the graph size.
class HopExtractor {
 public:
  explicit HopExtractor(const Graph& g)
      : g_(g), stamp_(g.node_count(), 0), walks_(g.node_count(), 0),
        next_walks_(g.node_count(), 0) {}

  /// Fills out.sets (size K). When `walk_counts` is non-null it receives, for
  /// each hop k and each node in sets[k-1] (same order), the number of walks
  /// of length exactly k from the center.
  void extract(Node v, std::size_t K, Kernel kernel, HopSets& out,
               std::vector<std::vector<std::uint64_t>>* walk_counts = nullptr) {
    if (!g_.contains(v)) throw Error(ErrorCode::kInvalidNode, "node " + std::to_string(v));
    if (K < 1) throw Error(ErrorCode::kInvalidArgument, "K must be at least 1");
    out.kernel = kernel;
    out.center = v;
    out.sets.assign(K, {});
    if (walk_counts != nullptr) walk_counts->assign(K, {});

    if (kernel == Kernel::kSpd) {
      bfs(v, K, out);
    } else if (walk_counts == nullptr) {
      diffuse(v, K, out);
    }
    if (walk_counts != nullptr) {
      count_walks(v, K, kernel, out, *walk_counts);
    }
  }

 private:
  std::uint32_t fresh() {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    return epoch_;
  }

  void bfs(Node v, std::size_t K, HopSets& out) {
    const auto mark = fresh();
    stamp_[v] = mark;
    std::vector<Node> frontier{v};
    for (std::size_t k = 1; k <= K && !frontier.empty(); ++k) {
      auto& next = out.sets[k - 1];
      for (Node u : frontier) {
        for (Node w : g_.neighbors(u)) {
          if (stamp_[w] != mark) {
            stamp_[w] = mark;
            next.push_back(w);
          }
        }
      }
      std::sort(next.begin(), next.end());
      frontier = next;
    }
  }

  // Q^k = N(F_{k-1}) \ {v}, with F_0 = {v} and F_k = N(F_{k-1}).
  void diffuse(Node v, std::size_t K, HopSets& out) {
    std::vector<Node> frontier{v};
    std::vector<Node> next;
    for (std::size_t k = 1; k <= K && !frontier.empty(); ++k) {
      const auto mark = fresh();
      next.clear();
      for (Node u : frontier) {
        for (Node w : g_.neighbors(u)) {
          if (stamp_[w] != mark) {
            stamp_[w] = mark;
            next.push_back(w);
          }
        }
      }
      std::sort(next.begin(), next.end());
      auto& hop = out.sets[k - 1];
      for (Node w : next)
        if (w != v) hop.push_back(w);
      frontier.swap(next);
    }
  }

  void count_walks(Node v, std::size_t K, Kernel kernel, HopSets& out,
                   std::vector<std::vector<std::uint64_t>>& counts) {
    std::vector<Node> touched{v};
    walks_[v] = 1;
    std::vector<Node> next_touched;
    for (std::size_t k = 1; k <= K; ++k) {
      const auto mark = fresh();
      next_touched.clear();
      for (Node u : touched) {
        const auto c = walks_[u];
        for (Node w : g_.neighbors(u)) {
          if (stamp_[w] != mark) {
            stamp_[w] = mark;
            next_touched.push_back(w);
            next_walks_[w] = 0;
          }
          next_walks_[w] = checked_add(next_walks_[w], c);
        }
      }
      for (Node u : touched) walks_[u] = 0;
      touched.swap(next_touched);
      std::sort(touched.begin(), touched.end());
      for (Node u : touched) {
        walks_[u] = next_walks_[u];
        next_walks_[u] = 0;
      }
      if (kernel == Kernel::kGd) {
        auto& hop = out.sets[k - 1];
        for (Node u : touched)
          if (u != v) hop.push_back(u);
      }
      auto& row = counts[k - 1];
      row.reserve(out.sets[k - 1].size());
      for (Node u : out.sets[k - 1]) row.push_back(walks_[u]);
    }
    for (Node u : touched) walks_[u] = 0;
  }

  const Graph& g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint64_t> walks_;
  std::vector<std::uint64_t> next_walks_;
};

inline HopSets hop_sets(const Graph& g, Node v, std::size_t K, Kernel kernel) {
  HopSets out;
  HopExtractor(g).extract(v, K, kernel, out);
  return out;
}

inline HopSets hop_sets_spd(const Graph& g, Node v, std::size_t K) {
  return hop_sets(g, v, K, Kernel::kSpd);
}

inline HopSets hop_sets_gd(const Graph& g, Node v, std::size_t K) {
  return hop_sets(g, v, K, Kernel::kGd);
}

inline NodeConfiguration node_configuration(const Graph& g, Node v, std::size_t K, Kernel kernel) {
  const auto hs = hop_sets(g, v, K, kernel);
  NodeConfiguration cfg{kernel, {}};
  for (const auto& s : hs.sets) cfg.counts.push_back(s.size());
  return cfg;
}

/// Cross edges between the SPD hops k and k+1 around v (k = 0 means {v}).
inline CrossEdgeConfiguration cross_edge_configuration(const Graph& g, Node v, std::size_t k) {
  const auto hs = hop_sets_spd(g, v, k + 1);
  std::vector<char> in_hop(g.node_count(), 0);
  if (k == 0) {
    in_hop[v] = 1;
  } else {
    for (Node u : hs.hop(k)) in_hop[u] = 1;
  }
  CrossEdgeConfiguration out{k, {}};
  for (Node u : hs.hop(k + 1)) {
    std::size_t into = 0;
    for (Node w : g.neighbors(u)) into += in_hop[w];
    if (out.counts.size() < into) out.counts.resize(into, 0);
    ++out.counts[into - 1];
  }
  return out;
}

}  // namespace kpgnn

#endif  // KPGNN_KHOP_HPP
