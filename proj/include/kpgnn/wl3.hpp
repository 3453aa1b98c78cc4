#ifndef KPGNN_WL3_HPP
#define KPGNN_WL3_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kpgnn/graph.hpp"
#include "kpgnn/intern.hpp"
#include "kpgnn/refine.hpp"

// Folklore 2-WL over ordered node pairs; same distinguishing power as 3-WL.

namespace kpgnn {

/// history[l][u * n + v] is the color of the ordered pair (u, v).
struct PairColoring {
  std::size_t n = 0;
  std::vector<std::vector<ColorId>> history;

  const std::vector<ColorId>& final_colors() const { return history.back(); }
  ColorId color(std::size_t l, Node u, Node v) const {
    return history.at(std::min(l, history.size() - 1))[static_cast<std::size_t>(u) * n + v];
  }
};

namespace detail {

inline std::vector<ColorId> fwl2_initial(const Graph& g, ColorInterner& interner) {
  const std::size_t n = g.node_count();
  std::vector<ColorId> colors(n * n);
  std::vector<std::uint64_t> key;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto a = static_cast<Node>(u);
      const auto b = static_cast<Node>(v);
      const bool adjacent = u != v && g.has_edge(a, b);
      key.assign({tag::kPairInitial, u == v ? 1u : 0u, adjacent ? 1u : 0u,
                  static_cast<std::uint64_t>(g.label(a)), static_cast<std::uint64_t>(g.label(b)),
                  adjacent ? static_cast<std::uint64_t>(g.edge_type(a, b)) : 0u});
      colors[u * n + v] = interner.intern(key);
    }
  }
  return colors;
}

inline std::vector<ColorId> fwl2_step(std::size_t n, std::size_t l, const std::vector<ColorId>& old,
                                      ColorInterner& interner) {
  std::vector<ColorId> next(n * n);
  std::vector<std::uint64_t> key;
  std::vector<std::uint64_t> items(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t w = 0; w < n; ++w)
        items[w] = (static_cast<std::uint64_t>(old[u * n + w]) << 32) | old[w * n + v];
      std::sort(items.begin(), items.end());
      key.assign({tag::kPairRefine, l, old[u * n + v]});
      key.insert(key.end(), items.begin(), items.end());
      next[u * n + v] = interner.intern(key);
    }
  }
  return next;
}

inline std::size_t distinct_over(const std::vector<const std::vector<ColorId>*>& rows) {
  std::vector<ColorId> all;
  for (const auto* r : rows) all.insert(all.end(), r->begin(), r->end());
  std::sort(all.begin(), all.end());
  return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

}  // namespace detail

/// Refines a single graph until the pair partition is stable or `iterations`
/// rounds have run (default n^2).
inline PairColoring run_fwl2(const Graph& g, std::optional<std::size_t> iterations = {},
                             ColorInterner* shared = nullptr) {
  ColorInterner local;
  ColorInterner& interner = shared != nullptr ? *shared : local;
  const std::size_t n = g.node_count();
  const std::size_t limit = iterations.value_or(n * n);
  PairColoring out;
  out.n = n;
  out.history.push_back(detail::fwl2_initial(g, interner));
  std::size_t previous = detail::distinct_over({&out.history.back()});
  for (std::size_t l = 0; l < limit; ++l) {
    out.history.push_back(detail::fwl2_step(n, l, out.history.back(), interner));
    const std::size_t now = detail::distinct_over({&out.history.back()});
    if (now == previous) break;
    previous = now;
  }
  return out;
}

/// Runs every graph of a corpus in lockstep with one interner until the joint
/// pair partition is stable, and returns each graph's sorted pair-color
/// multiset. Equal signatures mean the graphs are 3-WL equivalent.
inline std::vector<std::vector<ColorId>> fwl2_corpus_signatures(std::span<const Graph> graphs,
                                                                std::optional<std::size_t> iterations = {}) {
  ColorInterner interner;
  std::size_t max_n = 0;
  for (const auto& g : graphs) max_n = std::max(max_n, g.node_count());
  const std::size_t limit = iterations.value_or(max_n * max_n);

  std::vector<std::vector<ColorId>> current;
  current.reserve(graphs.size());
  for (const auto& g : graphs) current.push_back(detail::fwl2_initial(g, interner));
  auto joint_distinct = [&]() {
    std::vector<const std::vector<ColorId>*> rows;
    for (const auto& c : current) rows.push_back(&c);
    return detail::distinct_over(rows);
  };
  std::size_t previous = joint_distinct();
  for (std::size_t l = 0; l < limit; ++l) {
    for (std::size_t i = 0; i < graphs.size(); ++i)
      current[i] = detail::fwl2_step(graphs[i].node_count(), l, current[i], interner);
    const std::size_t now = joint_distinct();
    if (now == previous) break;
    previous = now;
  }
  for (auto& c : current) std::sort(c.begin(), c.end());
  return current;
}

inline Verdict distinguish_3wl(const Graph& g1, const Graph& g2) {
  if (g1.node_count() != g2.node_count()) return Verdict::kDistinguished;
  const Graph pair[2] = {g1, g2};
  const auto sig = fwl2_corpus_signatures(pair);
  return sig[0] == sig[1] ? Verdict::kNotDistinguished : Verdict::kDistinguished;
}

}  // namespace kpgnn

#endif  // KPGNN_WL3_HPP
