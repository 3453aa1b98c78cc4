#ifndef KPGNN_PERIPHERAL_HPP
#define KPGNN_PERIPHERAL_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "kpgnn/graph.hpp"
#include "kpgnn/khop.hpp"

namespace kpgnn {

/// The subgraph induced by one hop set Q^k around a center.
struct PeripheralSubgraph {
  std::size_t hop = 1;
  Kernel kernel = Kernel::kSpd;
  Node center = 0;
  std::vector<Node> nodes;  // sorted, ids of the host graph
  Graph local;              // nodes[i] is local node i; edge types carried over
};

inline constexpr std::size_t kUncapped = std::numeric_limits<std::size_t>::max();

/// How the per-node configurations inside a peripheral subgraph are read out.
enum class KprimeReadout { kSum, kMultiset };

struct PeripheralOptions {
  std::size_t k_prime = 0;
  std::size_t max_edges = 6;
  std::size_t max_components = 3;
  KprimeReadout readout = KprimeReadout::kSum;

  static PeripheralOptions uncapped(std::size_t k_prime) {
    return {k_prime, kUncapped, kUncapped, KprimeReadout::kSum};
  }
};

/// Summary of one peripheral subgraph: typed edge counts, component count and
/// the k'-configuration (per-hop sums of the node configurations and of the
/// peripheral edge counts of every node, computed inside the subgraph).
struct PeripheralEncoding {
  std::vector<std::pair<Token, std::size_t>> edge_count_by_type;  // sorted by type
  std::size_t component_count = 0;
  std::vector<std::size_t> kprime_configuration;
  std::vector<std::size_t> kprime_edge_totals;
  std::vector<std::vector<std::size_t>> kprime_multiset;  // kMultiset readout only

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& [type, c] : edge_count_by_type) total += c;
    return total;
  }

  /// Unambiguous flat encoding (every list is length-prefixed).
  std::vector<std::uint64_t> key() const {
    std::vector<std::uint64_t> k;
    k.push_back(edge_count_by_type.size());
    for (const auto& [type, c] : edge_count_by_type) {
      k.push_back(static_cast<std::uint64_t>(type));
      k.push_back(c);
    }
    k.push_back(component_count);
    k.push_back(kprime_configuration.size());
    k.insert(k.end(), kprime_configuration.begin(), kprime_configuration.end());
    k.push_back(kprime_edge_totals.size());
    k.insert(k.end(), kprime_edge_totals.begin(), kprime_edge_totals.end());
    k.push_back(kprime_multiset.size());
    for (const auto& row : kprime_multiset) {
      k.push_back(row.size());
      k.insert(k.end(), row.begin(), row.end());
    }
    return k;
  }

  friend bool operator==(const PeripheralEncoding&, const PeripheralEncoding&) = default;
};

inline PeripheralSubgraph peripheral_subgraph_of(const Graph& g, const HopSets& hops,
                                                 std::size_t k) {
  PeripheralSubgraph ps;
  ps.hop = k;
  ps.kernel = hops.kernel;
  ps.center = hops.center;
  ps.nodes = hops.hop(k);
  ps.local = g.induced(ps.nodes);
  return ps;
}

inline PeripheralSubgraph peripheral_subgraph(const Graph& g, Node v, std::size_t k,
                                              Kernel kernel) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "peripheral hop must be at least 1");
  return peripheral_subgraph_of(g, hop_sets(g, v, k, kernel), k);
}

/// Host-graph edges of the peripheral subgraph, as (u,v) with u < v.
inline std::vector<Edge> peripheral_edges(const PeripheralSubgraph& ps) {
  std::vector<Edge> out;
  for (const auto& e : ps.local.edges()) out.push_back({ps.nodes[e.u], ps.nodes[e.v]});
  return out;
}

namespace detail {

inline std::size_t saturate(std::size_t value, std::size_t cap) { return std::min(value, cap); }

}  // namespace detail

inline PeripheralEncoding peripheral_encoding(const PeripheralSubgraph& ps,
                                              const PeripheralOptions& options = {}) {
  const Graph& p = ps.local;
  PeripheralEncoding enc;

  std::map<Token, std::size_t> by_type;
  if (p.has_edge_types()) {
    for (Token t : p.edge_types()) ++by_type[t];
  } else if (p.edge_count() > 0) {
    by_type[0] = p.edge_count();
  } else {
    by_type[0] = 0;
  }
  for (const auto& [type, count] : by_type)
    enc.edge_count_by_type.emplace_back(type, detail::saturate(count, options.max_edges));

  enc.component_count =
      detail::saturate(connected_components(p).size(), options.max_components);

  const std::size_t kp = options.k_prime;
  if (kp == 0) return enc;

  enc.kprime_configuration.assign(kp, 0);
  enc.kprime_edge_totals.assign(kp, 0);
  HopExtractor extractor(p);
  HopSets inner;
  std::vector<char> member(p.node_count(), 0);
  for (std::size_t w = 0; w < p.node_count(); ++w) {
    extractor.extract(static_cast<Node>(w), kp, Kernel::kSpd, inner);
    std::vector<std::size_t> config(kp, 0);
    for (std::size_t j = 0; j < kp; ++j) {
      const auto& hop = inner.sets[j];
      config[j] = hop.size();
      enc.kprime_configuration[j] += hop.size();
      for (Node u : hop) member[u] = 1;
      std::size_t inside = 0;
      for (Node u : hop)
        for (Node x : p.neighbors(u))
          if (x > u && member[x]) ++inside;
      for (Node u : hop) member[u] = 0;
      enc.kprime_edge_totals[j] += inside;
    }
    if (options.readout == KprimeReadout::kMultiset) enc.kprime_multiset.push_back(std::move(config));
  }
  std::sort(enc.kprime_multiset.begin(), enc.kprime_multiset.end());
  return enc;
}

struct RegularityReport {
  bool is_regular = true;
  int degree = 0;  // -1 when not regular
};

/// Whether the SPD peripheral subgraph at hop k around v is regular.
inline RegularityReport peripheral_regularity_check(const Graph& g, Node v, std::size_t k) {
  const auto ps = peripheral_subgraph(g, v, k, Kernel::kSpd);
  RegularityReport r;
  if (ps.local.node_count() == 0) return r;
  r.degree = static_cast<int>(ps.local.degree(0));
  for (std::size_t u = 1; u < ps.local.node_count(); ++u) {
    if (static_cast<int>(ps.local.degree(static_cast<Node>(u))) != r.degree) {
      r.is_regular = false;
      r.degree = -1;
      break;
    }
  }
  return r;
}

/// encodings[v][k-1] for every node and hop 1..K; computed once per graph and
/// reused by every refinement iteration.
using PeripheralTable = std::vector<std::vector<PeripheralEncoding>>;

inline PeripheralTable compute_peripheral_table(const Graph& g, std::size_t K, Kernel kernel,
                                                const PeripheralOptions& options) {
  PeripheralTable table(g.node_count());
  HopExtractor extractor(g);
  HopSets hops;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    extractor.extract(static_cast<Node>(v), K, kernel, hops);
    table[v].reserve(K);
    for (std::size_t k = 1; k <= K; ++k)
      table[v].push_back(peripheral_encoding(peripheral_subgraph_of(g, hops, k), options));
  }
  return table;
}

}  // namespace kpgnn

#endif  // KPGNN_PERIPHERAL_HPP
