#ifndef KPGNN_GRAPH_HPP
#define KPGNN_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kpgnn/error.hpp"

namespace kpgnn {

using Node = std::int32_t;
/// Opaque interned token for node labels and edge types.
using Token = std::int64_t;

struct Edge {
  Node u = 0;
  Node v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph in CSR form. Neighbor lists are sorted.
/// Node labels and edge types are optional; absence means all equal.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  static Graph build(std::size_t node_count, std::span<const Edge> edge_list,
                     std::vector<Token> labels = {}, std::vector<Token> edge_types = {}) {
    if (!labels.empty() && labels.size() != node_count) {
      throw Error(ErrorCode::kInvalidArgument, "label count " + std::to_string(labels.size()) +
                                                   " does not match node count " +
                                                   std::to_string(node_count));
    }
    if (!edge_types.empty() && edge_types.size() != edge_list.size()) {
      throw Error(ErrorCode::kInvalidArgument, "edge type count does not match edge count");
    }
    const auto n = static_cast<std::int64_t>(node_count);
    struct Typed {
      Edge e;
      Token type;
    };
    std::vector<Typed> canon;
    canon.reserve(edge_list.size());
    for (std::size_t i = 0; i < edge_list.size(); ++i) {
      Edge e = edge_list[i];
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw Error(ErrorCode::kOutOfRange, "edge (" + std::to_string(e.u) + "," +
                                                std::to_string(e.v) + ") outside [0," +
                                                std::to_string(n) + ")");
      }
      if (e.u == e.v) {
        throw Error(ErrorCode::kSelfLoop, "self-loop at node " + std::to_string(e.u));
      }
      if (e.u > e.v) std::swap(e.u, e.v);
      canon.push_back({e, edge_types.empty() ? Token{0} : edge_types[i]});
    }
    std::sort(canon.begin(), canon.end(), [](const Typed& a, const Typed& b) { return a.e < b.e; });
    for (std::size_t i = 1; i < canon.size(); ++i) {
      if (canon[i].e == canon[i - 1].e) {
        throw Error(ErrorCode::kDuplicateEdge, "duplicate edge (" + std::to_string(canon[i].e.u) +
                                                   "," + std::to_string(canon[i].e.v) + ")");
      }
    }

    Graph g;
    g.node_count_ = node_count;
    g.labels_ = std::move(labels);
    g.typed_ = !edge_types.empty();
    g.edges_.reserve(canon.size());
    for (const auto& t : canon) g.edges_.push_back(t.e);
    if (g.typed_) {
      g.edge_types_.reserve(canon.size());
      for (const auto& t : canon) g.edge_types_.push_back(t.type);
    }

    std::vector<std::size_t> degree(node_count, 0);
    for (const auto& e : g.edges_) {
      ++degree[e.u];
      ++degree[e.v];
    }
    g.offsets_.assign(node_count + 1, 0);
    for (std::size_t v = 0; v < node_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    g.targets_.resize(g.offsets_[node_count]);
    g.target_types_.resize(g.typed_ ? g.targets_.size() : 0);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
      const auto& e = g.edges_[i];
      const std::size_t a = cursor[e.u]++;
      const std::size_t b = cursor[e.v]++;
      g.targets_[a] = e.v;
      g.targets_[b] = e.u;
      if (g.typed_) {
        g.target_types_[a] = g.edge_types_[i];
        g.target_types_[b] = g.edge_types_[i];
      }
    }
    // Edges are sorted by (u,v), so each list is already ascending except for
    // the interleaving of lower and higher endpoints; sort to be sure.
    for (std::size_t v = 0; v < node_count; ++v) {
      const auto lo = g.offsets_[v];
      const auto hi = g.offsets_[v + 1];
      if (!g.typed_) {
        std::sort(g.targets_.begin() + lo, g.targets_.begin() + hi);
        continue;
      }
      std::vector<std::pair<Node, Token>> tmp;
      for (auto i = lo; i < hi; ++i) tmp.emplace_back(g.targets_[i], g.target_types_[i]);
      std::sort(tmp.begin(), tmp.end());
      for (auto i = lo; i < hi; ++i) {
        g.targets_[i] = tmp[i - lo].first;
        g.target_types_[i] = tmp[i - lo].second;
      }
    }
    return g;
  }

  static Graph build(std::size_t node_count, std::initializer_list<Edge> edge_list) {
    return build(node_count, std::span<const Edge>(edge_list.begin(), edge_list.size()));
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Node> neighbors(Node v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  /// Types aligned with neighbors(v); empty for untyped graphs.
  std::span<const Token> neighbor_types(Node v) const {
    if (!typed_) return {};
    return {target_types_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Node v) const { return offsets_[v + 1] - offsets_[v]; }

  bool contains(Node v) const noexcept {
    return v >= 0 && static_cast<std::size_t>(v) < node_count_;
  }

  bool has_edge(Node u, Node v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  bool has_node_labels() const noexcept { return !labels_.empty(); }
  Token label(Node v) const { return labels_.empty() ? Token{0} : labels_[v]; }
  const std::vector<Token>& labels() const noexcept { return labels_; }

  bool has_edge_types() const noexcept { return typed_; }
  const std::vector<Token>& edge_types() const noexcept { return edge_types_; }
  Token edge_type(Node u, Node v) const {
    if (!typed_) return 0;
    const auto nb = neighbors(u);
    const auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    return target_types_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
  }

  /// Returns the graph with node v renamed to perm[v].
  Graph relabeled(std::span<const Node> perm) const {
    if (perm.size() != node_count_) {
      throw Error(ErrorCode::kInvalidArgument, "permutation size mismatch");
    }
    std::vector<Edge> e;
    e.reserve(edges_.size());
    for (const auto& x : edges_) e.push_back({perm[x.u], perm[x.v]});
    std::vector<Token> lab;
    if (!labels_.empty()) {
      lab.resize(node_count_);
      for (std::size_t v = 0; v < node_count_; ++v) lab[perm[v]] = labels_[v];
    }
    return build(node_count_, e, std::move(lab), edge_types_);
  }

  /// Subgraph induced by `nodes`; node nodes[i] becomes i.
  Graph induced(std::span<const Node> nodes) const {
    std::vector<Node> index(node_count_, -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<Node>(i);
    std::vector<Edge> e;
    std::vector<Token> types;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node v = nodes[i];
      const auto nb = neighbors(v);
      for (std::size_t j = 0; j < nb.size(); ++j) {
        const Node w = index[nb[j]];
        if (w > static_cast<Node>(i)) {
          e.push_back({static_cast<Node>(i), w});
          if (typed_) types.push_back(target_types_[offsets_[v] + j]);
        }
      }
    }
    std::vector<Token> lab;
    if (!labels_.empty()) {
      for (Node v : nodes) lab.push_back(labels_[v]);
    }
    return build(nodes.size(), e, std::move(lab), std::move(types));
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_ && a.labels_ == b.labels_ &&
           a.edge_types_ == b.edge_types_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Token> edge_types_;
  std::vector<Token> labels_;
  bool typed_ = false;
  std::vector<std::size_t> offsets_;
  std::vector<Node> targets_;
  std::vector<Token> target_types_;
};

struct UnionResult {
  Graph graph;
  Node offset = 0;
};

/// Places g2 after g1; no edges between the two parts.
inline UnionResult disjoint_union(const Graph& g1, const Graph& g2) {
  const auto offset = static_cast<Node>(g1.node_count());
  std::vector<Edge> edges(g1.edges());
  for (const auto& e : g2.edges()) edges.push_back({e.u + offset, e.v + offset});
  std::vector<Token> labels;
  if (g1.has_node_labels() || g2.has_node_labels()) {
    labels.reserve(g1.node_count() + g2.node_count());
    for (std::size_t v = 0; v < g1.node_count(); ++v) labels.push_back(g1.label(static_cast<Node>(v)));
    for (std::size_t v = 0; v < g2.node_count(); ++v) labels.push_back(g2.label(static_cast<Node>(v)));
  }
  std::vector<Token> types;
  if (g1.has_edge_types() || g2.has_edge_types()) {
    for (std::size_t i = 0; i < g1.edge_count(); ++i)
      types.push_back(g1.has_edge_types() ? g1.edge_types()[i] : Token{0});
    for (std::size_t i = 0; i < g2.edge_count(); ++i)
      types.push_back(g2.has_edge_types() ? g2.edge_types()[i] : Token{0});
  }
  return {Graph::build(g1.node_count() + g2.node_count(), edges, std::move(labels), std::move(types)),
          offset};
}

/// Union of many graphs; offsets[i] is where graph i starts.
struct CorpusUnion {
  Graph graph;
  std::vector<Node> offsets;  // size = graphs + 1
};

inline CorpusUnion disjoint_union_all(std::span<const Graph> graphs) {
  CorpusUnion out;
  out.offsets.push_back(0);
  std::vector<Edge> edges;
  std::vector<Token> labels;
  std::vector<Token> types;
  bool any_labels = false;
  bool any_types = false;
  for (const auto& g : graphs) {
    any_labels = any_labels || g.has_node_labels();
    any_types = any_types || g.has_edge_types();
  }
  Node offset = 0;
  for (const auto& g : graphs) {
    for (const auto& e : g.edges()) edges.push_back({e.u + offset, e.v + offset});
    if (any_labels)
      for (std::size_t v = 0; v < g.node_count(); ++v) labels.push_back(g.label(static_cast<Node>(v)));
    if (any_types)
      for (std::size_t i = 0; i < g.edge_count(); ++i)
        types.push_back(g.has_edge_types() ? g.edge_types()[i] : Token{0});
    offset += static_cast<Node>(g.node_count());
    out.offsets.push_back(offset);
  }
  out.graph = Graph::build(static_cast<std::size_t>(offset), edges, std::move(labels), std::move(types));
  return out;
}

/// Components in order of their smallest node; each component is sorted.
inline std::vector<std::vector<Node>> connected_components(const Graph& g) {
  const auto n = g.node_count();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Node>> out;
  std::vector<Node> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Node> comp;
    seen[s] = 1;
    stack.push_back(static_cast<Node>(s));
    while (!stack.empty()) {
      const Node v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Node w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

class DistanceMatrix {
 public:
  static constexpr int kUnreachable = -1;

  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, kUnreachable) {}

  std::size_t size() const noexcept { return n_; }
  int at(Node u, Node v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  int& at(Node u, Node v) { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  bool reachable(Node u, Node v) const { return at(u, v) != kUnreachable; }

 private:
  std::size_t n_;
  std::vector<int> d_;
};

/// Per-source BFS.
inline DistanceMatrix all_pairs_shortest_distance(const Graph& g) {
  const auto n = g.node_count();
  DistanceMatrix dm(n);
  std::vector<Node> queue;
  for (std::size_t s = 0; s < n; ++s) {
    const auto src = static_cast<Node>(s);
    queue.assign(1, src);
    dm.at(src, src) = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Node v = queue[head];
      for (Node w : g.neighbors(v)) {
        if (dm.at(src, w) == DistanceMatrix::kUnreachable) {
          dm.at(src, w) = dm.at(src, v) + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return dm;
}

/// Entries of A^k: number of walks of length exactly k.
class WalkCountMatrix {
 public:
  WalkCountMatrix(std::size_t n, int k) : n_(n), k_(k), c_(n * n, 0) {}
  std::size_t size() const noexcept { return n_; }
  int steps() const noexcept { return k_; }
  std::uint64_t at(Node u, Node v) const { return c_[static_cast<std::size_t>(u) * n_ + v]; }
  std::uint64_t& at(Node u, Node v) { return c_[static_cast<std::size_t>(u) * n_ + v]; }
  friend bool operator==(const WalkCountMatrix&, const WalkCountMatrix&) = default;

 private:
  std::size_t n_;
  int k_;
  std::vector<std::uint64_t> c_;
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "walk count overflow");
  return r;
}

inline WalkCountMatrix walk_counts(const Graph& g, int k) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "walk length must be non-negative");
  const auto n = g.node_count();
  WalkCountMatrix cur(n, 0);
  for (std::size_t v = 0; v < n; ++v) cur.at(static_cast<Node>(v), static_cast<Node>(v)) = 1;
  for (int step = 1; step <= k; ++step) {
    WalkCountMatrix next(n, step);
    // next = cur * A, using the sparse adjacency.
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t w = 0; w < n; ++w) {
        const auto c = cur.at(static_cast<Node>(u), static_cast<Node>(w));
        if (c == 0) continue;
        for (Node x : g.neighbors(static_cast<Node>(w))) {
          next.at(static_cast<Node>(u), x) = checked_add(next.at(static_cast<Node>(u), x), c);
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

namespace detail {

struct IsoSearch {
  const Graph& a;
  const Graph& b;
  std::vector<Node> map_ab;
  std::vector<Node> map_ba;
  std::vector<Node> order;

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const Node v = order[depth];
    for (std::size_t cand = 0; cand < b.node_count(); ++cand) {
      const auto w = static_cast<Node>(cand);
      if (map_ba[w] != -1) continue;
      if (a.degree(v) != b.degree(w) || a.label(v) != b.label(w)) continue;
      bool ok = true;
      // Mapped neighbors of v must map to neighbors of w with the same type.
      std::size_t mapped_neighbors = 0;
      for (Node x : a.neighbors(v)) {
        if (map_ab[x] == -1) continue;
        ++mapped_neighbors;
        if (!b.has_edge(w, map_ab[x]) || a.edge_type(v, x) != b.edge_type(w, map_ab[x])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::size_t mapped_b = 0;
      for (Node y : b.neighbors(w)) {
        if (map_ba[y] != -1) ++mapped_b;
      }
      if (mapped_b != mapped_neighbors) continue;
      map_ab[v] = w;
      map_ba[w] = v;
      if (extend(depth + 1)) return true;
      map_ab[v] = -1;
      map_ba[w] = -1;
    }
    return false;
  }
};

}  // namespace detail

inline constexpr std::size_t kSmallIsomorphismCap = 10;

/// Exact isomorphism by backtracking with degree and adjacency pruning.
inline bool is_isomorphic_small(const Graph& g1, const Graph& g2) {
  if (g1.node_count() > kSmallIsomorphismCap || g2.node_count() > kSmallIsomorphismCap) {
    throw Error(ErrorCode::kTooLarge, "isomorphism oracle is limited to " +
                                          std::to_string(kSmallIsomorphismCap) + " nodes");
  }
  if (g1.node_count() != g2.node_count() || g1.edge_count() != g2.edge_count()) return false;
  auto signature = [](const Graph& g) {
    std::vector<std::pair<std::size_t, Token>> s;
    for (std::size_t v = 0; v < g.node_count(); ++v)
      s.emplace_back(g.degree(static_cast<Node>(v)), g.label(static_cast<Node>(v)));
    std::sort(s.begin(), s.end());
    return s;
  };
  if (signature(g1) != signature(g2)) return false;
  auto types = [](const Graph& g) {
    auto t = g.edge_types();
    std::sort(t.begin(), t.end());
    return t;
  };
  if (types(g1) != types(g2)) return false;

  detail::IsoSearch search{g1, g2, std::vector<Node>(g1.node_count(), -1),
                           std::vector<Node>(g2.node_count(), -1), {}};
  // BFS order from high-degree nodes keeps the mapped set connected, which
  // lets adjacency checks prune early.
  std::vector<char> seen(g1.node_count(), 0);
  std::vector<Node> roots(g1.node_count());
  std::iota(roots.begin(), roots.end(), 0);
  std::stable_sort(roots.begin(), roots.end(),
                   [&](Node x, Node y) { return g1.degree(x) > g1.degree(y); });
  for (Node r : roots) {
    if (seen[r]) continue;
    seen[r] = 1;
    const std::size_t start = search.order.size();
    search.order.push_back(r);
    for (std::size_t head = start; head < search.order.size(); ++head) {
      for (Node w : g1.neighbors(search.order[head])) {
        if (!seen[w]) {
          seen[w] = 1;
          search.order.push_back(w);
        }
      }
    }
  }
  return search.extend(0);
}

}  // namespace kpgnn

#endif  // KPGNN_GRAPH_HPP
