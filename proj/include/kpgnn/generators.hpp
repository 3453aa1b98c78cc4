#ifndef KPGNN_GENERATORS_HPP
#define KPGNN_GENERATORS_HPP

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kpgnn/error.hpp"
#include "kpgnn/graph.hpp"

namespace kpgnn {

/// Recorded in experiment outputs so runs can be reproduced exactly.
inline constexpr std::string_view kPrngId = "mt19937_64+rejection-bounded-v1";

using Rng = std::mt19937_64;

/// Unbiased integer in [0, bound). Implemented here (not with
/// std::uniform_int_distribution) so outputs do not depend on the standard
/// library vendor.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Independent child seed for (base, a, b).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return mix(mix(mix(base) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

/// Configuration model: n*r stubs, uniformly random perfect matching, whole
/// matching rejected and redrawn whenever it contains a loop or a multi-edge.
/// The accepted graph is uniform over simple r-regular graphs on n labeled
/// nodes.
inline Graph random_regular(std::size_t n, std::size_t r, std::uint64_t seed,
                            std::size_t max_retries = 100000) {
  if (r < 3 || r >= n || (n * r) % 2 != 0) {
    throw Error(ErrorCode::kInvalidDegree, "random_regular needs 3 <= r < n and n*r even (n=" +
                                               std::to_string(n) + ", r=" + std::to_string(r) + ")");
  }
  Rng rng(seed);
  std::vector<Node> stubs(n * r);
  std::vector<Edge> edges;
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<Node>(i / r);
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[uniform_below(rng, i + 1)]);
    edges.clear();
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      Node a = stubs[i];
      Node b = stubs[i + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (a > b) std::swap(a, b);
      edges.push_back({a, b});
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph::build(n, edges);
  }
  throw Error(ErrorCode::kRetryExhausted,
              "no simple pairing after " + std::to_string(max_retries) + " attempts");
}

/// Circulant skip-link graph: cycle 0..n-1 plus chords i -- i+skip (mod n).
inline Graph csl(std::size_t n, std::size_t skip) {
  if (n < 5 || skip < 2 || skip > n - 2 || 2 * skip == n) {
    throw Error(ErrorCode::kInvalidSkip, "csl(" + std::to_string(n) + ", " + std::to_string(skip) +
                                             ") is not a simple 4-regular circulant");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<Node>(i), static_cast<Node>((i + 1) % n)});
    edges.push_back({static_cast<Node>(i), static_cast<Node>((i + skip) % n)});
  }
  // Chords i -> i+skip and j -> j+(n-skip) coincide only when 2*skip == n,
  // which is rejected above, so the list has no duplicates.
  return Graph::build(n, edges);
}

/// Skips of the standard 10-class CSL benchmark on 41 nodes.
inline const std::vector<std::size_t>& csl_benchmark_skips() {
  static const std::vector<std::size_t> skips{2, 3, 4, 5, 6, 9, 11, 12, 13, 16};
  return skips;
}

inline Graph random_er(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "p must be in [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (uniform_unit(rng) < p) edges.push_back({static_cast<Node>(u), static_cast<Node>(v)});
  return Graph::build(n, edges);
}

namespace catalog_detail {

inline Graph cycle(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "cycle needs at least 3 nodes");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({static_cast<Node>(i), static_cast<Node>((i + 1) % n)});
  return Graph::build(n, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.push_back({static_cast<Node>(u), static_cast<Node>(v)});
  return Graph::build(n, e);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.push_back({0, static_cast<Node>(i)});
  return Graph::build(leaves + 1, e);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({static_cast<Node>(i), static_cast<Node>(i + 1)});
  return Graph::build(n, e);
}

/// Z4 x Z4 with (i,j) -> 4i+j, adjacent when the difference is in `steps`
/// (closed under negation).
template <typename Pred>
Graph torus4(Pred adjacent) {
  std::vector<Edge> e;
  for (int a = 0; a < 16; ++a) {
    for (int b = a + 1; b < 16; ++b) {
      const int di = ((b / 4 - a / 4) % 4 + 4) % 4;
      const int dj = ((b % 4 - a % 4) % 4 + 4) % 4;
      if (adjacent(di, dj)) e.push_back({a, b});
    }
  }
  return Graph::build(16, e);
}

inline Graph shrikhande() {
  // Differences +-(1,0), +-(0,1), +-(1,1).
  return torus4([](int di, int dj) {
    return (di == 0 && (dj == 1 || dj == 3)) || (dj == 0 && (di == 1 || di == 3)) ||
           (di == 1 && dj == 1) || (di == 3 && dj == 3);
  });
}

inline Graph rook4() {
  return torus4([](int di, int dj) { return (di == 0) != (dj == 0); });
}

inline std::size_t parse_arg(std::string_view name, std::string_view digits) {
  std::size_t value = 0;
  const auto* first = digits.data();
  const auto* last = digits.data() + digits.size();
  const auto res = std::from_chars(first, last, value);
  if (digits.empty() || res.ec != std::errc{} || res.ptr != last) {
    throw Error(ErrorCode::kUnknownName, "unknown catalog graph '" + std::string(name) + "'");
  }
  return value;
}

}  // namespace catalog_detail

/// Names accepted by catalog(); parameterized families take "cycle(6)" or "cycle6".
inline std::vector<std::string> catalog_names() {
  return {"prism", "k33", "shrikhande", "rook4", "two_triangles",
          "cycle(n)", "complete(n)", "star(n)", "path(n)"};
}

inline Graph catalog(std::string_view name) {
  using namespace catalog_detail;
  if (name == "prism") {
    return Graph::build(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
  }
  if (name == "k33") {
    std::vector<Edge> e;
    for (Node a = 0; a < 3; ++a)
      for (Node b = 3; b < 6; ++b) e.push_back({a, b});
    return Graph::build(6, e);
  }
  if (name == "shrikhande") return shrikhande();
  if (name == "rook4") return rook4();
  if (name == "two_triangles") return Graph::build(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});

  static const std::map<std::string, Graph (*)(std::size_t), std::less<>> families{
      {"cycle", &cycle}, {"complete", &complete}, {"star", &star}, {"path", &path}};
  for (const auto& [family, make] : families) {
    if (name.substr(0, family.size()) != family) continue;
    auto rest = name.substr(family.size());
    if (!rest.empty() && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    return make(parse_arg(name, rest));
  }
  throw Error(ErrorCode::kUnknownName, "unknown catalog graph '" + std::string(name) + "'");
}

inline constexpr std::size_t kEnumerationCap = 7;

/// All connected graphs on n nodes up to isomorphism. Every connected graph
/// has a non-cut vertex, so each one arises from a connected graph on n-1
/// nodes plus a vertex joined to a nonempty subset; candidates are bucketed
/// by a cheap invariant and deduplicated with the exact isomorphism oracle.
inline std::vector<Graph> enumerate_connected(std::size_t n) {
  if (n > kEnumerationCap) {
    throw Error(ErrorCode::kTooLarge, "enumeration is limited to " + std::to_string(kEnumerationCap) + " nodes");
  }
  if (n == 0) return {};
  std::vector<Graph> level{Graph::build(1, {})};
  for (std::size_t size = 2; size <= n; ++size) {
    std::map<std::vector<std::size_t>, std::vector<Graph>> buckets;
    std::vector<Graph> next;
    for (const auto& base : level) {
      const std::size_t m = size - 1;
      for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<Edge> e(base.edges());
        for (std::size_t u = 0; u < m; ++u)
          if (mask & (1u << u)) e.push_back({static_cast<Node>(u), static_cast<Node>(m)});
        Graph g = Graph::build(size, e);
        // Invariant: sorted (degree, sorted neighbor degrees) per node.
        std::vector<std::vector<std::size_t>> per_node;
        for (std::size_t v = 0; v < size; ++v) {
          std::vector<std::size_t> row{g.degree(static_cast<Node>(v))};
          std::vector<std::size_t> nd;
          for (Node w : g.neighbors(static_cast<Node>(v))) nd.push_back(g.degree(w));
          std::sort(nd.begin(), nd.end());
          row.insert(row.end(), nd.begin(), nd.end());
          per_node.push_back(std::move(row));
        }
        std::sort(per_node.begin(), per_node.end());
        std::vector<std::size_t> sig{g.edge_count()};
        for (const auto& row : per_node) {
          sig.push_back(row.size());
          sig.insert(sig.end(), row.begin(), row.end());
        }
        auto& bucket = buckets[sig];
        bool seen = false;
        for (const auto& h : bucket) {
          if (is_isomorphic_small(g, h)) {
            seen = true;
            break;
          }
        }
        if (!seen) {
          bucket.push_back(g);
          next.push_back(std::move(g));
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

enum class GeneratorKind { kRandomRegular, kCsl, kEr, kCatalog, kEnumerate };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kCatalog;
  std::size_t n = 0;
  std::size_t r = 3;
  std::size_t skip = 2;
  double p = 0.5;
  std::string name;
  std::uint64_t seed = 0;
  std::size_t count = 1;
};

/// Graphs described by spec; seeded kinds draw `count` graphs with derived seeds.
inline std::vector<Graph> generate(const GeneratorSpec& spec) {
  std::vector<Graph> out;
  switch (spec.kind) {
    case GeneratorKind::kRandomRegular:
      for (std::size_t i = 0; i < spec.count; ++i)
        out.push_back(random_regular(spec.n, spec.r, derive_seed(spec.seed, spec.n, i)));
      break;
    case GeneratorKind::kEr:
      for (std::size_t i = 0; i < spec.count; ++i)
        out.push_back(random_er(spec.n, spec.p, derive_seed(spec.seed, spec.n, i)));
      break;
    case GeneratorKind::kCsl:
      out.push_back(csl(spec.n, spec.skip));
      break;
    case GeneratorKind::kCatalog:
      out.push_back(catalog(spec.name));
      break;
    case GeneratorKind::kEnumerate:
      out = enumerate_connected(spec.n);
      break;
  }
  return out;
}

}  // namespace kpgnn

#endif  // KPGNN_GENERATORS_HPP
