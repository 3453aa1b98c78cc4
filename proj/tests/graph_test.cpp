#include <gtest/gtest.h>

#include "kpgnn/generators.hpp"
#include "kpgnn/graph.hpp"
#include "oracles.hpp"

using namespace kpgnn;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

bool has_triangle(const Graph& g) {
  for (const auto& e : g.edges())
    for (std::size_t w = 0; w < g.node_count(); ++w)
      if (g.has_edge(e.u, static_cast<Node>(w)) && g.has_edge(e.v, static_cast<Node>(w))) return true;
  return false;
}

}  // namespace

TEST(Graph, PrismIsCubicWithTriangles) {
  const Graph g = Graph::build(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
  EXPECT_EQ(g.node_count(), 6u);
  EXPECT_EQ(g.edge_count(), 9u);
  for (Node v = 0; v < 6; ++v) EXPECT_EQ(g.degree(v), 3u);
  EXPECT_TRUE(has_triangle(g));
}

TEST(Graph, SingleNode) {
  const Graph g = Graph::build(1, {});
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.degree(0), 0u);
}

TEST(Graph, RejectsBadInput) {
  EXPECT_EQ(code_of([] { Graph::build(3, {{0, 1}, {0, 1}}); }), ErrorCode::kDuplicateEdge);
  EXPECT_EQ(code_of([] { Graph::build(3, {{0, 1}, {1, 0}}); }), ErrorCode::kDuplicateEdge);
  EXPECT_EQ(code_of([] { Graph::build(3, {{1, 1}}); }), ErrorCode::kSelfLoop);
  EXPECT_EQ(code_of([] { Graph::build(3, {{0, 3}}); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([] { Graph::build(3, {{-1, 2}}); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([] {
              std::vector<Edge> e{{0, 1}};
              Graph::build(3, e, {1, 2});
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(to_string(ErrorCode::kDuplicateEdge), "DUPLICATE_EDGE");
}

TEST(Graph, CanonicalAndTyped) {
  std::vector<Edge> e{{2, 1}, {1, 0}};
  const Graph g = Graph::build(3, e, {5, 6, 7}, {10, 20});
  ASSERT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2}));
  EXPECT_EQ(g.edge_type(1, 0), 20);
  EXPECT_EQ(g.edge_type(2, 1), 10);
  EXPECT_EQ(g.label(2), 7);
  const std::vector<Node> perm{2, 0, 1};
  const Graph r = g.relabeled(perm);
  EXPECT_EQ(r.label(2), 5);
  EXPECT_EQ(r.edge_type(2, 0), 20);
  const std::vector<Node> keep{1, 2};
  const Graph sub = g.induced(keep);
  EXPECT_EQ(sub.node_count(), 2u);
  EXPECT_EQ(sub.edge_count(), 1u);
  EXPECT_EQ(sub.edge_type(0, 1), 10);
  EXPECT_EQ(sub.label(0), 6);
}

TEST(Graph, DisjointUnion) {
  const Graph c3 = catalog("cycle(3)");
  const auto u = disjoint_union(c3, c3);
  EXPECT_EQ(u.graph.node_count(), 6u);
  EXPECT_EQ(u.offset, 3);
  EXPECT_EQ(connected_components(u.graph).size(), 2u);

  const Graph g = catalog("prism");
  EXPECT_EQ(disjoint_union(g, Graph{}).graph, g);

  const auto pk = disjoint_union(catalog("prism"), catalog("k33"));
  EXPECT_EQ(pk.graph.node_count(), 12u);
  EXPECT_EQ(pk.graph.edge_count(), 18u);
  EXPECT_EQ(connected_components(pk.graph).size(), 2u);
  EXPECT_FALSE(pk.graph.has_edge(0, 6));
}

TEST(Graph, DistanceExamples) {
  const auto c6 = all_pairs_shortest_distance(catalog("cycle(6)"));
  EXPECT_EQ(c6.at(0, 3), 3);
  const auto k33 = all_pairs_shortest_distance(catalog("k33"));
  EXPECT_EQ(k33.at(0, 1), 2);
  EXPECT_EQ(k33.at(0, 4), 1);
  const auto tt = all_pairs_shortest_distance(catalog("two_triangles"));
  EXPECT_FALSE(tt.reachable(0, 3));
  EXPECT_EQ(tt.at(0, 3), DistanceMatrix::kUnreachable);
}

TEST(Graph, DistanceMatchesFloydWarshallAndTriangleInequality) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const Graph g = oracle::random_graph(s, 25);
    const auto d = all_pairs_shortest_distance(g);
    const auto f = oracle::floyd_warshall(g);
    const std::size_t n = g.node_count();
    for (std::size_t u = 0; u < n; ++u) {
      EXPECT_EQ(d.at(static_cast<Node>(u), static_cast<Node>(u)), 0);
      for (std::size_t v = 0; v < n; ++v) {
        const int got = d.at(static_cast<Node>(u), static_cast<Node>(v));
        const int want = f[u][v] >= oracle::kInf ? DistanceMatrix::kUnreachable : f[u][v];
        ASSERT_EQ(got, want);
        ASSERT_EQ(got, d.at(static_cast<Node>(v), static_cast<Node>(u)));
        for (std::size_t w = 0; w < n; ++w) {
          const int a = d.at(static_cast<Node>(u), static_cast<Node>(w));
          const int b = d.at(static_cast<Node>(w), static_cast<Node>(v));
          if (a >= 0 && b >= 0) {
            ASSERT_GE(got, 0);
            ASSERT_LE(got, a + b);
          }
        }
      }
    }
  }
}

TEST(Graph, WalkCountExamples) {
  const Graph c6 = catalog("cycle(6)");
  const auto w0 = walk_counts(c6, 0);
  for (Node u = 0; u < 6; ++u)
    for (Node v = 0; v < 6; ++v) EXPECT_EQ(w0.at(u, v), u == v ? 1u : 0u);
  const auto w2 = walk_counts(c6, 2);
  EXPECT_EQ(w2.at(0, 1), 0u);
  EXPECT_EQ(w2.at(0, 0), 2u);
  EXPECT_EQ(walk_counts(catalog("k33"), 2).at(0, 1), 3u);
  EXPECT_THROW(walk_counts(c6, -1), Error);
}

TEST(Graph, WalkCountRecursionMatchesMatrixPowers) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Graph g = oracle::random_graph(100 + s, 15);
    const auto a = oracle::adjacency(g);
    for (int k = 0; k <= 6; ++k) {
      const auto w = walk_counts(g, k);
      const auto next = walk_counts(g, k + 1);
      const auto power = oracle::matrix_power(g, k);
      const std::size_t n = g.node_count();
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          ASSERT_EQ(w.at(static_cast<Node>(u), static_cast<Node>(v)), power[u][v]);
          ASSERT_EQ(w.at(static_cast<Node>(u), static_cast<Node>(v)), w.at(static_cast<Node>(v), static_cast<Node>(u)));
          std::uint64_t product = 0;
          for (std::size_t m = 0; m < n; ++m) product += w.at(static_cast<Node>(u), static_cast<Node>(m)) * a[m][v];
          ASSERT_EQ(next.at(static_cast<Node>(u), static_cast<Node>(v)), product);
        }
      }
    }
  }
}

TEST(Graph, WalkCountOverflowIsReported) {
  EXPECT_EQ(code_of([] { walk_counts(catalog("complete(10)"), 40); }), ErrorCode::kOverflow);
}

TEST(Graph, IsomorphismExamples) {
  const Graph c6 = catalog("cycle(6)");
  const std::vector<Node> perm{3, 5, 0, 2, 4, 1};
  EXPECT_TRUE(is_isomorphic_small(c6, c6.relabeled(perm)));
  EXPECT_FALSE(is_isomorphic_small(catalog("prism"), catalog("k33")));
  EXPECT_EQ(code_of([] { is_isomorphic_small(catalog("cycle(11)"), catalog("cycle(11)")); }), ErrorCode::kTooLarge);
}

TEST(Graph, IsomorphismAgreesWithBruteForce) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    Rng rng(s);
    const std::size_t n = 1 + uniform_below(rng, 7);
    const double p = uniform_unit(rng);
    const Graph a = random_er(n, p, rng());
    const Graph b = s % 3 == 0 ? a.relabeled(oracle::random_permutation(n, s)) : random_er(n, p, rng());
    ASSERT_EQ(is_isomorphic_small(a, b), oracle::isomorphic_brute(a, b)) << "seed " << s;
  }
}

TEST(Graph, IsomorphismRespectsLabels) {
  std::vector<Edge> e{{0, 1}, {1, 2}};
  const Graph a = Graph::build(3, e, {1, 2, 1});
  const Graph b = Graph::build(3, e, {2, 1, 1});
  EXPECT_FALSE(is_isomorphic_small(a, b));
  const std::vector<Node> perm{2, 1, 0};
  EXPECT_TRUE(is_isomorphic_small(a, a.relabeled(perm)));
}

TEST(Graph, Components) {
  EXPECT_EQ(connected_components(catalog("cycle(6)")).size(), 1u);
  EXPECT_EQ(connected_components(catalog("two_triangles")).size(), 2u);
  EXPECT_EQ(connected_components(Graph::build(5, {})).size(), 5u);
  EXPECT_TRUE(is_connected(catalog("prism")));
}
