// Copyright 2026 The bireconf Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bireconf/graph.hpp"

using namespace bireconf;

namespace {

std::set<std::pair<int, int>> edge_set(const Graph& g) {
  auto es = g.edges();
  return {es.begin(), es.end()};
}

Graph random_graph(std::mt19937& rng, int n, double p) {
  std::vector<Edge> es;
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) es.emplace_back(i, j);
  return Graph(n, es);
}

}  // namespace

TEST(Graph, RejectsLoopsAndParallelEdges) {
  EXPECT_THROW(Graph(2, {{0, 0}}), Error);
  EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(Graph(2, {{0, 2}}), Error);
}

TEST(Graph, AdjacencyIsSymmetricAndSorted) {
  Graph g(4, {{3, 0}, {1, 0}, {2, 3}});
  EXPECT_EQ(std::vector<int>(g.neighbors(0).begin(), g.neighbors(0).end()), (std::vector<int>{1, 3}));
  EXPECT_TRUE(g.adjacent(3, 2));
  EXPECT_EQ(g.edge_count(), 3);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {0, 3}, {2, 3}}));
}

TEST(Bipartition, SingleEdge) {
  Bipartition bp = bipartition(graphs::path(2));
  EXPECT_EQ(bp.left.members(), std::vector<int>{0});
  EXPECT_EQ(bp.right.members(), std::vector<int>{1});
}

TEST(Bipartition, TriangleReportsOddCycle) {
  try {
    bipartition(graphs::complete(3));
    FAIL();
  } catch (const OddCycleError& e) {
    EXPECT_EQ(e.code(), ErrorCode::OddCycle);
    EXPECT_EQ(e.cycle().size(), 3U);
  }
}

TEST(Bipartition, IsolatedVerticesGoLeft) {
  Graph g(4, {{1, 2}});
  Bipartition bp = bipartition(g);
  EXPECT_TRUE(bp.left.contains(0));
  EXPECT_TRUE(bp.left.contains(3));
}

TEST(Bipartition, OddCycleWitnessIsACycleOfOddLength) {
  std::mt19937 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = random_graph(rng, 3 + trial % 9, 0.3);
    try {
      Bipartition bp = bipartition(g);
      EXPECT_FALSE(bp.left.intersects(bp.right));
      EXPECT_EQ((bp.left | bp.right).size(), g.n());
      for (auto [u, v] : g.edges()) EXPECT_NE(bp.left.contains(u), bp.left.contains(v));
    } catch (const OddCycleError& e) {
      const auto& c = e.cycle();
      ASSERT_EQ(c.size() % 2, 1U);
      std::set<int> distinct(c.begin(), c.end());
      EXPECT_EQ(distinct.size(), c.size());
      for (std::size_t i = 0; i < c.size(); ++i) EXPECT_TRUE(g.adjacent(c[i], c[(i + 1) % c.size()]));
      ++checked;
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(Cliquify, Examples) {
  Graph two(2);
  EXPECT_EQ(cliquify(two, VertexSubset(2, {0, 1})), graphs::complete(2));
  EXPECT_EQ(cliquify(graphs::complete(2), VertexSubset(2, {0, 1})), graphs::complete(2));
  Graph c4 = graphs::cycle(4);
  Bipartition bp = bipartition(c4);
  Graph k = cliquify(cliquify(c4, bp.left), bp.right);
  EXPECT_EQ(k.edge_count(), 6);
  EXPECT_EQ(k, graphs::complete(4));
}

TEST(Cliquify, IsIdempotentAndAddsOnlyInsidePairs) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = random_graph(rng, 8, 0.3);
    VertexSubset q(8);
    for (int v = 0; v < 8; ++v)
      if (rng() % 2) q.insert(v);
    Graph h = cliquify(g, q);
    EXPECT_EQ(cliquify(h, q), h);
    EXPECT_TRUE(h.is_clique(q));
    for (auto [u, v] : h.edges())
      EXPECT_TRUE(g.adjacent(u, v) || (q.contains(u) && q.contains(v)));
  }
}

TEST(Duplicate, Examples) {
  Graph d = duplicate(graphs::complete(2), 1, 1);
  EXPECT_EQ(d.n(), 3);
  EXPECT_EQ(edge_set(d), (std::set<std::pair<int, int>>{{0, 1}, {0, 2}}));
  EXPECT_EQ(duplicate(graphs::path(3), 1, 0), graphs::path(3));
  // Star center 0 with leaves 1..3; two center copies give K_{3,3}.
  Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  Graph k33 = duplicate(star, 0, 2);
  EXPECT_EQ(k33.edge_count(), 9);
  for (int c : {0, 4, 5})
    for (int l : {1, 2, 3}) EXPECT_TRUE(k33.adjacent(c, l));
}

TEST(Duplicate, PreservesBipartiteness) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = graphs::bipartite_from_mask(3, 4, rng() & ((1U << 12) - 1));
    Graph h = duplicate(g, static_cast<int>(rng() % 7), 3);
    EXPECT_TRUE(is_bipartite(h));
  }
}

TEST(TwinPartition, Examples) {
  TwinPartition kab = twin_partition(graphs::complete_bipartite(3, 4));
  ASSERT_EQ(kab.groups.size(), 2U);
  EXPECT_EQ(kab.groups[0].size(), 3);
  EXPECT_EQ(kab.groups[1].size(), 4);
  EXPECT_EQ(twin_partition(graphs::path(4)).groups.size(), 4U);
}

TEST(TwinPartition, QuotientExpansionReproducesGraph) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = random_graph(rng, 9, 0.25);
    TwinPartition tp = twin_partition(g);
    std::vector<Vertex> rep;
    for (const auto& grp : tp.groups) rep.push_back(grp.first());
    std::vector<Edge> es;
    for (int u = 0; u < g.n(); ++u)
      for (int v = u + 1; v < g.n(); ++v)
        if (g.adjacent(rep[static_cast<std::size_t>(tp.group_of[static_cast<std::size_t>(u)])],
                       rep[static_cast<std::size_t>(tp.group_of[static_cast<std::size_t>(v)])]))
          es.emplace_back(u, v);
    EXPECT_EQ(Graph(g.n(), es), g);
    for (const auto& grp : tp.groups) EXPECT_TRUE(g.is_independent(grp));
  }
}

TEST(RemoveIsolated, Examples) {
  auto [h, map] = remove_isolated(Graph(3, {{0, 2}}));
  EXPECT_EQ(h, graphs::complete(2));
  EXPECT_EQ(map, (std::vector<int>{0, 2}));
  auto [e, emap] = remove_isolated(Graph(4));
  EXPECT_EQ(e.n(), 0);
  EXPECT_TRUE(emap.empty());
}

TEST(RemoveIsolated, KeepsExactlyPositiveDegreeVertices) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = graphs::disjoint_union(random_graph(rng, 7, 0.4), Graph(3));
    auto [h, map] = remove_isolated(g);
    for (int i = 0; i < h.n(); ++i) {
      EXPECT_GT(g.degree(map[static_cast<std::size_t>(i)]), 0);
      EXPECT_EQ(h.degree(i), g.degree(map[static_cast<std::size_t>(i)]));
    }
    int positive = 0;
    for (int v = 0; v < g.n(); ++v) positive += g.degree(v) > 0;
    EXPECT_EQ(h.n(), positive);
  }
}

TEST(GraphText, RoundTripIsBitExact) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = random_graph(rng, 1 + trial % 12, 0.4);
    std::string text = format_graph(g);
    Graph back = parse_graph(text);
    EXPECT_EQ(back, g);
    EXPECT_EQ(format_graph(back), text);
  }
}

TEST(GraphText, AcceptsCommentsAndRejectsGarbage) {
  Graph g = parse_graph("c hello\np 3 2\ne 0 1\nc mid\ne 2 1\n");
  EXPECT_EQ(g.edge_count(), 2);
  EXPECT_THROW(parse_graph("p 3 2\ne 0 1\n"), Error);
  EXPECT_THROW(parse_graph("e 0 1\n"), Error);
  EXPECT_THROW(parse_graph("p 3 1\nx 0 1\n"), Error);
  EXPECT_THROW(parse_graph("p 3 1\ne 0 1 2\n"), Error);
  EXPECT_THROW(parse_graph(""), Error);
}
