// Copyright 2026 The bireconf Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "bireconf/perturbation.hpp"

using namespace bireconf;

namespace {

// Owner of each vertex of h, from the group sizes alone.
std::vector<Vertex> owners(const Graph& g, const VertexSubset& s_star) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.n(); ++v) {
    int copies = s_star.contains(v) ? 2 * g.n() : 2 * g.n() + 1;
    for (int i = 0; i < copies; ++i) out.push_back(v);
  }
  return out;
}

Graph random_bipartite(std::mt19937& rng, int a, int b, double p) {
  std::vector<Edge> es;
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      if (coin(rng)) es.emplace_back(i, a + j);
  return Graph(a + b, es);
}

void expect_all_pass(const PerturbationReport& r) {
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " witness " << c.witness;
}

}  // namespace

TEST(Build, SingleEdge) {
  auto p = build(graphs::complete(2), VertexSubset(2, {0}), 1);
  EXPECT_EQ(p.group_size(0), 4);
  EXPECT_EQ(p.group_size(1), 5);
  EXPECT_EQ(p.mu, 7);
  EXPECT_EQ(p.h.n(), 9);
  EXPECT_EQ(p.h.edge_count(), 20U);
  EXPECT_EQ(p.group_of[0], VertexSubset(9, {0, 1, 2, 3}));
}

TEST(Build, SingleVertex) {
  auto p = build(Graph(1), VertexSubset(1), 1);
  EXPECT_EQ(p.group_size(0), 3);
  EXPECT_EQ(p.h.edge_count(), 0U);
  EXPECT_EQ(p.mu, 3);
}

TEST(Build, PathMatchesNeighborhoodOracle) {
  Graph p3 = graphs::path(3);
  VertexSubset center(3, {1});
  auto p = build(p3, center, 1);
  auto own = owners(p3, center);
  ASSERT_EQ(static_cast<int>(own.size()), p.h.n());
  std::size_t edges = 0;
  for (Vertex a = 0; a < p.h.n(); ++a)
    for (Vertex b = a + 1; b < p.h.n(); ++b) {
      bool want = p3.adjacent(own[static_cast<std::size_t>(a)], own[static_cast<std::size_t>(b)]);
      EXPECT_EQ(p.h.adjacent(a, b), want);
      edges += want ? 1 : 0;
    }
  EXPECT_EQ(edges, 84U);
  EXPECT_EQ(p.h.edge_count(), edges);
  EXPECT_TRUE(is_bipartite(p.h));
  EXPECT_EQ(p.mu, 2 * 3 * 1 + 2 * 3 - 1);
}

TEST(Build, InvariantsOnRandomGraphs) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_bipartite(rng, 1 + trial % 3, 1 + trial % 4, 0.5);
    const int n = g.n();
    VertexSubset s = bipartition(g).left;
    if (!g.is_vertex_cover(s)) continue;
    auto p = build(g, s, n);
    EXPECT_LE(p.h.n(), (2 * n + 1) * n);
    EXPECT_EQ(p.mu, 2 * n * n + 2 * n - 1);
    EXPECT_TRUE(is_bipartite(p.h));
    auto own = owners(g, s);
    for (auto [a, b] : p.h.edges()) EXPECT_TRUE(g.adjacent(own[static_cast<std::size_t>(a)], own[static_cast<std::size_t>(b)]));
  }
}

TEST(Build, RejectsNonCover) {
  try {
    build(graphs::path(3), VertexSubset(3, {0}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotACover);
  }
}

TEST(Maps, ForwardAndInverse) {
  auto p = build(graphs::complete(2), VertexSubset(2, {0}), 1);
  EXPECT_TRUE(f_forward(p, VertexSubset(2)).empty());
  EXPECT_EQ(f_forward(p, VertexSubset(2, {0})), p.group_of[0]);
  for (std::uint64_t m = 0; m < 4; ++m) {
    VertexSubset q = VertexSubset::from_mask(2, m);
    EXPECT_EQ(f_inverse(p, f_forward(p, q)), q);
  }
  VertexSubset most = f_forward(p, VertexSubset(2, {0, 1}));
  most.erase(6);
  EXPECT_EQ(f_inverse(p, most), VertexSubset(2, {0}));
}

// Every subset of the 9-vertex perturbation of K2, checked concretely.
TEST(Maps, InverseTransferExhaustive) {
  auto p = build(graphs::complete(2), VertexSubset(2, {1}), 1);
  const int two_n = 4;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.h.n()); ++m) {
    VertexSubset qh = VertexSubset::from_mask(p.h.n(), m);
    if (!p.h.is_vertex_cover(qh)) continue;
    VertexSubset q = f_inverse(p, qh);
    EXPECT_TRUE(p.base.is_vertex_cover(q));
    EXPECT_LE(q.size(), qh.size() / two_n);
    if (qh.size() <= p.mu) {
      EXPECT_LE(q.size(), p.k);
    }
  }
}

// Count-space distances agree with plain search on h between lowest-twin states.
TEST(CountSpace, DistancesMatchConcreteSearch) {
  Graph p3 = graphs::path(3);
  auto p = build(p3, VertexSubset(3, {1}), 2);
  CountSpace space = count_space(p);
  std::vector<int> src{0, 6, 0};
  CountSearch cs = count_bfs(space, space.encode(src), std::nullopt);
  StateSpaceReport rep = bfs(p.h, Model::tar(p.mu), canonical_state(p, src), std::nullopt);
  std::size_t compared = 0;
  for (std::size_t i = 0; i < cs.order.size(); ++i) {
    auto c = space.decode(cs.order[i]);
    auto d = rep.distance_to(canonical_state(p, c));
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(*d, cs.dist[i]);
    ++compared;
  }
  EXPECT_GT(compared, 10U);
}

TEST(CheckLemmas, SingleEdge) {
  auto p = build(graphs::complete(2), VertexSubset(2, {0}), 1);
  auto r = check_lemmas(p);
  expect_all_pass(r);
  EXPECT_TRUE(r.s_star_is_local_minimum);
  EXPECT_TRUE(r.at("unique_minimum").applicable);
  EXPECT_GT(r.at("distance_sandwich").checked, 0U);
}

TEST(CheckLemmas, EdgelessDistancesAreSymmetricDifferences) {
  Graph g(3);
  auto p = build(g, VertexSubset(3), 2);
  expect_all_pass(check_lemmas(p, 16));
  VertexSubset s(3, {0}), t(3, {1, 2});
  EXPECT_EQ(shortest_distance(g, Model::tar(2), s, t), 3);
  CountSpace space = count_space(p);
  auto image = [&](const VertexSubset& q) {
    std::vector<int> c(3, 0);
    q.for_each([&](Vertex v) { c[static_cast<std::size_t>(v)] = p.group_size(v); });
    return space.encode(c);
  };
  CountSearch cs = count_bfs(space, image(s), image(t));
  ASSERT_TRUE(cs.target_id.has_value());
  EXPECT_EQ(cs.dist[static_cast<std::size_t>(*cs.target_id)], (f_forward(p, s) ^ f_forward(p, t)).size());
}

TEST(CheckLemmas, PathAnchoredAtCenter) {
  auto p = build(graphs::path(3), VertexSubset(3, {1}), 2);
  auto r = check_lemmas(p, 16);
  expect_all_pass(r);
  EXPECT_TRUE(r.s_star_is_local_minimum);
  EXPECT_GT(r.at("unique_minimum").checked, 1U);
}

TEST(CheckLemmas, NonMinimalAnchorSkipsUniqueness) {
  // At k = 3 the pair of leaves reaches the center alone.
  auto p = build(graphs::path(3), VertexSubset(3, {0, 2}), 3);
  auto r = check_lemmas(p);
  EXPECT_FALSE(r.s_star_is_local_minimum);
  EXPECT_FALSE(r.at("unique_minimum").applicable);
  expect_all_pass(r);
}

TEST(CheckLemmas, AnchorLargerThanCapacity) {
  auto p = build(graphs::path(3), VertexSubset(3, {0, 2}), 1);
  try {
    check_lemmas(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapacityExceeded);
  }
}

TEST(CheckLemmas, RandomBipartiteInstances) {
  std::mt19937 rng(23);
  int anchored = 0;
  for (int trial = 0; trial < 24; ++trial) {
    Graph g = random_bipartite(rng, 1 + trial % 2, 1 + trial % 3, 0.6);
    int k = 1 + trial % g.n();
    ComponentLabels lab = label_components(g, Model::tar(k));
    if (lab.states.empty()) continue;
    // Smallest state of a random component.
    int comp = lab.label[rng() % lab.label.size()];
    VertexSubset best;
    bool have = false;
    for (std::size_t i = 0; i < lab.states.size(); ++i)
      if (lab.label[i] == comp && (!have || lab.states[i].size() < best.size())) {
        best = lab.states[i];
        have = true;
      }
    auto r = check_lemmas(build(g, best, k), 6, 4'000'000, static_cast<unsigned>(trial));
    expect_all_pass(r);
    EXPECT_TRUE(r.s_star_is_local_minimum);
    ++anchored;
  }
  EXPECT_GT(anchored, 10);
}
