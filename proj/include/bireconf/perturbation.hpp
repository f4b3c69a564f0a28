/*
 * Copyright 2026 The bireconf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "bireconf/errors.hpp"
#include "bireconf/graph.hpp"
#include "bireconf/reconf.hpp"

namespace bireconf {

/// Blow-up of a base graph: every vertex becomes an independent group of twins.
struct Perturbation {
  Graph h;
  int mu = 0;
  std::vector<VertexSubset> group_of;  // base vertex -> its twins in h
  Graph base;
  VertexSubset s_star;
  int k = 0;

  [[nodiscard]] int group_size(Vertex v) const { return group_of[static_cast<std::size_t>(v)].size(); }
};

/**
 * Copies of v: 2n when v is in s_star, 2n + 1 otherwise, numbered
 * contiguously in base order with the lowest index standing for v itself.
 * mu = 2nk + 2n - 1.
 */
inline Perturbation build(const Graph& g, const VertexSubset& s_star, int k) {
  if (s_star.capacity() != g.n() || !g.is_vertex_cover(s_star))
    throw Error(ErrorCode::NotACover, "anchor is not a vertex cover of the base graph");
  const int n = g.n();
  std::vector<int> first(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 0; v < n; ++v)
    first[static_cast<std::size_t>(v) + 1] = first[static_cast<std::size_t>(v)] + (s_star.contains(v) ? 2 * n : 2 * n + 1);
  const int total = first.back();
  std::vector<Edge> es;
  for (auto [u, v] : g.edges())
    for (int a = first[static_cast<std::size_t>(u)]; a < first[static_cast<std::size_t>(u) + 1]; ++a)
      for (int b = first[static_cast<std::size_t>(v)]; b < first[static_cast<std::size_t>(v) + 1]; ++b)
        es.emplace_back(a, b);
  Perturbation p{Graph(total, es), 2 * n * k + 2 * n - 1, {}, g, s_star, k};
  for (Vertex v = 0; v < n; ++v) {
    VertexSubset grp(total);
    for (int a = first[static_cast<std::size_t>(v)]; a < first[static_cast<std::size_t>(v) + 1]; ++a) grp.insert(a);
    p.group_of.push_back(std::move(grp));
  }
  return p;
}

inline VertexSubset f_forward(const Perturbation& p, const VertexSubset& q) {
  VertexSubset out(p.h.n());
  q.for_each([&](Vertex v) { out |= p.group_of[static_cast<std::size_t>(v)]; });
  return out;
}

/// Base vertices whose whole group lies in qh.
inline VertexSubset f_inverse(const Perturbation& p, const VertexSubset& qh) {
  VertexSubset out(p.base.n());
  for (Vertex v = 0; v < p.base.n(); ++v)
    if (p.group_of[static_cast<std::size_t>(v)].is_subset_of(qh)) out.insert(v);
  return out;
}

/// TAR states of (h, mu) up to twin symmetry: one count per base vertex.
inline CountSpace count_space(const Perturbation& p) {
  std::vector<int> sizes;
  for (Vertex v = 0; v < p.base.n(); ++v) sizes.push_back(p.group_size(v));
  std::vector<std::pair<int, int>> ges;
  for (auto [u, v] : p.base.edges()) ges.emplace_back(u, v);
  return CountSpace(sizes, ges, p.mu);
}

/// Concrete state with the given counts, taking the lowest-numbered twins of each group.
inline VertexSubset canonical_state(const Perturbation& p, const std::vector<int>& counts) {
  VertexSubset out(p.h.n());
  for (Vertex v = 0; v < p.base.n(); ++v) {
    int left = counts[static_cast<std::size_t>(v)];
    p.group_of[static_cast<std::size_t>(v)].for_each([&](Vertex x) {
      if (left-- > 0) out.insert(x);
    });
  }
  return out;
}

struct LemmaCheck {
  std::string name;
  bool applicable = true;
  bool pass = true;
  std::size_t checked = 0;
  std::string witness;  // first counterexample, empty when passing
};

struct PerturbationReport {
  std::vector<LemmaCheck> checks;
  bool s_star_is_local_minimum = false;

  [[nodiscard]] bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.pass; });
  }
  [[nodiscard]] const LemmaCheck& at(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw Error(ErrorCode::PreconditionFailed, "no check named " + name);
  }
};

namespace detail {

inline std::string counts_text(const std::vector<int>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

inline void fail(LemmaCheck& c, const std::string& w) {
  if (c.pass) c.witness = w;
  c.pass = false;
}

}  // namespace detail

/**
 * Executes the perturbation lemmas on one instance. Cover transfer, size
 * thresholds and component correspondence are checked on every state; the
 * distance bounds on `samples` BFS sources per side (all targets in each
 * source's component). States of h are handled as twin counts; distances
 * between states that take the lowest-numbered twins equal count distances.
 * Throws CapacityExceeded when |s_star| > k and BudgetExceeded when the
 * count space of h has more than `budget` vectors.
 */
inline PerturbationReport check_lemmas(const Perturbation& p, std::size_t samples = 8,
                                       std::size_t budget = 4'000'000, unsigned seed = 1) {
  const Graph& g = p.base;
  const int n = g.n();
  if (p.s_star.size() > p.k) throw Error(ErrorCode::CapacityExceeded, "anchor is larger than k");
  if (n > 20) throw Error(ErrorCode::TooLarge, "lemma checks need a base graph with at most 20 vertices");
  const CountSpace space = count_space(p);
  std::uint64_t keys = 1;
  for (Vertex v = 0; v < n; ++v) {
    keys *= static_cast<std::uint64_t>(p.group_size(v) + 1);
    if (keys > budget) throw BudgetExceeded(static_cast<std::size_t>(keys), budget);
  }
  const Model mg = Model::tar(p.k);
  const int two_n = 2 * n;
  const int slack = 2 * p.h.n();

  auto total = [](const std::vector<int>& c) {
    int t = 0;
    for (int x : c) t += x;
    return t;
  };
  auto image = [&](const VertexSubset& q) {
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    q.for_each([&](Vertex v) { c[static_cast<std::size_t>(v)] = p.group_size(v); });
    return c;
  };
  auto preimage = [&](const std::vector<int>& c) {
    return VertexSubset::from_mask(n, space.full_mask(c));
  };

  PerturbationReport rep;
  auto named = [](const char* name) {
    LemmaCheck c;
    c.name = name;
    return c;
  };
  LemmaCheck transfer = named("cover_transfer"), inverse = named("inverse_transfer"),
             thresholds = named("size_thresholds");

  // Every subset of the base graph.
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    VertexSubset q = VertexSubset::from_mask(n, m);
    if (!g.is_vertex_cover(q)) continue;
    VertexSubset fq = f_forward(p, q);
    ++transfer.checked;
    ++thresholds.checked;
    const int sz = fq.size(), qs = q.size();
    if (!p.h.is_vertex_cover(fq) || sz < two_n * qs || sz > (two_n + 1) * qs) detail::fail(transfer, q.to_string());
    if ((qs <= p.k && !(sz < p.mu)) || (qs >= p.k + 1 && !(sz > p.mu))) detail::fail(thresholds, q.to_string());
  }
  // Every count vector of h.
  for (std::uint64_t key = 0; key < keys; ++key) {
    std::vector<int> c = space.decode(key);
    if (!space.is_cover(c)) continue;
    ++inverse.checked;
    VertexSubset q = preimage(c);
    const int t = total(c);
    if (!g.is_vertex_cover(q) || q.size() > t / two_n) detail::fail(inverse, detail::counts_text(c));
    if (t <= p.mu) {
      ++thresholds.checked;
      if (q.size() > p.k) detail::fail(thresholds, detail::counts_text(c));
    }
  }

  // Component labels on both sides.
  ComponentLabels lg = label_components(g, mg, budget);
  std::vector<int> lh(static_cast<std::size_t>(keys), -1);
  int h_components = 0;
  std::vector<std::uint64_t> queue;
  for (std::uint64_t key = 0; key < keys; ++key) {
    if (lh[key] >= 0 || !space.is_state(space.decode(key))) continue;
    const int c = h_components++;
    lh[key] = c;
    queue.assign(1, key);
    for (std::size_t head = 0; head < queue.size(); ++head)
      space.for_each_successor(queue[head], [&](std::uint64_t nxt) {
        if (lh[nxt] < 0) {
          lh[nxt] = c;
          queue.push_back(nxt);
        }
      });
  }
  LemmaCheck comps = named("component_correspondence");
  {
    std::vector<int> g_to_h(static_cast<std::size_t>(lg.count), -1), h_to_g(static_cast<std::size_t>(h_components), -1);
    auto link = [&](int a, int b, const std::string& w) {
      ++comps.checked;
      int& x = g_to_h[static_cast<std::size_t>(a)];
      int& y = h_to_g[static_cast<std::size_t>(b)];
      if ((x >= 0 && x != b) || (y >= 0 && y != a)) detail::fail(comps, w);
      x = b;
      y = a;
    };
    for (std::size_t i = 0; i < lg.states.size(); ++i) {
      int b = lh[space.encode(image(lg.states[i]))];
      if (b < 0) detail::fail(comps, lg.states[i].to_string());
      else link(lg.label[i], b, lg.states[i].to_string());
    }
    for (std::uint64_t key = 0; key < keys; ++key) {
      if (lh[key] < 0) continue;
      std::vector<int> c = space.decode(key);
      int a = lg.label_of(preimage(c));
      if (a < 0) detail::fail(comps, detail::counts_text(c));
      else link(a, lh[key], detail::counts_text(c));
    }
  }

  // Distance bounds from sampled sources.
  std::mt19937 rng(seed);
  auto pick = [&](std::size_t count, std::size_t pool) {
    std::vector<std::size_t> idx(pool);
    for (std::size_t i = 0; i < pool; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(std::min(count, pool));
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  LemmaCheck forward_dist = named("distance_sandwich"), backward_dist = named("inverse_distance");
  for (std::size_t i : pick(samples, lg.states.size())) {
    const VertexSubset& s = lg.states[i];
    StateSpaceReport rg = bfs(g, mg, s, std::nullopt, {.budget = budget});
    CountSearch ch = count_bfs(space, space.encode(image(s)), std::nullopt, {.budget = budget});
    for (std::size_t j = 0; j < rg.states.size(); ++j) {
      ++forward_dist.checked;
      const int dg = rg.distance[j];
      int id = ch.visited.find(space.encode(image(rg.states[j])));
      if (id < 0) {
        detail::fail(forward_dist, s.to_string() + " -> " + rg.states[j].to_string());
        continue;
      }
      const int dh = ch.dist[static_cast<std::size_t>(id)];
      if (dg > dh || dh > (two_n + 1) * dg) detail::fail(forward_dist, s.to_string() + " -> " + rg.states[j].to_string());
    }
  }
  std::vector<std::uint64_t> h_states;
  for (std::uint64_t key = 0; key < keys; ++key)
    if (lh[key] >= 0) h_states.push_back(key);
  for (std::size_t i : pick(samples, h_states.size())) {
    const std::uint64_t src = h_states[i];
    CountSearch ch = count_bfs(space, src, std::nullopt, {.budget = budget});
    StateSpaceReport rg = bfs(g, mg, preimage(space.decode(src)), std::nullopt, {.budget = budget});
    for (std::size_t j = 0; j < ch.order.size(); ++j) {
      ++backward_dist.checked;
      auto dg = rg.distance_to(preimage(space.decode(ch.order[j])));
      const std::string w = detail::counts_text(space.decode(src)) + " -> " + detail::counts_text(space.decode(ch.order[j]));
      if (!dg || ch.dist[j] > (two_n + 1) * *dg + slack) detail::fail(backward_dist, w);
    }
  }

  // Unique minimum of the anchor's component, when the anchor is a minimum of its own.
  LemmaCheck unique = named("unique_minimum");
  {
    StateSpaceReport rg = bfs(g, mg, p.s_star, std::nullopt, {.budget = budget});
    int smallest = std::numeric_limits<int>::max();
    for (const auto& s : rg.states) smallest = std::min(smallest, s.size());
    rep.s_star_is_local_minimum = smallest == p.s_star.size();
    unique.applicable = rep.s_star_is_local_minimum;
    if (unique.applicable) {
      const std::uint64_t anchor = space.encode(image(p.s_star));
      const int anchor_size = total(space.decode(anchor));
      for (std::uint64_t key : h_states) {
        if (lh[key] != lh[anchor]) continue;
        ++unique.checked;
        std::vector<int> c = space.decode(key);
        if (key != anchor && total(c) <= anchor_size) detail::fail(unique, detail::counts_text(c));
      }
    }
  }

  rep.checks = {transfer, inverse, thresholds, comps, forward_dist, backward_dist, unique};
  return rep;
}

}  // namespace bireconf
