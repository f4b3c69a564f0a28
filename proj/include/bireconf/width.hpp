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
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bireconf/errors.hpp"
#include "bireconf/graph.hpp"

namespace bireconf {

inline constexpr int kWidthCap = 20;

struct PathDecomposition {
  std::vector<VertexSubset> bags;

  /// Largest bag size minus one; -1 when there are no vertices in any bag.
  [[nodiscard]] int width() const {
    int w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return w - 1;
  }
  friend bool operator==(const PathDecomposition&, const PathDecomposition&) = default;
};

enum class NiceOp { Introduce, Forget };

struct NiceStep {
  NiceOp op;
  Vertex v;
  friend bool operator==(const NiceStep&, const NiceStep&) = default;
};

/// Nice path decomposition as a step list over an implicit empty first bag.
struct NicePathDecomposition {
  int n = 0;
  std::vector<NiceStep> steps;

  /// bags()[0] is empty; bags()[i] is the bag after step i.
  [[nodiscard]] std::vector<VertexSubset> bags() const {
    std::vector<VertexSubset> out{VertexSubset(n)};
    VertexSubset cur(n);
    for (const auto& s : steps) {
      if (s.op == NiceOp::Introduce) cur.insert(s.v);
      else cur.erase(s.v);
      out.push_back(cur);
    }
    return out;
  }
  [[nodiscard]] PathDecomposition as_path_decomposition() const { return {bags()}; }
  [[nodiscard]] int width() const { return as_path_decomposition().width(); }
  friend bool operator==(const NicePathDecomposition&, const NicePathDecomposition&) = default;
};

enum class DecompositionProperty { P1, P2, P3, Nice };

inline const char* to_string(DecompositionProperty p) {
  switch (p) {
    case DecompositionProperty::P1: return "P1";
    case DecompositionProperty::P2: return "P2";
    case DecompositionProperty::P3: return "P3";
    case DecompositionProperty::Nice: return "nice";
  }
  return "?";
}

struct Violation {
  DecompositionProperty property;
  std::vector<Vertex> witness;  // uncovered vertex, uncovered edge, or split vertex
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Checks vertex coverage (P1), edge coverage (P2) and contiguity (P3).
inline std::vector<Violation> validate(const PathDecomposition& pd, const Graph& g) {
  std::vector<Violation> out;
  for (const auto& b : pd.bags)
    if (b.capacity() != g.n()) return {{DecompositionProperty::P1, {}}};
  VertexSubset seen(g.n());
  for (const auto& b : pd.bags) seen |= b;
  for (Vertex v = 0; v < g.n(); ++v)
    if (!seen.contains(v)) out.push_back({DecompositionProperty::P1, {v}});
  for (auto [u, v] : g.edges()) {
    bool covered = std::any_of(pd.bags.begin(), pd.bags.end(),
                               [&](const VertexSubset& b) { return b.contains(u) && b.contains(v); });
    if (!covered) out.push_back({DecompositionProperty::P2, {u, v}});
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    int runs = 0;
    bool prev = false;
    for (const auto& b : pd.bags) {
      bool in = b.contains(v);
      if (in && !prev) ++runs;
      prev = in;
    }
    if (runs > 1) out.push_back({DecompositionProperty::P3, {v}});
  }
  return out;
}

inline bool is_valid(const PathDecomposition& pd, const Graph& g) { return validate(pd, g).empty(); }

/// Validates a nice decomposition: each vertex introduced once, then forgotten once,
/// and the implied bag sequence is a path decomposition of g.
inline std::vector<Violation> validate(const NicePathDecomposition& npd, const Graph& g) {
  std::vector<Violation> out;
  if (npd.n != g.n()) return {{DecompositionProperty::Nice, {}}};
  std::vector<int> state(static_cast<std::size_t>(g.n()), 0);  // 0 fresh, 1 live, 2 forgotten
  for (const auto& s : npd.steps) {
    if (s.v < 0 || s.v >= g.n()) return {{DecompositionProperty::Nice, {s.v}}};
    int& st = state[static_cast<std::size_t>(s.v)];
    int want = s.op == NiceOp::Introduce ? 0 : 1;
    if (st != want) out.push_back({DecompositionProperty::Nice, {s.v}});
    st = want + 1;
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (state[static_cast<std::size_t>(v)] != 2) out.push_back({DecompositionProperty::Nice, {v}});
  auto rest = validate(npd.as_path_decomposition(), g);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

inline PathDecomposition reversed(const PathDecomposition& pd) {
  return {std::vector<VertexSubset>(pd.bags.rbegin(), pd.bags.rend())};
}

inline NicePathDecomposition reversed(const NicePathDecomposition& npd) {
  NicePathDecomposition out{npd.n, {}};
  for (auto it = npd.steps.rbegin(); it != npd.steps.rend(); ++it)
    out.steps.push_back({it->op == NiceOp::Introduce ? NiceOp::Forget : NiceOp::Introduce, it->v});
  return out;
}

/**
 * Converts bags to introduce/forget steps: between consecutive bags, forget
 * what leaves (ascending) and then introduce what enters (ascending). The
 * decomposition starts and ends with an empty bag, and every original bag
 * appears as some implied bag. Throws InvalidDecomposition on a split run.
 */
inline NicePathDecomposition to_nice(const PathDecomposition& pd, int n) {
  NicePathDecomposition out{n, {}};
  std::vector<int> state(static_cast<std::size_t>(n), 0);
  VertexSubset cur(n);
  auto move_to = [&](const VertexSubset& next) {
    (cur - next).for_each([&](Vertex v) {
      out.steps.push_back({NiceOp::Forget, v});
      state[static_cast<std::size_t>(v)] = 2;
    });
    (next - cur).for_each([&](Vertex v) {
      if (state[static_cast<std::size_t>(v)] != 0)
        throw Error(ErrorCode::InvalidDecomposition, "vertex " + std::to_string(v) + " occurs in two separate runs");
      out.steps.push_back({NiceOp::Introduce, v});
      state[static_cast<std::size_t>(v)] = 1;
    });
    cur = next;
  };
  for (const auto& b : pd.bags) {
    if (b.capacity() != n) throw Error(ErrorCode::InvalidDecomposition, "bag capacity differs from vertex count");
    move_to(b);
  }
  move_to(VertexSubset(n));
  return out;
}

inline NicePathDecomposition to_nice(const PathDecomposition& pd, const Graph& g) {
  auto v = validate(pd, g);
  if (!v.empty())
    throw Error(ErrorCode::InvalidDecomposition, std::string("decomposition violates ") + to_string(v.front().property));
  return to_nice(pd, g.n());
}

namespace detail {

inline std::vector<std::uint64_t> neighbor_masks(const Graph& g) {
  std::vector<std::uint64_t> m;
  for (Vertex v = 0; v < g.n(); ++v) m.push_back(g.neighbor_set(v).mask());
  return m;
}

inline void require_small(const Graph& g, int cap, const char* what) {
  if (g.n() > cap)
    throw Error(ErrorCode::TooLarge, std::string(what) + " supports at most " + std::to_string(cap) + " vertices");
}

}  // namespace detail

struct PathwidthResult {
  int width = -1;
  PathDecomposition decomposition;
  std::vector<Vertex> layout;  // optimal vertex order
};

/**
 * Exact pathwidth via vertex separation: f(S) = max(|boundary(S)|, min_v f(S - v)),
 * where boundary(S) is the set of vertices in S with a neighbor outside S.
 * The backtrace takes the smallest vertex achieving the optimum at each step.
 * Bag i is boundary(prefix before v_i) plus v_i.
 */
inline PathwidthResult pathwidth_exact(const Graph& g, int cap = kWidthCap) {
  detail::require_small(g, cap, "pathwidth_exact");
  const int n = g.n();
  PathwidthResult res;
  if (n == 0) return res;
  const auto nbr = detail::neighbor_masks(g);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  auto boundary = [&](std::uint64_t s) {
    std::uint64_t b = 0;
    for (std::uint64_t r = s; r; r &= r - 1) {
      int u = std::countr_zero(r);
      if (nbr[static_cast<std::size_t>(u)] & ~s) b |= std::uint64_t{1} << u;
    }
    return b;
  };
  std::vector<std::uint8_t> f(std::size_t{1} << n, 0);
  for (std::uint64_t s = 1; s <= full; ++s) {
    int best = 255;
    for (std::uint64_t r = s; r; r &= r - 1) best = std::min<int>(best, f[s & ~(r & (~r + 1))]);
    f[s] = static_cast<std::uint8_t>(std::max(best, std::popcount(boundary(s))));
  }
  // Backtrace from the full set: repeatedly peel the smallest last vertex that keeps the optimum.
  std::vector<Vertex> rev;
  std::uint64_t s = full;
  while (s) {
    const int target = f[s];
    const int bsz = std::popcount(boundary(s));
    for (std::uint64_t r = s; r; r &= r - 1) {
      int v = std::countr_zero(r);
      std::uint64_t prev = s & ~(std::uint64_t{1} << v);
      if (std::max<int>(f[prev], bsz) == target) {
        rev.push_back(v);
        s = prev;
        break;
      }
    }
  }
  res.layout.assign(rev.rbegin(), rev.rend());
  std::uint64_t prefix = 0;
  for (Vertex v : res.layout) {
    std::uint64_t bag = boundary(prefix) | (std::uint64_t{1} << v);
    res.decomposition.bags.push_back(VertexSubset::from_mask(n, bag));
    prefix |= std::uint64_t{1} << v;
  }
  res.width = f[full];
  return res;
}

/// Exact treewidth via the elimination-ordering recurrence
/// TW(S) = min_v max(TW(S - v), |Q(S - v, v)|), where Q(S, v) holds the
/// vertices outside S + v reachable from v through S.
inline int treewidth_exact(const Graph& g, int cap = kWidthCap) {
  detail::require_small(g, cap, "treewidth_exact");
  const int n = g.n();
  if (n == 0) return -1;
  const auto nbr = detail::neighbor_masks(g);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  auto q_size = [&](std::uint64_t s, int v) {
    std::uint64_t reach = std::uint64_t{1} << v, frontier = reach, out = 0;
    while (frontier) {
      int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint64_t nb = nbr[static_cast<std::size_t>(u)] & ~reach;
      reach |= nb;
      out |= nb & ~s;
      frontier |= nb & s;
    }
    return std::popcount(out & ~(std::uint64_t{1} << v));
  };
  std::vector<std::int8_t> tw(std::size_t{1} << n, 0);
  tw[0] = -1;
  for (std::uint64_t s = 1; s <= full; ++s) {
    int best = 127;
    for (std::uint64_t r = s; r; r &= r - 1) {
      int v = std::countr_zero(r);
      std::uint64_t prev = s & ~(std::uint64_t{1} << v);
      int cand = std::max<int>(tw[prev], q_size(prev, v));
      best = std::min(best, cand);
    }
    tw[s] = static_cast<std::int8_t>(best);
  }
  return tw[full];
}

/// Index of the first bag containing the clique c.
inline std::size_t clique_bag_check(const PathDecomposition& pd, const VertexSubset& c, const Graph& g) {
  if (!g.is_clique(c)) throw Error(ErrorCode::NotAClique, "vertex set does not induce a clique");
  for (std::size_t i = 0; i < pd.bags.size(); ++i)
    if (c.is_subset_of(pd.bags[i])) return i;
  throw Error(ErrorCode::NoBag, "no bag contains the clique; the decomposition is invalid");
}

/// Tree decomposition given as bags plus tree edges between bag indices.
struct TreeDecomposition {
  std::vector<VertexSubset> bags;
  std::vector<std::pair<int, int>> edges;

  [[nodiscard]] int width() const { return PathDecomposition{bags}.width(); }
};

/// Checks the tree shape, P1, P2, and that each vertex's bags induce a connected subtree.
inline std::vector<Violation> validate(const TreeDecomposition& td, const Graph& g) {
  const int t = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(t));
  for (auto [a, b] : td.edges) {
    if (a < 0 || b < 0 || a >= t || b >= t || a == b) return {{DecompositionProperty::P3, {}}};
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  auto connected_count = [&](const std::vector<bool>& keep) {
    std::vector<bool> seen(static_cast<std::size_t>(t), false);
    int comps = 0;
    for (int s = 0; s < t; ++s) {
      if (!keep[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
      ++comps;
      std::vector<int> stack{s};
      seen[static_cast<std::size_t>(s)] = true;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(u)])
          if (keep[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = true;
            stack.push_back(w);
          }
      }
    }
    return comps;
  };
  std::vector<Violation> out;
  if (t > 0 && (static_cast<int>(td.edges.size()) != t - 1 || connected_count(std::vector<bool>(static_cast<std::size_t>(t), true)) != 1))
    out.push_back({DecompositionProperty::P3, {}});
  for (auto v : validate(PathDecomposition{td.bags}, g))
    if (v.property != DecompositionProperty::P3) out.push_back(v);
  for (Vertex v = 0; v < g.n(); ++v) {
    std::vector<bool> keep(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) keep[static_cast<std::size_t>(i)] = td.bags[static_cast<std::size_t>(i)].contains(v);
    if (connected_count(keep) > 1) out.push_back({DecompositionProperty::P3, {v}});
  }
  return out;
}

}  // namespace bireconf
