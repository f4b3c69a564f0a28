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
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bireconf/errors.hpp"
#include "bireconf/vertex_subset.hpp"

namespace bireconf {

using Edge = std::pair<Vertex, Vertex>;

/**
 * Immutable simple undirected graph on vertices 0..n-1.
 *
 * Adjacency is kept both as sorted neighbor lists and as per-vertex
 * VertexSubsets; the latter make cover/independence checks word-parallel.
 */
class Graph {
 public:
  Graph() = default;

  /// Throws Error(Parse) on self-loops, out-of-range endpoints or parallel edges.
  Graph(int n, const std::vector<Edge>& edges) : n_(n), adj_(static_cast<std::size_t>(n)) {
    if (n < 0) throw Error(ErrorCode::Parse, "negative vertex count");
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) throw Error(ErrorCode::Parse, "edge endpoint out of range");
      if (u == v) throw Error(ErrorCode::Parse, "self-loop at " + std::to_string(u));
      adj_[static_cast<std::size_t>(u)].push_back(v);
      adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end());
      if (std::adjacent_find(list.begin(), list.end()) != list.end())
        throw Error(ErrorCode::Parse, "parallel edge");
    }
    edge_count_ = static_cast<int>(edges.size());
    nbr_sets_.reserve(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) nbr_sets_.emplace_back(n, std::span<const Vertex>(adj_[static_cast<std::size_t>(v)]));
  }

  explicit Graph(int n) : Graph(n, {}) {}

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int edge_count() const { return edge_count_; }

  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
  [[nodiscard]] const VertexSubset& neighbor_set(Vertex v) const { return nbr_sets_.at(static_cast<std::size_t>(v)); }
  [[nodiscard]] int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const { return neighbor_set(u).contains(v); }

  /// Edges with u < v, sorted lexicographically.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  [[nodiscard]] VertexSubset empty_set() const { return VertexSubset(n_); }
  [[nodiscard]] VertexSubset all_vertices() const { return VertexSubset::full(n_); }

  /// Open neighborhood N(Q) = vertices outside Q adjacent to Q.
  [[nodiscard]] VertexSubset open_neighborhood(const VertexSubset& q) const {
    VertexSubset out(n_);
    q.for_each([&](Vertex v) { out |= neighbor_set(v); });
    return out - q;
  }

  [[nodiscard]] bool is_vertex_cover(const VertexSubset& q) const {
    // Every vertex outside q must have all neighbors inside q.
    for (Vertex v = 0; v < n_; ++v)
      if (!q.contains(v) && !neighbor_set(v).is_subset_of(q)) return false;
    return true;
  }

  [[nodiscard]] bool is_independent(const VertexSubset& q) const {
    bool ok = true;
    q.for_each([&](Vertex v) {
      if (ok && neighbor_set(v).intersects(q)) ok = false;
    });
    return ok;
  }

  [[nodiscard]] bool is_clique(const VertexSubset& q) const {
    bool ok = true;
    q.for_each([&](Vertex v) {
      if (ok && !(q.without(v)).is_subset_of(neighbor_set(v))) ok = false;
    });
    return ok;
  }

  /// Induced subgraph on `keep`; `old_of_new[i]` is the original index of new vertex i.
  [[nodiscard]] Graph induced(const VertexSubset& keep, std::vector<Vertex>* old_of_new = nullptr) const {
    std::vector<Vertex> order = keep.members();
    std::vector<Vertex> new_of_old(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < order.size(); ++i) new_of_old[static_cast<std::size_t>(order[i])] = static_cast<Vertex>(i);
    std::vector<Edge> es;
    for (auto [u, v] : edges()) {
      Vertex a = new_of_old[static_cast<std::size_t>(u)], b = new_of_old[static_cast<std::size_t>(v)];
      if (a >= 0 && b >= 0) es.emplace_back(a, b);
    }
    if (old_of_new) *old_of_new = order;
    return Graph(static_cast<int>(order.size()), es);
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  int n_ = 0;
  int edge_count_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<VertexSubset> nbr_sets_;
};

struct Bipartition {
  VertexSubset left;
  VertexSubset right;
};

/// Connected components of G[alive], each as a vertex subset, ordered by smallest member.
inline std::vector<VertexSubset> components(const Graph& g, const VertexSubset& alive) {
  std::vector<VertexSubset> out;
  VertexSubset seen(g.n());
  std::vector<Vertex> stack;
  alive.for_each([&](Vertex s) {
    if (seen.contains(s)) return;
    VertexSubset comp(g.n());
    stack.assign(1, s);
    seen.insert(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      comp.insert(u);
      for (Vertex w : g.neighbors(u))
        if (alive.contains(w) && !seen.contains(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
    }
    out.push_back(std::move(comp));
  });
  return out;
}

inline bool is_connected(const Graph& g) { return components(g, g.all_vertices()).size() <= 1; }

/**
 * 2-colors g. Each component's smallest vertex goes left, so isolated
 * vertices always land on the left side. Throws OddCycleError carrying the
 * vertices of an odd cycle otherwise.
 */
inline Bipartition bipartition(const Graph& g) {
  const int n = g.n();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  for (Vertex s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] >= 0) continue;
    color[static_cast<std::size_t>(s)] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex w : g.neighbors(u)) {
        auto& cw = color[static_cast<std::size_t>(w)];
        if (cw < 0) {
          cw = 1 - color[static_cast<std::size_t>(u)];
          parent[static_cast<std::size_t>(w)] = u;
          depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(u)] + 1;
          q.push(w);
        } else if (cw == color[static_cast<std::size_t>(u)]) {
          // Climb both tree paths to the common ancestor.
          std::vector<Vertex> a{u}, b{w};
          Vertex x = u, y = w;
          while (depth[static_cast<std::size_t>(x)] > depth[static_cast<std::size_t>(y)]) a.push_back(x = parent[static_cast<std::size_t>(x)]);
          while (depth[static_cast<std::size_t>(y)] > depth[static_cast<std::size_t>(x)]) b.push_back(y = parent[static_cast<std::size_t>(y)]);
          while (x != y) {
            a.push_back(x = parent[static_cast<std::size_t>(x)]);
            b.push_back(y = parent[static_cast<std::size_t>(y)]);
          }
          b.pop_back();
          std::reverse(b.begin(), b.end());
          a.insert(a.end(), b.begin(), b.end());
          throw OddCycleError(a);
        }
      }
    }
  }
  Bipartition bp{VertexSubset(n), VertexSubset(n)};
  for (Vertex v = 0; v < n; ++v) (color[static_cast<std::size_t>(v)] == 0 ? bp.left : bp.right).insert(v);
  return bp;
}

inline bool is_bipartite(const Graph& g) {
  try {
    bipartition(g);
    return true;
  } catch (const OddCycleError&) {
    return false;
  }
}

/// Adds every missing edge inside q.
inline Graph cliquify(const Graph& g, const VertexSubset& q) {
  std::vector<Edge> es = g.edges();
  std::vector<Vertex> m = q.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!g.adjacent(m[i], m[j])) es.emplace_back(m[i], m[j]);
  return Graph(g.n(), es);
}

/// Appends `copies` new vertices, each adjacent to exactly N(v).
inline Graph duplicate(const Graph& g, Vertex v, int copies) {
  if (copies < 0) throw std::invalid_argument("negative copy count");
  std::vector<Edge> es = g.edges();
  for (int c = 0; c < copies; ++c)
    for (Vertex w : g.neighbors(v)) es.emplace_back(g.n() + c, w);
  return Graph(g.n() + copies, es);
}

/// Classes of vertices with identical open neighborhoods (such vertices are
/// never adjacent to each other). Ordered by smallest member.
struct TwinPartition {
  std::vector<VertexSubset> groups;
  std::vector<int> group_of;  // vertex -> group index
};

inline TwinPartition twin_partition(const Graph& g) {
  TwinPartition tp;
  tp.group_of.assign(static_cast<std::size_t>(g.n()), -1);
  std::map<std::vector<Vertex>, int> index;
  for (Vertex v = 0; v < g.n(); ++v) {
    std::vector<Vertex> key(g.neighbors(v).begin(), g.neighbors(v).end());
    auto [it, inserted] = index.emplace(std::move(key), static_cast<int>(tp.groups.size()));
    if (inserted) tp.groups.emplace_back(g.n());
    tp.groups[static_cast<std::size_t>(it->second)].insert(v);
    tp.group_of[static_cast<std::size_t>(v)] = it->second;
  }
  return tp;
}

/// Builds a partition from explicit groups; throws if a group is not a twin class.
inline TwinPartition make_twin_partition(const Graph& g, std::vector<VertexSubset> groups) {
  TwinPartition tp;
  tp.group_of.assign(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    Vertex rep = groups[i].first();
    groups[i].for_each([&](Vertex v) {
      if (tp.group_of[static_cast<std::size_t>(v)] >= 0) throw std::invalid_argument("twin groups overlap");
      if (g.neighbor_set(v) != g.neighbor_set(rep)) throw std::invalid_argument("group members are not twins");
      tp.group_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
    });
  }
  for (int x : tp.group_of)
    if (x < 0) throw std::invalid_argument("twin groups do not cover the graph");
  tp.groups = std::move(groups);
  return tp;
}

/// Drops degree-0 vertices; the mapping lists original indices of the kept vertices.
inline std::pair<Graph, std::vector<Vertex>> remove_isolated(const Graph& g) {
  VertexSubset keep(g.n());
  for (Vertex v = 0; v < g.n(); ++v)
    if (g.degree(v) > 0) keep.insert(v);
  std::vector<Vertex> mapping;
  Graph h = g.induced(keep, &mapping);
  return {std::move(h), std::move(mapping)};
}

// Text format:  "p <n> <m>" header, then m lines "e <u> <v>" (0-based); "c" lines are comments.

inline Graph read_graph(std::istream& in) {
  std::string line;
  int n = -1, m = -1;
  std::vector<Edge> es;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      if (n >= 0) throw Error(ErrorCode::Parse, "duplicate header", lineno);
      if (!(ls >> n >> m) || n < 0 || m < 0) throw Error(ErrorCode::Parse, "bad header", lineno);
    } else if (tag == "e") {
      if (n < 0) throw Error(ErrorCode::Parse, "edge before header", lineno);
      Vertex u, v;
      if (!(ls >> u >> v)) throw Error(ErrorCode::Parse, "bad edge line", lineno);
      es.emplace_back(u, v);
    } else {
      throw Error(ErrorCode::Parse, "unknown line tag '" + tag + "'", lineno);
    }
    std::string rest;
    if (ls >> rest) throw Error(ErrorCode::Parse, "trailing tokens", lineno);
  }
  if (n < 0) throw Error(ErrorCode::Parse, "missing header");
  if (static_cast<int>(es.size()) != m) throw Error(ErrorCode::Parse, "edge count does not match header");
  return Graph(n, es);
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "p " << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

// Small constructors used throughout tests and tools.
namespace graphs {

inline Graph path(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph(n, es);
}

inline Graph cycle(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph(n, es);
}

inline Graph complete(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph(n, es);
}

/// K_{a,b} with the a-side on vertices 0..a-1.
inline Graph complete_bipartite(int a, int b) {
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
  return Graph(a + b, es);
}

/// Disjoint union of two graphs, second one shifted by a.n().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> es = a.edges();
  for (auto [u, v] : b.edges()) es.emplace_back(u + a.n(), v + a.n());
  return Graph(a.n() + b.n(), es);
}

/// Decodes the bits of `mask` over the pairs (i,j), i<j, in row-major order.
inline Graph from_edge_mask(int n, std::uint64_t mask) {
  std::vector<Edge> es;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if ((mask >> bit) & 1U) es.emplace_back(i, j);
  return Graph(n, es);
}

/// Bipartite graph with left side 0..a-1, right side a..a+b-1; bit i*b+j encodes edge (i, a+j).
inline Graph bipartite_from_mask(int a, int b, std::uint64_t mask) {
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      if ((mask >> (i * b + j)) & 1U) es.emplace_back(i, a + j);
  return Graph(a + b, es);
}

}  // namespace graphs

}  // namespace bireconf
