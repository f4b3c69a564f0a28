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

#include <limits>
#include <utility>
#include <vector>

#include "bireconf/graph.hpp"

namespace bireconf {

/// mate[v] for every vertex of g, -1 when unmatched or outside the two sides.
struct Matching {
  std::vector<Vertex> mate;
  int size = 0;
};

/**
 * Hopcroft-Karp maximum matching on the edges of g running between `left`
 * and `right` (disjoint). Edges inside a side are ignored.
 */
inline Matching max_matching(const Graph& g, const VertexSubset& left, const VertexSubset& right) {
  const int n = g.n();
  constexpr int kInf = std::numeric_limits<int>::max();
  Matching m{std::vector<Vertex>(static_cast<std::size_t>(n), -1), 0};
  std::vector<Vertex> ls;
  left.for_each([&](Vertex v) { ls.push_back(v); });
  std::vector<int> layer(static_cast<std::size_t>(n), kInf);
  auto at = [](auto& vec, Vertex v) -> auto& { return vec[static_cast<std::size_t>(v)]; };

  auto bfs = [&] {
    std::vector<Vertex> queue;
    for (Vertex u : ls) {
      at(layer, u) = at(m.mate, u) < 0 ? 0 : kInf;
      if (at(m.mate, u) < 0) queue.push_back(u);
    }
    bool found = false;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      Vertex u = queue[h];
      for (Vertex w : g.neighbors(u)) {
        if (!right.contains(w)) continue;
        Vertex nu = at(m.mate, w);
        if (nu < 0) found = true;
        else if (at(layer, nu) == kInf) {
          at(layer, nu) = at(layer, u) + 1;
          queue.push_back(nu);
        }
      }
    }
    return found;
  };
  auto dfs = [&](auto&& self, Vertex u) -> bool {
    for (Vertex w : g.neighbors(u)) {
      if (!right.contains(w)) continue;
      Vertex nu = at(m.mate, w);
      if (nu < 0 || (at(layer, nu) == at(layer, u) + 1 && self(self, nu))) {
        at(m.mate, u) = w;
        at(m.mate, w) = u;
        return true;
      }
    }
    at(layer, u) = kInf;
    return false;
  };
  while (bfs())
    for (Vertex u : ls)
      if (at(m.mate, u) < 0 && dfs(dfs, u)) ++m.size;
  return m;
}

}  // namespace bireconf
