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
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bireconf/errors.hpp"
#include "bireconf/graph.hpp"
#include "bireconf/width.hpp"

namespace bireconf {

inline constexpr int kCopsCap = 12;

/// Cops on `cops`; the robber somewhere inside `flap`, a component of G - cops.
struct GameState {
  VertexSubset cops;
  VertexSubset flap;
  friend bool operator==(const GameState&, const GameState&) = default;
  friend auto operator<=>(const GameState& a, const GameState& b) {
    if (auto c = a.cops <=> b.cops; c != 0) return c;
    return a.flap <=> b.flap;
  }
};

/// X_1, X_2, ...; the empty position X_0 is implied.
using CopSchedule = std::vector<VertexSubset>;

struct Captured {};

/// Robber responses to the cops moving to `next_cops`: flaps of G - next_cops
/// that contain or are contained in the current flap.
inline std::variant<std::vector<GameState>, Captured> step(const Graph& g, const GameState& state,
                                                           const VertexSubset& next_cops) {
  if ((next_cops ^ state.cops).size() != 1)
    throw Error(ErrorCode::IllegalCopMove, "cop positions must change by exactly one vertex");
  std::vector<GameState> out;
  for (auto& f : components(g, next_cops.complement()))
    if (f.is_subset_of(state.flap) || state.flap.is_subset_of(f)) out.push_back({next_cops, std::move(f)});
  if (out.empty()) return Captured{};
  return out;
}

struct Win {};
struct Escape {
  std::vector<GameState> trace;  // robber's states, starting with X_0 = empty
};

/**
 * Plays the schedule against every robber strategy. The robber starts in any
 * component of G. Returns Escape with one surviving trace if some play is not
 * captured by the end of the schedule.
 */
inline std::variant<Win, Escape> simulate(const Graph& g, const CopSchedule& schedule) {
  const VertexSubset none(g.n());
  std::vector<GameState> layer;
  for (auto& c : components(g, none.complement())) layer.push_back({none, std::move(c)});
  if (layer.empty()) return Win{};
  // parents[i][j]: index in layer i of the predecessor of state j in layer i+1.
  std::vector<std::vector<GameState>> layers{layer};
  std::vector<std::vector<std::size_t>> parents;
  VertexSubset prev = none;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const VertexSubset& x = schedule[i];
    if (x.capacity() != g.n() || (x ^ prev).size() != 1)
      throw Error(ErrorCode::IllegalCopMove, "schedule step changes cops by other than one vertex", i);
    std::map<GameState, std::size_t> next_index;
    std::vector<GameState> next;
    std::vector<std::size_t> par;
    for (std::size_t j = 0; j < layers.back().size(); ++j) {
      auto r = step(g, layers.back()[j], x);
      if (std::holds_alternative<Captured>(r)) continue;
      for (auto& s : std::get<std::vector<GameState>>(r)) {
        if (next_index.count(s)) continue;
        next_index.emplace(s, next.size());
        next.push_back(std::move(s));
        par.push_back(j);
      }
    }
    if (next.empty()) return Win{};
    layers.push_back(std::move(next));
    parents.push_back(std::move(par));
    prev = x;
  }
  Escape esc;
  std::size_t j = 0;
  for (std::size_t i = layers.size(); i-- > 0;) {
    esc.trace.push_back(layers[i][j]);
    if (i > 0) j = parents[i - 1][j];
  }
  std::reverse(esc.trace.begin(), esc.trace.end());
  return esc;
}

inline bool wins(const Graph& g, const CopSchedule& schedule) {
  return std::holds_alternative<Win>(simulate(g, schedule));
}

/// X_i ∩ X_i'' ⊆ X_i' for all i <= i' <= i'', with X_0 = ∅ included.
inline bool is_monotone(const CopSchedule& schedule) {
  const std::size_t m = schedule.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = a + 1; c < m; ++c) {
      VertexSubset both = schedule[a] & schedule[c];
      if (both.empty()) continue;
      for (std::size_t b = a + 1; b < c; ++b)
        if (!both.is_subset_of(schedule[b])) return false;
    }
  return true;
}

inline int max_cops(const CopSchedule& schedule) {
  int best = 0;
  for (const auto& x : schedule) best = std::max(best, x.size());
  return best;
}

namespace detail {

/// Components of G - X for every X, as bit masks.
class FlapTable {
 public:
  explicit FlapTable(const Graph& g) : n_(g.n()), flaps_(std::size_t{1} << n_) {
    std::vector<std::uint64_t> nbr;
    for (Vertex v = 0; v < n_; ++v) nbr.push_back(g.neighbor_set(v).mask());
    const std::uint64_t full = (std::uint64_t{1} << n_) - 1;
    for (std::uint64_t x = 0; x <= full; ++x) {
      std::uint64_t rest = full & ~x;
      while (rest) {
        std::uint64_t comp = rest & (~rest + 1), frontier = comp;
        while (frontier) {
          int u = std::countr_zero(frontier);
          frontier &= frontier - 1;
          std::uint64_t nb = nbr[static_cast<std::size_t>(u)] & rest & ~comp;
          comp |= nb;
          frontier |= nb;
        }
        flaps_[x].push_back(comp);
        rest &= ~comp;
      }
    }
  }
  [[nodiscard]] const std::vector<std::uint64_t>& flaps(std::uint64_t x) const { return flaps_[x]; }
  [[nodiscard]] int n() const { return n_; }

 private:
  int n_;
  std::vector<std::vector<std::uint64_t>> flaps_;
};

/// True when k cops have a strategy that captures the robber from every start.
inline bool cops_win(const FlapTable& table, int k) {
  const int n = table.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> positions;
  for (std::uint64_t x = 0; x <= full; ++x)
    if (std::popcount(x) <= k) positions.push_back(x);
  // win[x] is a bit vector over flap indices of x.
  std::vector<std::uint64_t> win(std::size_t{1} << n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint64_t x : positions) {
      const auto& fl = table.flaps(x);
      for (std::size_t fi = 0; fi < fl.size(); ++fi) {
        if ((win[x] >> fi) & 1U) continue;
        const std::uint64_t f = fl[fi];
        bool good = false;
        for (int v = 0; v < n && !good; ++v) {
          std::uint64_t nx = x ^ (std::uint64_t{1} << v);
          if (std::popcount(nx) > k) continue;
          bool all = true;
          const auto& nfl = table.flaps(nx);
          for (std::size_t gi = 0; gi < nfl.size() && all; ++gi) {
            std::uint64_t h = nfl[gi];
            bool legal = (h & ~f) == 0 || (f & ~h) == 0;
            if (legal && !((win[nx] >> gi) & 1U)) all = false;
          }
          good = all;
        }
        if (good) {
          win[x] |= std::uint64_t{1} << fi;
          changed = true;
        }
      }
    }
  }
  const auto& start = table.flaps(0);
  for (std::size_t fi = 0; fi < start.size(); ++fi)
    if (!((win[0] >> fi) & 1U)) return false;
  return true;
}

}  // namespace detail

/// Smallest number of cops that can capture the robber, by least-fixpoint game search.
inline int min_cops(const Graph& g, int cap = kCopsCap) {
  if (g.n() > cap) throw Error(ErrorCode::TooLarge, "min_cops supports at most " + std::to_string(cap) + " vertices");
  if (g.n() == 0) return 0;
  detail::FlapTable table(g);
  for (int k = 1; k <= g.n(); ++k)
    if (detail::cops_win(table, k)) return k;
  return g.n();
}

/// Walks the nice form of `pd`: one cop placed per introduce, one lifted per forget.
inline CopSchedule monotone_schedule_from_pd(const PathDecomposition& pd, const Graph& g) {
  NicePathDecomposition npd = to_nice(pd, g);
  auto bags = npd.bags();
  return CopSchedule(bags.begin() + 1, bags.end());
}

}  // namespace bireconf
