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
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "bireconf/errors.hpp"
#include "bireconf/graph.hpp"
#include "bireconf/vertex_subset.hpp"

namespace bireconf {

// ---------------------------------------------------------------------------
// Models

enum class ModelKind { TAR, TJ, TS };

/// TAR(k): vertex covers of size at most k, one vertex added or removed per step.
/// TJ(k), TS(k): independent sets of size exactly k; a token jumps anywhere or
/// slides along an edge.
struct Model {
  ModelKind kind = ModelKind::TAR;
  int k = 1;

  static Model tar(int k) { return {ModelKind::TAR, k}; }
  static Model tj(int k) { return {ModelKind::TJ, k}; }
  static Model ts(int k) { return {ModelKind::TS, k}; }

  friend bool operator==(const Model&, const Model&) = default;
};

inline const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::TAR: return "tar";
    case ModelKind::TJ: return "tj";
    case ModelKind::TS: return "ts";
  }
  return "?";
}

inline bool is_valid_state(const Graph& g, const Model& m, const VertexSubset& s) {
  if (s.capacity() != g.n()) return false;
  if (m.kind == ModelKind::TAR) return s.size() <= m.k && g.is_vertex_cover(s);
  return s.size() == m.k && g.is_independent(s);
}

inline void require_valid_state(const Graph& g, const Model& m, const VertexSubset& s, const char* what) {
  if (m.k < 1) throw Error(ErrorCode::InvalidState, "model parameter k must be at least 1");
  if (!is_valid_state(g, m, s))
    throw Error(ErrorCode::InvalidState, std::string(what) + " is not a valid " + to_string(m.kind) + " state");
}

namespace detail {

/// Word-mask successor generation for graphs with at most 64 vertices.
class MaskStepper {
 public:
  MaskStepper(const Graph& g, const Model& m) : n_(g.n()), model_(m) {
    nbr_.reserve(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) nbr_.push_back(g.neighbor_set(v).mask());
  }

  template <class Fn>
  void for_each_successor(std::uint64_t s, Fn&& fn) const {
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
    switch (model_.kind) {
      case ModelKind::TAR: {
        bool can_add = std::popcount(s) < model_.k;
        for (int v = 0; v < n_; ++v) {
          std::uint64_t bit = std::uint64_t{1} << v;
          if (s & bit) {
            if ((nbr_[static_cast<std::size_t>(v)] & ~s) == 0) fn(s & ~bit);
          } else if (can_add) {
            fn(s | bit);
          }
        }
        break;
      }
      case ModelKind::TJ: {
        for (std::uint64_t rest = s; rest; rest &= rest - 1) {
          int u = std::countr_zero(rest);
          std::uint64_t base = s & ~(std::uint64_t{1} << u);
          for (std::uint64_t free = all & ~s; free; free &= free - 1) {
            int v = std::countr_zero(free);
            if ((nbr_[static_cast<std::size_t>(v)] & base) == 0) fn(base | (std::uint64_t{1} << v));
          }
        }
        break;
      }
      case ModelKind::TS: {
        for (std::uint64_t rest = s; rest; rest &= rest - 1) {
          int u = std::countr_zero(rest);
          std::uint64_t base = s & ~(std::uint64_t{1} << u);
          for (std::uint64_t cand = nbr_[static_cast<std::size_t>(u)] & ~s; cand; cand &= cand - 1) {
            int v = std::countr_zero(cand);
            if ((nbr_[static_cast<std::size_t>(v)] & base) == 0) fn(base | (std::uint64_t{1} << v));
          }
        }
        break;
      }
    }
  }

 private:
  int n_;
  Model model_;
  std::vector<std::uint64_t> nbr_;
};

/// Successor generation on VertexSubset keys; used above 64 vertices.
class SubsetStepper {
 public:
  SubsetStepper(const Graph& g, const Model& m) : g_(&g), model_(m) {}

  template <class Fn>
  void for_each_successor(const VertexSubset& s, Fn&& fn) const {
    const Graph& g = *g_;
    switch (model_.kind) {
      case ModelKind::TAR: {
        bool can_add = s.size() < model_.k;
        for (Vertex v = 0; v < g.n(); ++v) {
          if (s.contains(v)) {
            if (g.neighbor_set(v).is_subset_of(s)) fn(s.without(v));
          } else if (can_add) {
            fn(s.with(v));
          }
        }
        break;
      }
      case ModelKind::TJ:
      case ModelKind::TS: {
        s.for_each([&](Vertex u) {
          VertexSubset base = s.without(u);
          auto try_move = [&](Vertex v) {
            if (!s.contains(v) && !g.neighbor_set(v).intersects(base)) fn(base.with(v));
          };
          if (model_.kind == ModelKind::TS) {
            for (Vertex v : g.neighbors(u)) try_move(v);
          } else {
            for (Vertex v = 0; v < g.n(); ++v) try_move(v);
          }
        });
        break;
      }
    }
  }

 private:
  const Graph* g_;
  Model model_;
};

/// Dense visited table indexed directly by a bit mask; for n <= kDenseLimit.
class DenseVisited {
 public:
  static constexpr int kDenseLimit = 22;
  explicit DenseVisited(int n) : slot_(std::size_t{1} << n, -1) {}
  [[nodiscard]] int find(std::uint64_t key) const { return slot_[key]; }
  void put(std::uint64_t key, int id) { slot_[key] = id; }

 private:
  std::vector<std::int32_t> slot_;
};

template <class Key, class Hash = std::hash<Key>>
class HashVisited {
 public:
  [[nodiscard]] int find(const Key& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? -1 : it->second;
  }
  void put(const Key& key, int id) { map_.emplace(key, id); }

 private:
  std::unordered_map<Key, int, Hash> map_;
};

/// Plain breadth-first search. Fills `order` (discovery order) and `dist`.
/// Returns the index of `stop` if it was reached and the search stopped there.
template <class Key, class Visited, class Succ>
std::optional<int> run_bfs(const Key& source, Visited& visited, Succ&& for_each_succ, std::size_t budget,
                           std::vector<Key>& order, std::vector<int>& dist, const Key* stop) {
  order.assign(1, source);
  dist.assign(1, 0);
  visited.put(source, 0);
  if (stop && *stop == source) return 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Key cur = order[head];
    const int d = dist[head];
    std::optional<int> hit;
    for_each_succ(cur, [&](const Key& nxt) {
      if (hit || visited.find(nxt) >= 0) return;
      if (order.size() >= budget) throw BudgetExceeded(order.size() + 1, budget);
      int id = static_cast<int>(order.size());
      visited.put(nxt, id);
      order.push_back(nxt);
      dist.push_back(d + 1);
      if (stop && nxt == *stop) hit = id;
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

/// Walks back from `target_id`, choosing at each step the smallest key among
/// predecessors at distance one less.
template <class Key, class Visited, class Succ>
std::vector<Key> recover_path(int target_id, const std::vector<Key>& order, const std::vector<int>& dist,
                              const Visited& visited, Succ&& for_each_succ) {
  std::vector<Key> path{order[static_cast<std::size_t>(target_id)]};
  int cur = target_id;
  while (dist[static_cast<std::size_t>(cur)] > 0) {
    const int want = dist[static_cast<std::size_t>(cur)] - 1;
    std::optional<Key> best;
    int best_id = -1;
    // Reconfiguration moves are symmetric, so successors are predecessors.
    for_each_succ(order[static_cast<std::size_t>(cur)], [&](const Key& p) {
      int id = visited.find(p);
      if (id >= 0 && dist[static_cast<std::size_t>(id)] == want && (!best || p < *best)) {
        best = p;
        best_id = id;
      }
    });
    cur = best_id;
    path.push_back(*best);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

inline VertexSubset subset_of_mask(int n, std::uint64_t m) { return VertexSubset::from_mask(n, m); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-step neighbors

/// All model-adjacent valid states of `state`, sorted canonically.
inline std::vector<VertexSubset> neighbors(const Graph& g, const Model& m, const VertexSubset& state) {
  require_valid_state(g, m, state, "state");
  std::vector<VertexSubset> out;
  detail::SubsetStepper(g, m).for_each_successor(state, [&](const VertexSubset& s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// True when b is one model move away from a. Both states must be valid.
inline bool is_move(const Graph& g, const Model& m, const VertexSubset& a, const VertexSubset& b) {
  const VertexSubset out = a - b;
  const VertexSubset in = b - a;
  if (m.kind == ModelKind::TAR) return out.size() + in.size() == 1;
  if (out.size() != 1 || in.size() != 1) return false;
  return m.kind == ModelKind::TJ || g.adjacent(out.first(), in.first());
}

struct SequenceViolation {
  std::size_t index;  // position in the state list
  std::string reason;
};

/// First invalid state or illegal move of `states` under m, or nullopt.
inline std::optional<SequenceViolation> check_states(const Graph& g, const Model& m, const std::vector<VertexSubset>& states) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].capacity() != g.n()) return SequenceViolation{i, "state has the wrong vertex count"};
    if (!is_valid_state(g, m, states[i])) return SequenceViolation{i, "state is not valid for the model"};
    if (i > 0 && !is_move(g, m, states[i - 1], states[i])) return SequenceViolation{i, "not a single move from the previous state"};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Breadth-first exploration

struct BfsOptions {
  std::size_t budget = 10'000'000;
  bool stop_at_target = false;
  bool diameter = false;  // BFS from every state of the component; quadratic
};

struct StateSpaceReport {
  std::vector<VertexSubset> states;  // discovery order; states[0] is the source
  std::vector<int> distance;         // from the source, aligned with `states`
  std::vector<int> component;        // all zero: a single-source search sees one component
  std::optional<int> target_distance;
  std::vector<VertexSubset> path;    // shortest source..target path when reached
  std::vector<VertexSubset> local_minima;  // TAR only: minimum-size states of the component
  int eccentricity = 0;
  std::optional<int> diameter;
  bool complete = true;  // false when stopped early at the target

  [[nodiscard]] std::optional<int> distance_to(const VertexSubset& s) const {
    if (index_.empty())
      for (std::size_t i = 0; i < states.size(); ++i) index_.emplace(states[i], static_cast<int>(i));
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return distance[static_cast<std::size_t>(it->second)];
  }

 private:
  mutable std::unordered_map<VertexSubset, int, VertexSubsetHash> index_;
};

namespace detail {

template <class Key, class Visited, class Stepper, class ToSubset>
StateSpaceReport bfs_impl(const Graph& g, const Model& m, const Key& src, const std::optional<Key>& tgt,
                          Visited& visited, const Stepper& stepper, ToSubset to_subset, const BfsOptions& opt) {
  std::vector<Key> order;
  std::vector<int> dist;
  auto succ = [&](const Key& k, auto&& fn) { stepper.for_each_successor(k, fn); };
  const Key* stop = (tgt && opt.stop_at_target) ? &*tgt : nullptr;
  auto hit = run_bfs(src, visited, succ, opt.budget, order, dist, stop);

  StateSpaceReport rep;
  rep.complete = !hit.has_value() || !opt.stop_at_target;
  if (hit && stop && dist[static_cast<std::size_t>(*hit)] != 0) rep.complete = false;
  rep.states.reserve(order.size());
  for (const Key& k : order) rep.states.push_back(to_subset(k));
  rep.distance = dist;
  rep.component.assign(order.size(), 0);
  rep.eccentricity = dist.empty() ? 0 : *std::max_element(dist.begin(), dist.end());

  if (tgt) {
    int id = visited.find(*tgt);
    if (id >= 0) {
      rep.target_distance = dist[static_cast<std::size_t>(id)];
      for (const Key& k : recover_path(id, order, dist, visited, succ)) rep.path.push_back(to_subset(k));
    }
  }
  if (m.kind == ModelKind::TAR && rep.complete) {
    int best = std::numeric_limits<int>::max();
    for (const auto& s : rep.states) best = std::min(best, s.size());
    for (const auto& s : rep.states)
      if (s.size() == best) rep.local_minima.push_back(s);
    std::sort(rep.local_minima.begin(), rep.local_minima.end());
  }
  if (opt.diameter && rep.complete) {
    int diam = 0;
    for (const Key& s : order) {
      Visited vis2 = [&] {
        if constexpr (std::is_same_v<Visited, DenseVisited>) return DenseVisited(g.n());
        else return Visited();
      }();
      std::vector<Key> o2;
      std::vector<int> d2;
      run_bfs(s, vis2, succ, opt.budget, o2, d2, static_cast<const Key*>(nullptr));
      diam = std::max(diam, *std::max_element(d2.begin(), d2.end()));
    }
    rep.diameter = diam;
  }
  return rep;
}

}  // namespace detail

/**
 * Explores the component of `source` in the reconfiguration graph of `m`.
 * Distances are exact; the target path uses the smallest-predecessor rule.
 * Throws InvalidState for invalid endpoints and BudgetExceeded when more than
 * `opt.budget` states would be visited.
 */
inline StateSpaceReport bfs(const Graph& g, const Model& m, const VertexSubset& source,
                            const std::optional<VertexSubset>& target = std::nullopt, const BfsOptions& opt = {}) {
  require_valid_state(g, m, source, "source");
  if (target) require_valid_state(g, m, *target, "target");
  const int n = g.n();
  if (n <= 64) {
    detail::MaskStepper stepper(g, m);
    std::optional<std::uint64_t> t;
    if (target) t = target->mask();
    auto to_subset = [n](std::uint64_t k) { return detail::subset_of_mask(n, k); };
    if (n <= detail::DenseVisited::kDenseLimit) {
      detail::DenseVisited vis(n);
      return detail::bfs_impl(g, m, source.mask(), t, vis, stepper, to_subset, opt);
    }
    detail::HashVisited<std::uint64_t> vis;
    return detail::bfs_impl(g, m, source.mask(), t, vis, stepper, to_subset, opt);
  }
  detail::SubsetStepper stepper(g, m);
  detail::HashVisited<VertexSubset, VertexSubsetHash> vis;
  return detail::bfs_impl(g, m, source, target, vis, stepper, [](const VertexSubset& s) { return s; }, opt);
}

/// Shortest distance from source to target, or nullopt if unreachable. Stops
/// as soon as the target is discovered and builds no report.
inline std::optional<int> shortest_distance(const Graph& g, const Model& m, const VertexSubset& source,
                                            const VertexSubset& target, std::size_t budget = 10'000'000) {
  require_valid_state(g, m, source, "source");
  require_valid_state(g, m, target, "target");
  std::optional<int> hit;
  auto finish = [&](auto& visited, const auto& stepper, const auto& src, const auto& tgt) {
    using Key = std::decay_t<decltype(src)>;
    std::vector<Key> order;
    std::vector<int> dist;
    auto succ = [&](const Key& k, auto&& fn) { stepper.for_each_successor(k, fn); };
    auto id = detail::run_bfs(src, visited, succ, budget, order, dist, &tgt);
    if (id) hit = dist[static_cast<std::size_t>(*id)];
  };
  if (g.n() <= detail::DenseVisited::kDenseLimit) {
    detail::DenseVisited vis(g.n());
    finish(vis, detail::MaskStepper(g, m), source.mask(), target.mask());
  } else if (g.n() <= 64) {
    detail::HashVisited<std::uint64_t> vis;
    finish(vis, detail::MaskStepper(g, m), source.mask(), target.mask());
  } else {
    detail::HashVisited<VertexSubset, VertexSubsetHash> vis;
    finish(vis, detail::SubsetStepper(g, m), source, target);
  }
  return hit;
}

/// Every valid state of `m` together with a component label; labels are
/// assigned in order of each component's smallest state. Requires n <= 22.
struct ComponentLabels {
  std::vector<VertexSubset> states;
  std::vector<int> label;
  int count = 0;

  [[nodiscard]] int label_of(const VertexSubset& s) const {
    auto it = std::lower_bound(states.begin(), states.end(), s);
    if (it == states.end() || *it != s) return -1;
    return label[static_cast<std::size_t>(it - states.begin())];
  }
};

inline ComponentLabels label_components(const Graph& g, const Model& m, std::size_t budget = 10'000'000) {
  const int n = g.n();
  if (n > detail::DenseVisited::kDenseLimit) throw Error(ErrorCode::TooLarge, "component labeling needs n <= 22");
  if ((std::size_t{1} << n) > budget) throw BudgetExceeded(std::size_t{1} << n, budget);
  detail::MaskStepper stepper(g, m);
  std::vector<int> comp(std::size_t{1} << n, -1);
  ComponentLabels out;
  std::vector<std::uint64_t> queue;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if (comp[s] >= 0) continue;
    if (!is_valid_state(g, m, VertexSubset::from_mask(n, s))) continue;
    int c = out.count++;
    comp[s] = c;
    queue.assign(1, s);
    for (std::size_t h = 0; h < queue.size(); ++h)
      stepper.for_each_successor(queue[h], [&](std::uint64_t t) {
        if (comp[t] < 0) {
          comp[t] = c;
          queue.push_back(t);
        }
      });
  }
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
    if (comp[s] >= 0) out.states.push_back(VertexSubset::from_mask(n, s));
  std::sort(out.states.begin(), out.states.end());
  for (const auto& s : out.states) out.label.push_back(comp[s.mask()]);
  return out;
}

// ---------------------------------------------------------------------------
// Edit sequences

enum class Op { Add, Remove };

struct Marker {
  Vertex v;
  Op op;
  friend bool operator==(const Marker&, const Marker&) = default;
};

using EditSequence = std::vector<Marker>;

inline Marker add(Vertex v) { return {v, Op::Add}; }
inline Marker rem(Vertex v) { return {v, Op::Remove}; }

inline VertexSubset touch(const EditSequence& eta, int n) {
  VertexSubset s(n);
  for (const auto& m : eta) s.insert(m.v);
  return s;
}
inline VertexSubset added(const EditSequence& eta, int n) {
  VertexSubset s(n);
  for (const auto& m : eta)
    if (m.op == Op::Add) s.insert(m.v);
  return s;
}
inline VertexSubset removed(const EditSequence& eta, int n) {
  VertexSubset s(n);
  for (const auto& m : eta)
    if (m.op == Op::Remove) s.insert(m.v);
  return s;
}

/// True when no vertex appears in two markers.
inline bool is_monotone(const EditSequence& eta) {
  std::vector<Vertex> vs;
  for (const auto& m : eta) vs.push_back(m.v);
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

/// Markers between consecutive states that differ in exactly one vertex.
inline EditSequence edits_between(const std::vector<VertexSubset>& states) {
  EditSequence eta;
  for (std::size_t i = 1; i < states.size(); ++i) {
    VertexSubset d = states[i] ^ states[i - 1];
    if (d.size() != 1) throw Error(ErrorCode::InvalidSequence, "consecutive states differ in more than one vertex", i);
    Vertex v = d.first();
    eta.push_back({v, states[i].contains(v) ? Op::Add : Op::Remove});
  }
  return eta;
}

/**
 * Replays `eta` from `start` under TAR capacity k and returns every state
 * (start included). Step numbers in errors are 1-based marker positions.
 */
inline std::vector<VertexSubset> apply_edits(const Graph& g, int k, const VertexSubset& start, const EditSequence& eta) {
  require_valid_state(g, Model::tar(k), start, "start");
  std::vector<VertexSubset> sigma{start};
  VertexSubset cur = start;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const Marker& m = eta[i];
    const std::size_t step = i + 1;
    if (m.v < 0 || m.v >= g.n()) throw Error(ErrorCode::InvalidSequence, "marker vertex out of range", step);
    if (m.op == Op::Add) {
      if (cur.contains(m.v)) throw Error(ErrorCode::RedundantMarker, "vertex " + std::to_string(m.v) + " already present", step);
      cur.insert(m.v);
      if (cur.size() > k) throw Error(ErrorCode::CapacityExceeded, "cover exceeds capacity", step);
    } else {
      if (!cur.contains(m.v)) throw Error(ErrorCode::RedundantMarker, "vertex " + std::to_string(m.v) + " absent", step);
      cur.erase(m.v);
      if (!g.neighbor_set(m.v).is_subset_of(cur)) throw Error(ErrorCode::NotACover, "edge at " + std::to_string(m.v) + " uncovered", step);
    }
    sigma.push_back(cur);
  }
  return sigma;
}

inline long long potential(const std::vector<VertexSubset>& sigma) {
  long long total = 0;
  for (const auto& q : sigma) total += q.size();
  return total;
}

// ---------------------------------------------------------------------------
// Blocks

enum class Side { Left, Right };

/// A Right block adds on the right side and removes on the left; Left is the mirror.
struct Block {
  std::size_t begin = 0;  // marker range [begin, end)
  std::size_t end = 0;
  Side side = Side::Right;
  int balance = 0;  // additions minus removals

  [[nodiscard]] bool winning() const { return balance < 0; }
  [[nodiscard]] bool losing() const { return balance > 0; }
  [[nodiscard]] bool neutral() const { return balance == 0; }
  friend bool operator==(const Block&, const Block&) = default;
};

inline std::vector<Block> decompose_blocks(const EditSequence& eta, const Bipartition& bip) {
  std::vector<Block> out;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const Marker& m = eta[i];
    bool in_l = m.v >= 0 && m.v < bip.left.capacity() && bip.left.contains(m.v);
    bool in_r = m.v >= 0 && m.v < bip.right.capacity() && bip.right.contains(m.v);
    if (in_l == in_r) throw Error(ErrorCode::MixedBlock, "marker vertex not on exactly one side", i + 1);
    Side side = ((m.op == Op::Add) == in_r) ? Side::Right : Side::Left;
    if (out.empty() || out.back().side != side) out.push_back({i, i, side, 0});
    out.back().end = i + 1;
    out.back().balance += m.op == Op::Add ? 1 : -1;
  }
  return out;
}

inline EditSequence block_markers(const EditSequence& eta, const Block& b) {
  return EditSequence(eta.begin() + static_cast<std::ptrdiff_t>(b.begin), eta.begin() + static_cast<std::ptrdiff_t>(b.end));
}

/// Exchanges blocks i and i+1 of `eta`. Requires block i not winning, block
/// i+1 winning, and disjoint touched sets; the result is replayed to confirm validity.
inline EditSequence swap_blocks(const Graph& g, int k, const VertexSubset& start, const EditSequence& eta, std::size_t i) {
  Bipartition bip = bipartition(g);
  std::vector<Block> blocks = decompose_blocks(eta, bip);
  if (i + 1 >= blocks.size()) throw Error(ErrorCode::PreconditionFailed, "no block follows block " + std::to_string(i), i);
  const Block& a = blocks[i];
  const Block& b = blocks[i + 1];
  if (a.winning()) throw Error(ErrorCode::PreconditionFailed, "first block is winning", i);
  if (!b.winning()) throw Error(ErrorCode::PreconditionFailed, "second block is not winning", i);
  EditSequence ea = block_markers(eta, a), eb = block_markers(eta, b);
  if (touch(ea, g.n()).intersects(touch(eb, g.n())))
    throw Error(ErrorCode::PreconditionFailed, "touched sets of the two blocks intersect", i);
  EditSequence out(eta.begin(), eta.begin() + static_cast<std::ptrdiff_t>(a.begin));
  out.insert(out.end(), eb.begin(), eb.end());
  out.insert(out.end(), ea.begin(), ea.end());
  out.insert(out.end(), eta.begin() + static_cast<std::ptrdiff_t>(b.end), eta.end());
  apply_edits(g, k, start, out);
  return out;
}

// ---------------------------------------------------------------------------
// Descent to a smaller cover

struct LocalMinimum {};

struct Descent {
  VertexSubset target;
  EditSequence edits;
};

/**
 * Searches the TAR(k) component of s for the nearest strictly smaller cover.
 * The whole component is searched, so a returned edit sequence may be longer
 * than n; callers check that bound. LocalMinimum means no smaller cover exists
 * in the component.
 */
inline std::variant<Descent, LocalMinimum> one_down(const Graph& g, int k, const VertexSubset& s,
                                                    std::size_t budget = 10'000'000) {
  const Model m = Model::tar(k);
  require_valid_state(g, m, s, "cover");
  const int size = s.size();
  auto search = [&](auto& visited, const auto& stepper, const auto& src) -> std::variant<Descent, LocalMinimum> {
    using Key = std::decay_t<decltype(src)>;
    std::vector<Key> order{src};
    std::vector<int> dist{0};
    visited.put(src, 0);
    auto succ = [&](const Key& key, auto&& fn) { stepper.for_each_successor(key, fn); };
    auto size_of = [](const Key& key) {
      if constexpr (std::is_same_v<Key, std::uint64_t>) return std::popcount(key);
      else return key.size();
    };
    for (std::size_t h = 0; h < order.size(); ++h) {
      const Key cur = order[h];
      int found = -1;
      succ(cur, [&](const Key& nxt) {
        if (found >= 0 || visited.find(nxt) >= 0) return;
        if (order.size() >= budget) throw BudgetExceeded(order.size() + 1, budget);
        int id = static_cast<int>(order.size());
        visited.put(nxt, id);
        order.push_back(nxt);
        dist.push_back(dist[h] + 1);
        if (size_of(nxt) < size) found = id;
      });
      if (found >= 0) {
        std::vector<VertexSubset> path;
        for (const Key& key : detail::recover_path(found, order, dist, visited, succ)) {
          if constexpr (std::is_same_v<Key, std::uint64_t>) path.push_back(VertexSubset::from_mask(g.n(), key));
          else path.push_back(key);
        }
        return Descent{path.back(), edits_between(path)};
      }
    }
    return LocalMinimum{};
  };
  if (g.n() <= detail::DenseVisited::kDenseLimit) {
    detail::DenseVisited vis(g.n());
    return search(vis, detail::MaskStepper(g, m), s.mask());
  }
  if (g.n() <= 64) {
    detail::HashVisited<std::uint64_t> vis;
    return search(vis, detail::MaskStepper(g, m), s.mask());
  }
  detail::HashVisited<VertexSubset, VertexSubsetHash> vis;
  return search(vis, detail::SubsetStepper(g, m), s);
}

// ---------------------------------------------------------------------------
// Twin-group count space

/**
 * TAR states quotiented to per-group counts. Groups are pairwise twin classes
 * (a group is independent and its members share one neighborhood), so two
 * adjacent groups form a biclique and a count vector is a cover iff every
 * such pair has at least one full group. Counts are packed mixed-radix.
 */
class CountSpace {
 public:
  CountSpace(std::vector<int> sizes, const std::vector<std::pair<int, int>>& group_edges, int capacity)
      : sizes_(std::move(sizes)), capacity_(capacity) {
    const std::size_t g = sizes_.size();
    if (g > 64) throw Error(ErrorCode::TooLarge, "more than 64 groups");
    adj_.assign(g, 0);
    for (auto [a, b] : group_edges) {
      adj_[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
      adj_[static_cast<std::size_t>(b)] |= std::uint64_t{1} << a;
    }
    radix_.resize(g);
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < g; ++i) {
      radix_[i] = prod;
      auto base = static_cast<std::uint64_t>(sizes_[i] + 1);
      if (prod > std::numeric_limits<std::uint64_t>::max() / base)
        throw Error(ErrorCode::TooLarge, "count space exceeds 64-bit encoding");
      prod *= base;
    }
  }

  [[nodiscard]] std::size_t groups() const { return sizes_.size(); }
  [[nodiscard]] int size_of(std::size_t i) const { return sizes_[i]; }
  [[nodiscard]] int capacity() const { return capacity_; }

  [[nodiscard]] std::uint64_t encode(const std::vector<int>& c) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < c.size(); ++i) key += radix_[i] * static_cast<std::uint64_t>(c[i]);
    return key;
  }
  [[nodiscard]] std::vector<int> decode(std::uint64_t key) const {
    std::vector<int> c(sizes_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<int>((key / radix_[i]) % static_cast<std::uint64_t>(sizes_[i] + 1));
    return c;
  }

  [[nodiscard]] std::uint64_t full_mask(const std::vector<int>& c) const {
    std::uint64_t f = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] == sizes_[i]) f |= std::uint64_t{1} << i;
    return f;
  }

  [[nodiscard]] bool is_cover(const std::vector<int>& c) const {
    std::uint64_t f = full_mask(c);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!((f >> i) & 1U) && (adj_[i] & ~f)) return false;
    return true;
  }
  [[nodiscard]] bool is_state(const std::vector<int>& c) const {
    int total = 0;
    for (int x : c) total += x;
    return total <= capacity_ && is_cover(c);
  }

  template <class Fn>
  void for_each_successor(std::uint64_t key, Fn&& fn) const {
    std::vector<int> c = decode(key);
    int total = 0;
    for (int x : c) total += x;
    std::uint64_t f = full_mask(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
      // Emptying a full group's slot requires all its neighbor groups to be full.
      if (c[i] > 0 && (c[i] < sizes_[i] || (adj_[i] & ~f) == 0)) fn(key - radix_[i]);
      if (c[i] < sizes_[i] && total < capacity_) fn(key + radix_[i]);
    }
  }

 private:
  std::vector<int> sizes_;
  int capacity_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::uint64_t> radix_;
};

struct CountSearch {
  std::vector<std::uint64_t> order;
  std::vector<int> dist;
  detail::HashVisited<std::uint64_t> visited;
  std::optional<int> target_id;
};

inline CountSearch count_bfs(const CountSpace& space, std::uint64_t source, std::optional<std::uint64_t> target,
                             const BfsOptions& opt = {}) {
  CountSearch cs;
  auto succ = [&](std::uint64_t k, auto&& fn) { space.for_each_successor(k, fn); };
  const std::uint64_t* stop = (target && opt.stop_at_target) ? &*target : nullptr;
  detail::run_bfs(source, cs.visited, succ, opt.budget, cs.order, cs.dist, stop);
  if (target) {
    int id = cs.visited.find(*target);
    if (id >= 0) cs.target_id = id;
  }
  return cs;
}

struct CompressedReport {
  std::vector<VertexSubset> subgroups;   // twin groups refined by source/target membership
  std::vector<int> group_of_subgroup;    // index into the original twin partition
  std::size_t visited = 0;
  bool complete = true;
  std::optional<int> target_distance;
  std::vector<std::vector<int>> count_path;  // per state, counts per original twin group
  std::vector<VertexSubset> path;            // lifted concrete states
  std::optional<int> min_size;               // smallest cover in the component (when complete)
};

/**
 * TAR search on per-group counts. Each twin group is split by membership in
 * source and target, so both endpoints are full-or-empty on every subgroup and
 * count-space distances equal concrete distances.
 */
inline CompressedReport bfs_twin_compressed(const Graph& g, const TwinPartition& tp, const Model& m,
                                            const VertexSubset& source, const std::optional<VertexSubset>& target,
                                            const BfsOptions& opt = {}) {
  if (m.kind != ModelKind::TAR) throw Error(ErrorCode::PreconditionFailed, "twin compression supports TAR only");
  require_valid_state(g, m, source, "source");
  if (target) require_valid_state(g, m, *target, "target");

  CompressedReport rep;
  for (std::size_t gi = 0; gi < tp.groups.size(); ++gi) {
    for (int mask = 0; mask < 4; ++mask) {
      VertexSubset part(g.n());
      tp.groups[gi].for_each([&](Vertex v) {
        bool in_s = source.contains(v);
        bool in_t = target ? target->contains(v) : false;
        if ((in_s ? 1 : 0) + (in_t ? 2 : 0) == mask) part.insert(v);
      });
      if (!part.empty()) {
        rep.subgroups.push_back(part);
        rep.group_of_subgroup.push_back(static_cast<int>(gi));
      }
    }
  }
  const std::size_t sg = rep.subgroups.size();
  std::vector<int> sizes;
  for (const auto& p : rep.subgroups) sizes.push_back(p.size());
  std::vector<std::pair<int, int>> gedges;
  std::vector<Vertex> rep_v;
  for (const auto& p : rep.subgroups) rep_v.push_back(p.first());
  for (std::size_t a = 0; a < sg; ++a)
    for (std::size_t b = a + 1; b < sg; ++b)
      if (g.adjacent(rep_v[a], rep_v[b])) gedges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  CountSpace space(sizes, gedges, m.k);

  auto counts_of = [&](const VertexSubset& s) {
    std::vector<int> c(sg);
    for (std::size_t i = 0; i < sg; ++i) c[i] = (rep.subgroups[i] & s).size();
    return c;
  };
  std::uint64_t src = space.encode(counts_of(source));
  std::optional<std::uint64_t> tgt;
  if (target) tgt = space.encode(counts_of(*target));

  CountSearch cs = count_bfs(space, src, tgt, opt);
  rep.visited = cs.order.size();
  rep.complete = !(opt.stop_at_target && cs.target_id);
  if (rep.complete) {
    int best = std::numeric_limits<int>::max();
    for (std::uint64_t key : cs.order) {
      int total = 0;
      for (int x : space.decode(key)) total += x;
      best = std::min(best, total);
    }
    rep.min_size = best;
  }
  if (cs.target_id) {
    rep.target_distance = cs.dist[static_cast<std::size_t>(*cs.target_id)];
    auto succ = [&](std::uint64_t k, auto&& fn) { space.for_each_successor(k, fn); };
    std::vector<std::uint64_t> keys = detail::recover_path(*cs.target_id, cs.order, cs.dist, cs.visited, succ);
    VertexSubset cur = source;
    std::vector<int> prev = space.decode(keys.front());
    auto per_group = [&](const std::vector<int>& c) {
      std::vector<int> out(tp.groups.size(), 0);
      for (std::size_t i = 0; i < sg; ++i) out[static_cast<std::size_t>(rep.group_of_subgroup[i])] += c[i];
      return out;
    };
    rep.path.push_back(cur);
    rep.count_path.push_back(per_group(prev));
    for (std::size_t step = 1; step < keys.size(); ++step) {
      std::vector<int> c = space.decode(keys[step]);
      for (std::size_t i = 0; i < sg; ++i) {
        if (c[i] == prev[i]) continue;
        VertexSubset pool = c[i] > prev[i] ? rep.subgroups[i] - cur : rep.subgroups[i] & cur;
        Vertex v = pool.first();
        if (c[i] > prev[i]) cur.insert(v);
        else cur.erase(v);
      }
      rep.path.push_back(cur);
      rep.count_path.push_back(per_group(c));
      prev = std::move(c);
    }
  }
  return rep;
}

}  // namespace bireconf
