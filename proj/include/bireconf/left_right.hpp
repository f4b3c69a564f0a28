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

#include <optional>
#include <vector>

#include "bireconf/cops_robber.hpp"
#include "bireconf/errors.hpp"
#include "bireconf/graph.hpp"
#include "bireconf/reconf.hpp"
#include "bireconf/width.hpp"

namespace bireconf {

/// TAR instance whose source and target covers are disjoint.
struct DisjointCoverInstance {
  Graph g;
  VertexSubset s;
  VertexSubset t;
  int k = 1;
};

/// Cliquified graph on the non-isolated vertices; `original[i]` maps lift vertex i back to g.
struct CobipartiteLift {
  Graph gbar;
  VertexSubset lbar;
  VertexSubset rbar;
  std::vector<Vertex> original;
  std::vector<Vertex> lifted;  // g vertex -> lift vertex, or -1 for isolated vertices
};

/// Throws NotDisjointCovers unless s and t are disjoint vertex covers of g.
inline void check_disjoint_covers(const DisjointCoverInstance& inst) {
  const int n = inst.g.n();
  if (inst.s.capacity() != n || inst.t.capacity() != n)
    throw Error(ErrorCode::NotDisjointCovers, "cover capacity differs from vertex count");
  if (!inst.g.is_vertex_cover(inst.s)) throw Error(ErrorCode::NotDisjointCovers, "source is not a vertex cover");
  if (!inst.g.is_vertex_cover(inst.t)) throw Error(ErrorCode::NotDisjointCovers, "target is not a vertex cover");
  if (inst.s.intersects(inst.t)) throw Error(ErrorCode::NotDisjointCovers, "source and target intersect");
}

/// Drops isolated vertices, then cliquifies what remains of s and of t.
inline CobipartiteLift lift(const DisjointCoverInstance& inst) {
  check_disjoint_covers(inst);
  auto [core, original] = remove_isolated(inst.g);
  CobipartiteLift out;
  out.original = std::move(original);
  out.lifted.assign(static_cast<std::size_t>(inst.g.n()), -1);
  out.lbar = VertexSubset(core.n());
  out.rbar = VertexSubset(core.n());
  for (std::size_t i = 0; i < out.original.size(); ++i) {
    Vertex v = out.original[i];
    out.lifted[static_cast<std::size_t>(v)] = static_cast<Vertex>(i);
    if (inst.s.contains(v)) out.lbar.insert(static_cast<Vertex>(i));
    if (inst.t.contains(v)) out.rbar.insert(static_cast<Vertex>(i));
  }
  out.gbar = cliquify(cliquify(core, out.lbar), out.rbar);
  return out;
}

namespace detail {

inline std::optional<std::pair<std::size_t, std::size_t>> clique_window(const std::vector<VertexSubset>& bags,
                                                                        const VertexSubset& lbar,
                                                                        const VertexSubset& rbar) {
  for (std::size_t q = 0; q < bags.size(); ++q) {
    if (!lbar.is_subset_of(bags[q])) continue;
    for (std::size_t q2 = q; q2 < bags.size(); ++q2)
      if (rbar.is_subset_of(bags[q2])) return std::make_pair(q, q2);
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

/**
 * Monotone edit sequence from s to t built from a nice decomposition of the
 * lift: add the rest of the first bag holding the s-clique, follow the
 * introduce/forget steps up to the first later bag holding the t-clique,
 * then drop what is not in t. Isolated vertices of s are removed first and
 * isolated vertices of t added last. Markers use g's vertex indices.
 */
inline EditSequence synthesize_monotone(const DisjointCoverInstance& inst, const CobipartiteLift& lf,
                                        const NicePathDecomposition& npd) {
  if (!validate(npd, lf.gbar).empty())
    throw Error(ErrorCode::NoCliqueBag, "not a nice path decomposition of the lifted graph");
  if (npd.width() > inst.k - 1) throw Error(ErrorCode::PreconditionFailed, "decomposition width exceeds k - 1");
  NicePathDecomposition used = npd;
  auto bags = used.bags();
  auto window = detail::clique_window(bags, lf.lbar, lf.rbar);
  if (!window) {
    used = reversed(npd);
    bags = used.bags();
    window = detail::clique_window(bags, lf.lbar, lf.rbar);
  }
  if (!window) throw Error(ErrorCode::NoCliqueBag, "no bag pair holds the two cliques in order");
  auto [q, q2] = *window;

  EditSequence eta;
  auto orig = [&](Vertex v) { return lf.original[static_cast<std::size_t>(v)]; };
  for (Vertex v = 0; v < inst.g.n(); ++v)
    if (inst.s.contains(v) && lf.lifted[static_cast<std::size_t>(v)] < 0) eta.push_back(rem(v));
  (bags[q] - lf.lbar).for_each([&](Vertex v) { eta.push_back(add(orig(v))); });
  for (std::size_t i = q; i < q2; ++i) {
    const NiceStep& st = used.steps[i];
    eta.push_back(st.op == NiceOp::Introduce ? add(orig(st.v)) : rem(orig(st.v)));
  }
  (bags[q2] - lf.rbar).for_each([&](Vertex v) { eta.push_back(rem(orig(v))); });
  for (Vertex v = 0; v < inst.g.n(); ++v)
    if (inst.t.contains(v) && lf.lifted[static_cast<std::size_t>(v)] < 0) eta.push_back(add(v));
  return eta;
}

struct Decision {
  bool reachable = false;
  int width = -1;  // exact pathwidth of the lift
  EditSequence sequence;
  std::vector<VertexSubset> states;
  NicePathDecomposition decomposition;
};

/**
 * Decides TAR reachability of a disjoint-cover instance: reachable iff the
 * lift has pathwidth at most k - 1. An endpoint larger than k is not a state
 * of the reconfiguration graph, so it yields an unreachable verdict.
 */
inline Decision decide(const DisjointCoverInstance& inst, int cap = kWidthCap) {
  CobipartiteLift lf = lift(inst);
  auto pw = pathwidth_exact(lf.gbar, cap);
  Decision d;
  d.width = pw.width;
  d.decomposition = to_nice(pw.decomposition, lf.gbar);
  d.reachable = pw.width <= inst.k - 1 && inst.s.size() <= inst.k && inst.t.size() <= inst.k;
  if (d.reachable) {
    d.sequence = synthesize_monotone(inst, lf, d.decomposition);
    d.states = apply_edits(inst.g, inst.k, inst.s, d.sequence);
  }
  return d;
}

/**
 * Cop schedule on the lift from a reconfiguration sequence s..t of g:
 * occupy the s-clique one vertex at a time, then follow the sequence.
 */
inline CopSchedule strategy_from_sequence(const DisjointCoverInstance& inst, const CobipartiteLift& lf,
                                          const std::vector<VertexSubset>& sigma) {
  if (sigma.empty() || sigma.front() != inst.s || sigma.back() != inst.t)
    throw Error(ErrorCode::InvalidSequence, "sequence must run from source to target");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!is_valid_state(inst.g, Model::tar(inst.k), sigma[i]))
      throw Error(ErrorCode::InvalidSequence, "state is not a cover of size at most k", i);
    if (i > 0 && (sigma[i] ^ sigma[i - 1]).size() != 1)
      throw Error(ErrorCode::InvalidSequence, "consecutive states differ in more than one vertex", i);
  }
  auto to_lift = [&](const VertexSubset& q) {
    VertexSubset out(lf.gbar.n());
    q.for_each([&](Vertex v) {
      Vertex w = lf.lifted[static_cast<std::size_t>(v)];
      if (w >= 0) out.insert(w);
    });
    return out;
  };
  CopSchedule sched;
  VertexSubset cur(lf.gbar.n());
  lf.lbar.for_each([&](Vertex v) {
    cur.insert(v);
    sched.push_back(cur);
  });
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    VertexSubset x = to_lift(sigma[i]);
    if (x != cur) {
      sched.push_back(x);
      cur = x;
    }
  }
  return sched;
}

}  // namespace bireconf
