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
#include <string>
#include <utility>
#include <vector>

#include "bireconf/errors.hpp"
#include "bireconf/graph.hpp"
#include "bireconf/matching.hpp"
#include "bireconf/reconf.hpp"

namespace bireconf {

struct Crown {
  VertexSubset c;
  VertexSubset h;
  std::vector<std::pair<Vertex, Vertex>> matching;  // (c-vertex, h-vertex), ascending by h
  friend bool operator==(const Crown&, const Crown&) = default;
};

/// Empty when `cr` is a crown of g; otherwise the first broken condition.
inline std::string crown_violation(const Graph& g, const Crown& cr) {
  if (cr.c.empty()) return "crown set is empty";
  if (!g.is_independent(cr.c)) return "crown set is not independent";
  if (g.open_neighborhood(cr.c) != cr.h) return "head is not the neighborhood of the crown set";
  VertexSubset used_c(g.n()), used_h(g.n());
  for (auto [c, h] : cr.matching) {
    if (!cr.c.contains(c) || !cr.h.contains(h) || !g.adjacent(c, h)) return "matching edge outside the crown";
    if (used_c.contains(c) || used_h.contains(h)) return "matching reuses a vertex";
    used_c.insert(c);
    used_h.insert(h);
  }
  if (used_h != cr.h) return "matching does not saturate the head";
  return {};
}

/**
 * Crown inside c0: starts from (c0, N(c0)) and deletes Hall
 * violators, found as the alternating-path closure of an unmatched head
 * vertex under a maximum matching, until the head is saturated.
 */
inline std::optional<Crown> find_crown(const Graph& g, const VertexSubset& c0, const VertexSubset& h0) {
  if (!g.is_independent(c0)) throw Error(ErrorCode::NotIndependent, "crown candidate set is not independent");
  if (!g.open_neighborhood(c0).is_subset_of(h0))
    throw Error(ErrorCode::PreconditionFailed, "candidate head does not contain the neighborhood");
  VertexSubset c = c0;
  while (!c.empty()) {
    VertexSubset h = g.open_neighborhood(c);
    Matching m = max_matching(g, h, c);
    Vertex free_h = -1;
    h.for_each([&](Vertex v) {
      if (free_h < 0 && m.mate[static_cast<std::size_t>(v)] < 0) free_h = v;
    });
    if (free_h < 0) {
      Crown cr{c, h, {}};
      h.for_each([&](Vertex v) { cr.matching.emplace_back(m.mate[static_cast<std::size_t>(v)], v); });
      return cr;
    }
    // Alternating closure: head to any crown neighbor, crown vertex to its mate.
    VertexSubset xh(g.n()), xc(g.n());
    std::vector<Vertex> stack{free_h};
    xh.insert(free_h);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (!c.contains(w) || xc.contains(w)) continue;
        xc.insert(w);
        Vertex mate = m.mate[static_cast<std::size_t>(w)];
        if (mate >= 0 && !xh.contains(mate)) {
          xh.insert(mate);
          stack.push_back(mate);
        }
      }
    }
    c -= xc;
  }
  return std::nullopt;
}

/**
 * Crown of G[touch(eta)] whose crown set avoids s and t and whose head lies
 * in both. Returns nullopt when none exists.
 */
inline std::optional<Crown> local_crown(const Graph& g, const EditSequence& eta, const VertexSubset& s,
                                        const VertexSubset& t) {
  std::vector<VertexSubset> states;
  try {
    states = apply_edits(g, g.n(), s, eta);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidSequence, std::string("edit sequence is not valid at the source: ") + e.what());
  }
  if (states.back() != t) throw Error(ErrorCode::InvalidSequence, "edit sequence does not end at the target");
  const VertexSubset x = touch(eta, g.n());
  std::vector<Vertex> old_of_new;
  Graph gx = g.induced(x, &old_of_new);

  VertexSubset head_ok(gx.n()), c0(gx.n());
  for (std::size_t i = 0; i < old_of_new.size(); ++i) {
    Vertex v = old_of_new[i];
    if (s.contains(v) && t.contains(v)) head_ok.insert(static_cast<Vertex>(i));
  }
  for (std::size_t i = 0; i < old_of_new.size(); ++i) {
    Vertex v = old_of_new[i];
    auto vi = static_cast<Vertex>(i);
    if (!s.contains(v) && !t.contains(v) && gx.neighbor_set(vi).is_subset_of(head_ok)) c0.insert(vi);
  }
  auto cr = find_crown(gx, c0, head_ok);
  if (!cr) return std::nullopt;
  auto back = [&](const VertexSubset& in) {
    VertexSubset out(g.n());
    in.for_each([&](Vertex v) { out.insert(old_of_new[static_cast<std::size_t>(v)]); });
    return out;
  };
  Crown out{back(cr->c), back(cr->h), {}};
  for (auto [c, h] : cr->matching)
    out.matching.emplace_back(old_of_new[static_cast<std::size_t>(c)], old_of_new[static_cast<std::size_t>(h)]);
  return out;
}

/// Drops every marker on C ∪ H. Throws HypothesisFailed naming the first unmet condition.
inline EditSequence shorten(const Graph& g, int k, const VertexSubset& s, const EditSequence& eta, const Crown& cr) {
  auto states = apply_edits(g, k, s, eta);
  const VertexSubset& t = states.back();
  const VertexSubset x = touch(eta, g.n());
  auto fail = [](const std::string& what) { throw Error(ErrorCode::HypothesisFailed, what); };
  if (!(cr.c | cr.h).is_subset_of(x)) fail("crown is not inside the touched vertices");
  if (!cr.h.is_subset_of(s)) fail("head not contained in the source");
  if (cr.c.intersects(s)) fail("crown set meets the source");
  if (!cr.h.is_subset_of(t)) fail("head not contained in the target");
  if (cr.c.intersects(t)) fail("crown set meets the target");
  std::vector<Vertex> old_of_new;
  Graph gx = g.induced(x, &old_of_new);
  std::vector<Vertex> new_of_old(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < old_of_new.size(); ++i) new_of_old[static_cast<std::size_t>(old_of_new[i])] = static_cast<Vertex>(i);
  auto to_x = [&](const VertexSubset& in) {
    VertexSubset out(gx.n());
    in.for_each([&](Vertex v) { out.insert(new_of_old[static_cast<std::size_t>(v)]); });
    return out;
  };
  Crown local{to_x(cr.c), to_x(cr.h), {}};
  for (auto [c, h] : cr.matching) {
    if (!x.contains(c) || !x.contains(h)) fail("matching edge outside the touched vertices");
    local.matching.emplace_back(new_of_old[static_cast<std::size_t>(c)], new_of_old[static_cast<std::size_t>(h)]);
  }
  if (auto why = crown_violation(gx, local); !why.empty()) fail("not a crown of the touched subgraph: " + why);

  const VertexSubset drop = cr.c | cr.h;
  EditSequence out;
  for (const Marker& mk : eta)
    if (!drop.contains(mk.v)) out.push_back(mk);
  apply_edits(g, k, s, out);
  return out;
}

}  // namespace bireconf
