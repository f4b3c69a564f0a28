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
#include <array>
#include <bitset>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bireconf/errors.hpp"
#include "bireconf/graph.hpp"
#include "bireconf/matching.hpp"

namespace bireconf {

using Word = std::vector<int>;

/// Word reconfiguration instance over symbols 0..sigma_size-1.
struct WordInstance {
  int sigma_size = 0;
  std::vector<std::pair<int, int>> relation;  // allowed consecutive pairs
  Word ws;
  Word wt;

  [[nodiscard]] bool allowed(int a, int b) const {
    return std::find(relation.begin(), relation.end(), std::make_pair(a, b)) != relation.end();
  }
  [[nodiscard]] int forbidden_count() const {
    int m = 0;
    for (int a = 0; a < sigma_size; ++a)
      for (int b = 0; b < sigma_size; ++b) m += allowed(a, b) ? 0 : 1;
    return m;
  }
  [[nodiscard]] bool is_word(const Word& w) const {
    for (int s : w)
      if (s < 0 || s >= sigma_size) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (!allowed(w[i], w[i + 1])) return false;
    return true;
  }
};

enum class RoleKind { X, EvenHub, OddHub, Z1, Z2, CageInternal };

/// Positions are 1-based so that parity reads as in the construction.
struct Role {
  RoleKind kind = RoleKind::X;
  int pos = 0;
  int symbol = -1;
  int cage = -1;
  int f = 0;  // 1..8 for cage-internal vertices
  friend bool operator==(const Role&, const Role&) = default;
};

inline std::string describe(const Role& r) {
  switch (r.kind) {
    case RoleKind::X: return "x(" + std::to_string(r.pos) + "," + std::to_string(r.symbol) + ")";
    case RoleKind::EvenHub: return "e(" + std::to_string(r.pos) + ")";
    case RoleKind::OddHub: return "o(" + std::to_string(r.pos) + ")";
    case RoleKind::Z1: return "z1";
    case RoleKind::Z2: return "z2";
    case RoleKind::CageInternal: return "f" + std::to_string(r.f) + "@" + std::to_string(r.cage);
  }
  return "?";
}

/// Endpoints u (h1) and v (h2) plus f[0..7] = f1..f8.
struct Cage {
  Vertex u = -1;
  Vertex v = -1;
  std::array<Vertex, 8> f{};
  friend bool operator==(const Cage&, const Cage&) = default;
};

namespace detail {

// Local numbering: 0 = h1, 1 = h2, 2 + i = f_{i+1}.
inline constexpr std::array<std::pair<int, int>, 17> kCageEdges{{{0, 2},
                                                                 {0, 4},
                                                                 {0, 7},
                                                                 {0, 9},
                                                                 {1, 3},
                                                                 {1, 5},
                                                                 {1, 6},
                                                                 {1, 8},
                                                                 {2, 3},
                                                                 {3, 4},
                                                                 {4, 5},
                                                                 {2, 6},
                                                                 {6, 7},
                                                                 {7, 5},
                                                                 {2, 8},
                                                                 {8, 9},
                                                                 {9, 5}}};

inline Cage append_cage(std::vector<Edge>& edges, Vertex u, Vertex v, Vertex first) {
  Cage c{u, v, {}};
  for (int i = 0; i < 8; ++i) c.f[static_cast<std::size_t>(i)] = first + i;
  auto global = [&](int local) { return local == 0 ? u : local == 1 ? v : first + (local - 2); };
  for (auto [a, b] : kCageEdges) edges.emplace_back(global(a), global(b));
  return c;
}

}  // namespace detail

/// Attaches a fresh extended cage between u (as h1) and v (as h2).
inline std::pair<Graph, Cage> build_cage(const Graph& g, Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) throw Error(ErrorCode::PreconditionFailed, "cage endpoint out of range");
  if (u == v) throw Error(ErrorCode::EndpointsAdjacent, "cage endpoints coincide");
  if (g.adjacent(u, v)) throw Error(ErrorCode::EndpointsAdjacent, "cage endpoints are adjacent");
  std::vector<Edge> edges = g.edges();
  Cage c = detail::append_cage(edges, u, v, g.n());
  return {Graph(g.n() + 8, edges), c};
}

struct CageInstance {
  Graph g;
  int k = 0;
  int n = 0;  // word length
  int sigma_size = 0;
  std::vector<char> allowed;  // sigma_size * sigma_size
  std::vector<Role> roles;
  std::vector<Cage> cages;
  std::vector<std::vector<int>> cages_at;  // per vertex, cages having it as an endpoint

  [[nodiscard]] Vertex x(int pos, int symbol) const { return (pos - 1) * sigma_size + symbol; }
  [[nodiscard]] Vertex hub(int pos) const { return n * sigma_size + pos - 1; }
  [[nodiscard]] Vertex z1() const { return n * sigma_size + n; }
  [[nodiscard]] Vertex z2() const { return z1() + 1; }
  [[nodiscard]] int outer_count() const { return z2() + 1; }
  [[nodiscard]] bool allows(int a, int b) const {
    return allowed[static_cast<std::size_t>(a * sigma_size + b)] != 0;
  }
  [[nodiscard]] bool is_word(const Word& w) const {
    if (static_cast<int>(w.size()) != n) return false;
    for (int s : w)
      if (s < 0 || s >= sigma_size) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (!allows(w[i], w[i + 1])) return false;
    return true;
  }
};

/// Vertex count of the construction: n columns of |Σ| vertices, n hubs,
/// z1, z2 and eight vertices per cage.
inline int reduction_vertex_count(int sigma_size, int n, int m) {
  return n * (sigma_size + 1) + 2 + 8 * (m * (n - 1) + n);
}
inline int reduction_token_count(int n, int m) { return n + 1 + 3 * (m * (n - 1) + n); }

/// Token set of the strictly well-formed set I_w.
inline VertexSubset independent_set_of(const CageInstance& ci, const Word& w, bool switch_on_z1 = true) {
  if (!ci.is_word(w)) throw Error(ErrorCode::NotAWord, "string is not a word of the instance");
  VertexSubset s(ci.g.n());
  s.insert(switch_on_z1 ? ci.z1() : ci.z2());
  for (int pos = 1; pos <= ci.n; ++pos) s.insert(ci.x(pos, w[static_cast<std::size_t>(pos - 1)]));
  for (const Cage& c : ci.cages) {
    const bool v_taken = s.contains(c.v);
    for (int idx : v_taken ? std::array<int, 3>{2, 5, 7} : std::array<int, 3>{1, 4, 6})
      s.insert(c.f[static_cast<std::size_t>(idx)]);
  }
  return s;
}

struct Reduction {
  CageInstance ci;
  VertexSubset i_ws;
  VertexSubset i_wt;
};

/**
 * Builds the cage graph of a word instance. Cages between columns come
 * first (by position, then symbol pair), then one hub cage per position:
 * (o^i, z1) with o^i as h1 for odd i, (z2, e^i) with z2 as h1 for even i.
 */
inline Reduction reduce(const WordInstance& w) {
  const int S = w.sigma_size;
  const int n = static_cast<int>(w.ws.size());
  if (S < 1) throw Error(ErrorCode::PreconditionFailed, "alphabet must be non-empty");
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::PreconditionFailed, "word length must be even and at least 2");
  if (w.wt.size() != w.ws.size()) throw Error(ErrorCode::NotAWord, "source and target lengths differ");
  for (auto [a, b] : w.relation)
    if (a < 0 || b < 0 || a >= S || b >= S) throw Error(ErrorCode::PreconditionFailed, "relation symbol out of range");
  if (!w.is_word(w.ws)) throw Error(ErrorCode::NotAWord, "source string is not a word");
  if (!w.is_word(w.wt)) throw Error(ErrorCode::NotAWord, "target string is not a word");

  CageInstance ci;
  ci.n = n;
  ci.sigma_size = S;
  ci.allowed.assign(static_cast<std::size_t>(S * S), 0);
  for (auto [a, b] : w.relation) ci.allowed[static_cast<std::size_t>(a * S + b)] = 1;

  std::vector<Edge> edges;
  for (int pos = 1; pos <= n; ++pos) {
    for (int j = 0; j < S; ++j) {
      ci.roles.push_back({RoleKind::X, pos, j, -1, 0});
      edges.emplace_back(ci.x(pos, j), ci.hub(pos));
    }
  }
  for (int pos = 1; pos <= n; ++pos) ci.roles.push_back({pos % 2 ? RoleKind::OddHub : RoleKind::EvenHub, pos, -1, -1, 0});
  ci.roles.push_back({RoleKind::Z1, 0, -1, -1, 0});
  ci.roles.push_back({RoleKind::Z2, 0, -1, -1, 0});
  edges.emplace_back(ci.z1(), ci.z2());

  auto add_cage = [&](Vertex u, Vertex v) {
    const auto id = static_cast<int>(ci.cages.size());
    ci.cages.push_back(detail::append_cage(edges, u, v, static_cast<Vertex>(ci.roles.size())));
    for (int f = 1; f <= 8; ++f) ci.roles.push_back({RoleKind::CageInternal, 0, -1, id, f});
  };
  for (int pos = 1; pos < n; ++pos)
    for (int j = 0; j < S; ++j)
      for (int j2 = 0; j2 < S; ++j2)
        if (!ci.allows(j, j2)) add_cage(ci.x(pos, j), ci.x(pos + 1, j2));
  for (int pos = 1; pos <= n; ++pos) {
    if (pos % 2) add_cage(ci.hub(pos), ci.z1());
    else add_cage(ci.z2(), ci.hub(pos));
  }

  const int nv = static_cast<int>(ci.roles.size());
  ci.g = Graph(nv, edges);
  ci.k = reduction_token_count(n, w.forbidden_count());
  ci.cages_at.assign(static_cast<std::size_t>(nv), {});
  for (std::size_t c = 0; c < ci.cages.size(); ++c) {
    ci.cages_at[static_cast<std::size_t>(ci.cages[c].u)].push_back(static_cast<int>(c));
    ci.cages_at[static_cast<std::size_t>(ci.cages[c].v)].push_back(static_cast<int>(c));
  }
  Reduction out{std::move(ci), {}, {}};
  out.i_ws = independent_set_of(out.ci, w.ws);
  out.i_wt = independent_set_of(out.ci, w.wt);
  return out;
}

// ---------------------------------------------------------------------------
// Token census

struct TokenLabeling {
  Vertex switch_token = -1;
  std::vector<Vertex> sigma;                  // sigma[pos - 1]
  std::vector<std::array<Vertex, 3>> caged;   // per cage, ascending
};

enum class Census { StrictlyWellFormed, WellFormed, Malformed };

struct Classification {
  Census kind = Census::Malformed;
  TokenLabeling labeling;  // set unless Malformed
  std::string reason;      // set when Malformed
};

namespace detail {

// Token-to-slot assignment: slot 0 is the switch, 1..n the Σ positions,
// then three slots per cage.
inline std::optional<TokenLabeling> label_tokens(const CageInstance& ci, const VertexSubset& tokens, bool strict) {
  std::vector<Vertex> tok = tokens.members();
  const int t = static_cast<int>(tok.size());
  const int slots = 1 + ci.n + 3 * static_cast<int>(ci.cages.size());
  if (t != slots) return std::nullopt;
  std::vector<Edge> es;
  auto slot = [&](int s) { return t + s; };
  for (int i = 0; i < t; ++i) {
    const Vertex v = tok[static_cast<std::size_t>(i)];
    const Role& r = ci.roles[static_cast<std::size_t>(v)];
    switch (r.kind) {
      case RoleKind::Z1:
      case RoleKind::Z2: es.emplace_back(i, slot(0)); break;
      case RoleKind::X: es.emplace_back(i, slot(r.pos)); break;
      case RoleKind::EvenHub:
      case RoleKind::OddHub:
        if (!strict) es.emplace_back(i, slot(r.pos));
        break;
      case RoleKind::CageInternal:
        for (int d = 0; d < 3; ++d) es.emplace_back(i, slot(1 + ci.n + 3 * r.cage + d));
        break;
    }
    for (int c : ci.cages_at[static_cast<std::size_t>(v)])
      for (int d = 0; d < 3; ++d) es.emplace_back(i, slot(1 + ci.n + 3 * c + d));
  }
  Graph aux(2 * t, es);
  VertexSubset left(2 * t), right(2 * t);
  for (int i = 0; i < t; ++i) {
    left.insert(i);
    right.insert(t + i);
  }
  Matching m = max_matching(aux, left, right);
  if (m.size != t) return std::nullopt;
  TokenLabeling lab;
  lab.sigma.assign(static_cast<std::size_t>(ci.n), -1);
  lab.caged.assign(ci.cages.size(), {-1, -1, -1});
  for (int i = 0; i < t; ++i) {
    const int s = m.mate[static_cast<std::size_t>(i)] - t;
    const Vertex v = tok[static_cast<std::size_t>(i)];
    if (s == 0) lab.switch_token = v;
    else if (s <= ci.n) lab.sigma[static_cast<std::size_t>(s - 1)] = v;
    else {
      const int c = (s - 1 - ci.n) / 3;
      lab.caged[static_cast<std::size_t>(c)][static_cast<std::size_t>((s - 1 - ci.n) % 3)] = v;
    }
  }
  for (auto& tri : lab.caged) std::sort(tri.begin(), tri.end());
  return lab;
}

inline std::string census_failure(const CageInstance& ci, const VertexSubset& s) {
  if (!s.contains(ci.z1()) && !s.contains(ci.z2())) return "switch token absent";
  for (int pos = 1; pos <= ci.n; ++pos) {
    int count = s.contains(ci.hub(pos)) ? 1 : 0;
    for (int j = 0; j < ci.sigma_size; ++j) count += s.contains(ci.x(pos, j)) ? 1 : 0;
    if (count == 0) return "no token for position " + std::to_string(pos);
  }
  for (std::size_t c = 0; c < ci.cages.size(); ++c) {
    const Cage& cg = ci.cages[c];
    int inner = 0;
    for (Vertex f : cg.f) inner += s.contains(f) ? 1 : 0;
    int ext = inner + (s.contains(cg.u) ? 1 : 0) + (s.contains(cg.v) ? 1 : 0);
    if (inner > 3) return "cage " + std::to_string(c) + " holds more than three tokens";
    if (ext < 3) return "cage " + std::to_string(c) + " holds fewer than three tokens";
  }
  return "no consistent token labeling";
}

}  // namespace detail

inline Classification classify(const CageInstance& ci, const VertexSubset& s) {
  if (s.capacity() != ci.g.n()) throw Error(ErrorCode::PreconditionFailed, "token set has the wrong capacity");
  if (!ci.g.is_independent(s)) throw Error(ErrorCode::NotIndependent, "token set is not independent");
  if (s.size() != ci.k)
    throw Error(ErrorCode::WrongSize, "token set has " + std::to_string(s.size()) + " tokens, expected " + std::to_string(ci.k));
  if (auto lab = detail::label_tokens(ci, s, true)) return {Census::StrictlyWellFormed, std::move(*lab), {}};
  if (auto lab = detail::label_tokens(ci, s, false)) return {Census::WellFormed, std::move(*lab), {}};
  return {Census::Malformed, {}, detail::census_failure(ci, s)};
}

/// Reads the word off a strictly well-formed set.
inline Word word_of(const CageInstance& ci, const VertexSubset& s) {
  Classification cl = classify(ci, s);
  if (cl.kind != Census::StrictlyWellFormed) throw Error(ErrorCode::NotStrict, "token set is not strictly well-formed");
  Word w;
  for (Vertex v : cl.labeling.sigma) w.push_back(ci.roles[static_cast<std::size_t>(v)].symbol);
  if (!ci.is_word(w)) throw Error(ErrorCode::HypothesisFailed, "read-off string is not a word");
  return w;
}

// ---------------------------------------------------------------------------
// Token sliding sequences

struct Slide {
  Vertex from = -1;
  Vertex to = -1;
  friend bool operator==(const Slide&, const Slide&) = default;
};

/// States visited by `slides` from `start`, start included. Throws
/// InvalidSlide with the index of the first illegal slide.
inline std::vector<VertexSubset> apply_slides(const Graph& g, const VertexSubset& start, const std::vector<Slide>& slides) {
  if (!g.is_independent(start)) throw Error(ErrorCode::NotIndependent, "start set is not independent");
  std::vector<VertexSubset> states{start};
  VertexSubset cur = start;
  for (std::size_t i = 0; i < slides.size(); ++i) {
    auto [a, b] = slides[i];
    auto bad = [&](const std::string& why) { throw Error(ErrorCode::InvalidSlide, why, i); };
    if (a < 0 || b < 0 || a >= g.n() || b >= g.n()) bad("vertex out of range");
    if (!cur.contains(a)) bad("no token on " + std::to_string(a));
    if (!g.adjacent(a, b)) bad(std::to_string(a) + " and " + std::to_string(b) + " are not adjacent");
    if (cur.contains(b)) bad("vertex " + std::to_string(b) + " already holds a token");
    cur.erase(a);
    if (g.neighbor_set(b).intersects(cur)) bad("vertex " + std::to_string(b) + " has a token neighbor");
    cur.insert(b);
    states.push_back(cur);
  }
  return states;
}

namespace detail {

class SlideRecorder {
 public:
  SlideRecorder(const CageInstance& ci, VertexSubset start) : ci_(ci), cur_(std::move(start)) {}

  void slide(Vertex a, Vertex b) {
    cur_.erase(a);
    if (!ci_.g.adjacent(a, b) || cur_.contains(b) || ci_.g.neighbor_set(b).intersects(cur_))
      throw Error(ErrorCode::InvalidSlide, "synthesized slide is illegal", out_.size());
    cur_.insert(b);
    out_.push_back({a, b});
  }

  /// Moves the three caged tokens next to the endpoint other than `free_me`.
  void arm_away_from(const Cage& c, Vertex free_me) {
    // Pairs (f2,f3), (f5,f6), (f7,f8); first members touch h2, second h1.
    const bool to_h2_side = free_me == c.u;
    for (auto [near_h2, near_h1] : {std::pair{1, 2}, std::pair{4, 5}, std::pair{6, 7}}) {
      Vertex a = c.f[static_cast<std::size_t>(near_h2)], b = c.f[static_cast<std::size_t>(near_h1)];
      if (to_h2_side && cur_.contains(b)) slide(b, a);
      if (!to_h2_side && cur_.contains(a)) slide(a, b);
    }
  }

  [[nodiscard]] const VertexSubset& state() const { return cur_; }
  std::vector<Slide> take() { return std::move(out_); }

 private:
  const CageInstance& ci_;
  VertexSubset cur_;
  std::vector<Slide> out_;
};

}  // namespace detail

/**
 * Slides from I_from to I_to (switch on z1 at both ends) for words that
 * differ in positions of one parity only. Cages are re-armed only when they
 * block the next slide; changed positions are handled in ascending order.
 */
inline std::vector<Slide> forward_sequence(const CageInstance& ci, const Word& from, const Word& to) {
  if (!ci.is_word(from)) throw Error(ErrorCode::NotAWord, "source string is not a word");
  if (!ci.is_word(to)) throw Error(ErrorCode::NotAWord, "target string is not a word");
  std::vector<int> diff;
  for (int pos = 1; pos <= ci.n; ++pos)
    if (from[static_cast<std::size_t>(pos - 1)] != to[static_cast<std::size_t>(pos - 1)]) diff.push_back(pos);
  if (diff.empty()) return {};
  const int parity = diff.front() % 2;
  for (int pos : diff)
    if (pos % 2 != parity) throw Error(ErrorCode::ParityMixed, "words differ in both odd and even positions");

  const VertexSubset target = independent_set_of(ci, to);
  detail::SlideRecorder rec(ci, independent_set_of(ci, from));
  auto hub_cage = [&](int pos) -> const Cage& {
    for (int c : ci.cages_at[static_cast<std::size_t>(ci.hub(pos))]) return ci.cages[static_cast<std::size_t>(c)];
    throw Error(ErrorCode::PreconditionFailed, "hub without cage");
  };
  const bool odd = parity == 1;
  if (odd) {
    for (int pos = 2; pos <= ci.n; pos += 2) rec.arm_away_from(hub_cage(pos), ci.z2());
    rec.slide(ci.z1(), ci.z2());
  }
  for (int pos : diff) {
    rec.arm_away_from(hub_cage(pos), ci.hub(pos));
    rec.slide(ci.x(pos, from[static_cast<std::size_t>(pos - 1)]), ci.hub(pos));
  }
  for (int pos : diff) {
    const Vertex dest = ci.x(pos, to[static_cast<std::size_t>(pos - 1)]);
    for (int c : ci.cages_at[static_cast<std::size_t>(dest)]) rec.arm_away_from(ci.cages[static_cast<std::size_t>(c)], dest);
    rec.slide(ci.hub(pos), dest);
  }
  // Restore the arming of I_to.
  for (const Cage& c : ci.cages) rec.arm_away_from(c, target.contains(c.f[1]) ? c.u : c.v);
  if (odd) rec.slide(ci.z2(), ci.z1());
  if (rec.state() != target) throw Error(ErrorCode::HypothesisFailed, "synthesized sequence misses the target set");
  return rec.take();
}

namespace detail {

inline bool is_switch_slide(const CageInstance& ci, const Slide& s) {
  return (s.from == ci.z1() && s.to == ci.z2()) || (s.from == ci.z2() && s.to == ci.z1());
}

inline void push_distinct(std::vector<Word>& out, Word w) {
  if (out.empty() || out.back() != w) out.push_back(std::move(w));
}

}  // namespace detail

/// Words of the states right after each switch slide, consecutive duplicates removed.
inline std::vector<Word> switch_words(const CageInstance& ci, const std::vector<Slide>& slides, const VertexSubset& i0) {
  auto states = apply_slides(ci.g, i0, slides);
  std::vector<Word> out;
  for (std::size_t i = 0; i < slides.size(); ++i)
    if (detail::is_switch_slide(ci, slides[i])) detail::push_distinct(out, word_of(ci, states[i + 1]));
  return out;
}

/**
 * Word sequence of a slide sequence from a strictly well-formed i0: the word
 * of i0, the words after each switch slide, and the word of the final set
 * when it is strict; consecutive duplicates removed.
 */
inline std::vector<Word> extract_words(const CageInstance& ci, const std::vector<Slide>& slides, const VertexSubset& i0) {
  auto states = apply_slides(ci.g, i0, slides);
  std::vector<Word> out{word_of(ci, i0)};
  for (std::size_t i = 0; i < slides.size(); ++i)
    if (detail::is_switch_slide(ci, slides[i])) detail::push_distinct(out, word_of(ci, states[i + 1]));
  if (classify(ci, states.back()).kind == Census::StrictlyWellFormed) detail::push_distinct(out, word_of(ci, states.back()));
  return out;
}

/// True when a and b differ, and only in positions of one parity.
inline bool differ_in_one_parity(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  bool odd = false, even = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ((i + 1) % 2 ? odd : even) = true;
  return odd != even;
}

// ---------------------------------------------------------------------------
// Word reconfiguration search

enum class WordMove { EvenOdd, SingleSymbol };

struct WordSearch {
  bool reachable = false;
  std::vector<Word> path;       // ws..wt when reachable
  std::vector<Word> component;  // every word reachable from ws, in discovery order
};

namespace detail {

inline Word decode_word(std::uint64_t code, int sigma, int n) {
  Word w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    w[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint64_t>(sigma));
    code /= static_cast<std::uint64_t>(sigma);
  }
  return w;
}

inline std::uint64_t encode_word(const Word& w, int sigma) {
  std::uint64_t code = 0;
  for (std::size_t i = w.size(); i-- > 0;) code = code * static_cast<std::uint64_t>(sigma) + static_cast<std::uint64_t>(w[i]);
  return code;
}

}  // namespace detail

/// Breadth-first search over words of length |ws|. Throws CapacityExceeded
/// when |Σ|^n exceeds the budget.
inline WordSearch word_bfs(const WordInstance& w, WordMove move, std::size_t budget = 1'000'000) {
  const int S = w.sigma_size;
  const int n = static_cast<int>(w.ws.size());
  if (!w.is_word(w.ws) || !w.is_word(w.wt) || w.wt.size() != w.ws.size())
    throw Error(ErrorCode::NotAWord, "endpoints must be words of equal length");
  double space = 1;
  for (int i = 0; i < n; ++i) space *= S;
  if (space > static_cast<double>(budget)) throw Error(ErrorCode::CapacityExceeded, "word space exceeds the budget");

  std::unordered_map<std::uint64_t, std::uint64_t> parent;
  std::vector<std::uint64_t> order{detail::encode_word(w.ws, S)};
  parent.emplace(order[0], order[0]);
  auto visit = [&](std::uint64_t from, const Word& cand) {
    if (!w.is_word(cand)) return;
    auto code = detail::encode_word(cand, S);
    if (parent.emplace(code, from).second) order.push_back(code);
  };
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::uint64_t cur = order[head];
    const Word base = detail::decode_word(cur, S, n);
    if (move == WordMove::SingleSymbol) {
      for (int i = 0; i < n; ++i)
        for (int s = 0; s < S; ++s) {
          if (s == base[static_cast<std::size_t>(i)]) continue;
          Word cand = base;
          cand[static_cast<std::size_t>(i)] = s;
          visit(cur, cand);
        }
      continue;
    }
    for (int par = 0; par < 2; ++par) {
      std::vector<int> idx;
      for (int i = par; i < n; i += 2) idx.push_back(i);
      std::uint64_t combos = 1;
      for (std::size_t i = 0; i < idx.size(); ++i) combos *= static_cast<std::uint64_t>(S);
      for (std::uint64_t c = 0; c < combos; ++c) {
        Word cand = base;
        std::uint64_t r = c;
        for (int i : idx) {
          cand[static_cast<std::size_t>(i)] = static_cast<int>(r % static_cast<std::uint64_t>(S));
          r /= static_cast<std::uint64_t>(S);
        }
        if (cand != base) visit(cur, cand);
      }
    }
  }
  WordSearch out;
  for (auto code : order) out.component.push_back(detail::decode_word(code, S, n));
  const auto t = detail::encode_word(w.wt, S);
  if (parent.count(t)) {
    out.reachable = true;
    for (auto cur = t;; cur = parent[cur]) {
      out.path.push_back(detail::decode_word(cur, S, n));
      if (parent[cur] == cur) break;
    }
    std::reverse(out.path.begin(), out.path.end());
  }
  return out;
}

inline WordSearch even_odd_word_bfs(const WordInstance& w, std::size_t budget = 1'000'000) {
  return word_bfs(w, WordMove::EvenOdd, budget);
}

/// Every word of length n over the instance's relation, in code order.
inline std::vector<Word> all_words(const WordInstance& w, int n) {
  std::vector<Word> out;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(w.sigma_size);
  for (std::uint64_t c = 0; c < total; ++c) {
    Word cand = detail::decode_word(c, w.sigma_size, n);
    if (w.is_word(cand)) out.push_back(std::move(cand));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Token sliding search with cage interiors folded

namespace detail {

/// Cage interior f1..f8 as bits 0..7.
struct CageInterior {
  std::array<std::uint8_t, 8> nbr{};
  std::uint8_t near[2] = {0xA5, 0x5A};  // interior neighbors of h1 and h2
  std::array<bool, 256> independent{};

  CageInterior() {
    for (auto [a, b] : kCageEdges) {
      if (a < 2) continue;
      nbr[static_cast<std::size_t>(a - 2)] |= static_cast<std::uint8_t>(1U << (b - 2));
      nbr[static_cast<std::size_t>(b - 2)] |= static_cast<std::uint8_t>(1U << (a - 2));
    }
    for (unsigned c = 0; c < 256; ++c) {
      bool ok = true;
      for (unsigned i = 0; i < 8; ++i)
        if ((c >> i & 1U) && (nbr[i] & c)) ok = false;
      independent[c] = ok;
    }
  }
  [[nodiscard]] bool fits(unsigned c, unsigned occ) const {
    return independent[c] && !((occ & 1U) && (c & near[0])) && !((occ & 2U) && (c & near[1]));
  }
};

inline const CageInterior& cage_interior() {
  static const CageInterior t;
  return t;
}

using ConfigSet = std::bitset<256>;

/// Interned interior classes: a set of configurations closed under interior
/// slides at a fixed endpoint occupancy. Transition results are memoized.
class ClassTable {
 public:
  int intern_closure(ConfigSet seed, unsigned occ) {
    if (seed.none()) return -1;
    const CageInterior& t = cage_interior();
    std::vector<unsigned> stack;
    for (unsigned c = 0; c < 256; ++c)
      if (seed[c]) stack.push_back(c);
    while (!stack.empty()) {
      unsigned c = stack.back();
      stack.pop_back();
      for (unsigned a = 0; a < 8; ++a) {
        if (!(c >> a & 1U)) continue;
        for (unsigned b = 0; b < 8; ++b) {
          if (!(t.nbr[a] >> b & 1U) || (c >> b & 1U)) continue;
          unsigned d = (c & ~(1U << a)) | (1U << b);
          if (!t.fits(d, occ) || seed[d]) continue;
          seed.set(d);
          stack.push_back(d);
        }
      }
    }
    std::string key = seed.to_string() + char('0' + occ);
    auto [it, fresh] = ids_.emplace(key, static_cast<int>(sets_.size()));
    if (fresh) {
      sets_.push_back(seed);
      occ_.push_back(occ);
    }
    return it->second;
  }

  [[nodiscard]] const ConfigSet& set(int id) const { return sets_[static_cast<std::size_t>(id)]; }
  [[nodiscard]] unsigned occupancy(int id) const { return occ_[static_cast<std::size_t>(id)]; }
  [[nodiscard]] std::size_t size() const { return sets_.size(); }

  /// Event codes: 0/1 occupy h1/h2, 2/3 vacate, 4 + 8e + x enter f_x from h_e,
  /// 20 + 8e + x leave f_x onto h_e. Returns -1 when no member allows it.
  int step(int id, int event) {
    const auto key = static_cast<std::uint64_t>(id) << 8 | static_cast<std::uint64_t>(event);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const CageInterior& t = cage_interior();
    const ConfigSet& src = set(id);
    const unsigned occ = occupancy(id);
    ConfigSet seed;
    unsigned nocc = occ;
    if (event < 2) {
      nocc = occ | (1U << event);
      for (unsigned c = 0; c < 256; ++c)
        if (src[c] && t.fits(c, nocc)) seed.set(c);
    } else if (event < 4) {
      nocc = occ & ~(1U << (event - 2));
      seed = src;
    } else if (event < 20) {
      const int e = (event - 4) / 8, x = (event - 4) % 8;
      nocc = occ & ~(1U << e);
      for (unsigned c = 0; c < 256; ++c) {
        if (!src[c] || (c >> x & 1U) || (t.nbr[static_cast<std::size_t>(x)] & c)) continue;
        unsigned d = c | (1U << x);
        if (t.fits(d, nocc)) seed.set(d);
      }
    } else {
      const int e = (event - 20) / 8, x = (event - 20) % 8;
      nocc = occ | (1U << e);
      for (unsigned c = 0; c < 256; ++c) {
        if (!src[c] || !(c >> x & 1U)) continue;
        unsigned d = c & ~(1U << x);
        if (t.fits(d, nocc)) seed.set(d);
      }
    }
    int out = intern_closure(seed, nocc);
    memo_.emplace(key, out);
    return out;
  }

 private:
  std::vector<ConfigSet> sets_;
  std::vector<unsigned> occ_;
  std::unordered_map<std::string, int> ids_;
  std::unordered_map<std::uint64_t, int> memo_;
};

struct QuotientKeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : k) h = (h ^ x) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

/**
 * Token-sliding reachability on a cage instance where each cage interior is
 * replaced by the set of interior configurations it can be in. Every member
 * of a reached class combination is reachable and every reachable set lies
 * in one, so membership is exact; distances are not kept.
 */
class CageQuotientReach {
 public:
  CageQuotientReach(const CageInstance& ci, const VertexSubset& source, std::size_t budget = 2'000'000)
      : ci_(&ci), table_(std::make_shared<detail::ClassTable>()) {
    if (ci.outer_count() > 32) throw Error(ErrorCode::TooLarge, "quotient search supports at most 32 non-cage vertices");
    if (!ci.g.is_independent(source)) throw Error(ErrorCode::NotIndependent, "source is not independent");
    const std::size_t nc = ci.cages.size();
    const int outer = ci.outer_count();
    outer_nbrs_.assign(static_cast<std::size_t>(outer), {});
    for (Vertex v = 0; v < outer; ++v)
      for (Vertex w : ci.g.neighbors(v))
        if (w < outer) outer_nbrs_[static_cast<std::size_t>(v)].push_back(w);

    Key start(1 + nc);
    start[0] = outer_mask(source);
    for (std::size_t c = 0; c < nc; ++c) {
      detail::ConfigSet seed;
      seed.set(interior_of(source, c));
      start[1 + c] = static_cast<std::uint32_t>(table_->intern_closure(seed, occupancy(start[0], c)));
    }
    index_.emplace(start, 0);
    states_.push_back(start);
    for (std::size_t head = 0; head < states_.size(); ++head) {
      const Key cur = states_[head];
      expand(cur, [&](Key&& nxt) {
        if (index_.count(nxt)) return;
        if (states_.size() >= budget) throw BudgetExceeded(states_.size() + 1, budget);
        index_.emplace(nxt, static_cast<int>(states_.size()));
        by_outer_[nxt[0]].push_back(static_cast<int>(states_.size()));
        states_.push_back(std::move(nxt));
      });
    }
    by_outer_[start[0]].push_back(0);
  }

  [[nodiscard]] std::size_t size() const { return states_.size(); }
  [[nodiscard]] std::size_t class_count() const { return table_->size(); }

  [[nodiscard]] bool contains(const VertexSubset& s) const {
    auto it = by_outer_.find(outer_mask(s));
    if (it == by_outer_.end()) return false;
    for (int id : it->second) {
      const Key& k = states_[static_cast<std::size_t>(id)];
      bool all = true;
      for (std::size_t c = 0; c < ci_->cages.size() && all; ++c)
        all = table_->set(static_cast<int>(k[1 + c]))[interior_of(s, c)];
      if (all) return true;
    }
    return false;
  }

  /// Calls fn(outer token set, per-cage configuration sets) for every reached class combination.
  template <class Fn>
  void for_each_class(Fn&& fn) const {
    std::vector<const detail::ConfigSet*> sets(ci_->cages.size());
    for (const Key& k : states_) {
      VertexSubset outer(ci_->g.n());
      for (int v = 0; v < ci_->outer_count(); ++v)
        if (k[0] >> v & 1U) outer.insert(v);
      for (std::size_t c = 0; c < sets.size(); ++c) sets[c] = &table_->set(static_cast<int>(k[1 + c]));
      fn(outer, sets);
    }
  }

 private:
  using Key = std::vector<std::uint32_t>;

  [[nodiscard]] std::uint32_t outer_mask(const VertexSubset& s) const {
    std::uint32_t m = 0;
    for (int v = 0; v < ci_->outer_count(); ++v)
      if (s.contains(v)) m |= 1U << v;
    return m;
  }
  [[nodiscard]] unsigned interior_of(const VertexSubset& s, std::size_t c) const {
    unsigned m = 0;
    for (unsigned i = 0; i < 8; ++i)
      if (s.contains(ci_->cages[c].f[i])) m |= 1U << i;
    return m;
  }
  [[nodiscard]] unsigned occupancy(std::uint32_t outer, std::size_t c) const {
    const Cage& cg = ci_->cages[c];
    return (outer >> cg.u & 1U) | ((outer >> cg.v & 1U) << 1);
  }
  [[nodiscard]] int endpoint_index(std::size_t c, Vertex v) const { return ci_->cages[c].u == v ? 0 : 1; }

  // Occupy or vacate v in every cage attached to it except `skip`. False if some cage refuses.
  bool retarget(Key& k, Vertex v, bool occupy, int skip) const {
    for (int c : ci_->cages_at[static_cast<std::size_t>(v)]) {
      if (c == skip) continue;
      const auto cu = static_cast<std::size_t>(c);
      int e = endpoint_index(cu, v);
      int r = table_->step(static_cast<int>(k[1 + cu]), occupy ? e : 2 + e);
      if (r < 0) return false;
      k[1 + cu] = static_cast<std::uint32_t>(r);
    }
    return true;
  }

  [[nodiscard]] bool outer_free_around(std::uint32_t outer, Vertex b, Vertex except) const {
    for (Vertex y : outer_nbrs_[static_cast<std::size_t>(b)])
      if (y != except && (outer >> y & 1U)) return false;
    return true;
  }

  template <class Emit>
  void expand(const Key& cur, Emit&& emit) const {
    const std::uint32_t outer = cur[0];
    const int n_outer = ci_->outer_count();
    for (Vertex a = 0; a < n_outer; ++a) {
      if (!(outer >> a & 1U)) continue;
      // Outer to outer.
      for (Vertex b : outer_nbrs_[static_cast<std::size_t>(a)]) {
        if (outer >> b & 1U || !outer_free_around(outer, b, a)) continue;
        Key nxt = cur;
        nxt[0] = (outer & ~(1U << a)) | (1U << b);
        if (!retarget(nxt, b, true, -1)) continue;
        retarget(nxt, a, false, -1);
        emit(std::move(nxt));
      }
      // Endpoint into its cage.
      for (int c : ci_->cages_at[static_cast<std::size_t>(a)]) {
        const auto cu = static_cast<std::size_t>(c);
        const int e = endpoint_index(cu, a);
        for (int x = 0; x < 8; ++x) {
          if (!(detail::cage_interior().near[e] >> x & 1U)) continue;
          int r = table_->step(static_cast<int>(cur[1 + cu]), 4 + 8 * e + x);
          if (r < 0) continue;
          Key nxt = cur;
          nxt[0] = outer & ~(1U << a);
          nxt[1 + cu] = static_cast<std::uint32_t>(r);
          retarget(nxt, a, false, c);
          emit(std::move(nxt));
        }
      }
    }
    // Cage interior onto a free endpoint.
    for (std::size_t cu = 0; cu < ci_->cages.size(); ++cu) {
      for (int e = 0; e < 2; ++e) {
        const Vertex b = e == 0 ? ci_->cages[cu].u : ci_->cages[cu].v;
        if (outer >> b & 1U || !outer_free_around(outer, b, -1)) continue;
        for (int x = 0; x < 8; ++x) {
          if (!(detail::cage_interior().near[e] >> x & 1U)) continue;
          int r = table_->step(static_cast<int>(cur[1 + cu]), 20 + 8 * e + x);
          if (r < 0) continue;
          Key nxt = cur;
          nxt[0] = outer | (1U << b);
          nxt[1 + cu] = static_cast<std::uint32_t>(r);
          if (!retarget(nxt, b, true, static_cast<int>(cu))) continue;
          emit(std::move(nxt));
        }
      }
    }
  }

  const CageInstance* ci_;
  std::shared_ptr<detail::ClassTable> table_;
  std::vector<std::vector<Vertex>> outer_nbrs_;
  std::vector<Key> states_;
  std::unordered_map<Key, int, detail::QuotientKeyHash> index_;
  std::unordered_map<std::uint32_t, std::vector<int>> by_outer_;
};

}  // namespace bireconf
