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

// JSON encodings of the library's value types. Schemas are listed in the
// README. Every decoder throws Error(Parse) on malformed input.

#include <string>
#include <vector>

#include "bireconf/crown.hpp"
#include "bireconf/errors.hpp"
#include "bireconf/perturbation.hpp"
#include "bireconf/reconf.hpp"
#include "bireconf/ts_reduction.hpp"
#include "bireconf/width.hpp"
#include "json.hpp"

namespace bireconf {

using Json = nlohmann::json;

namespace detail {

template <class Fn>
auto parse_guard(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

inline Vertex vertex_in_range(const Json& j, int n) {
  auto v = j.get<Vertex>();
  if (v < 0 || v >= n) throw Error(ErrorCode::Parse, "vertex " + std::to_string(v) + " out of range");
  return v;
}

}  // namespace detail

inline Json parse_json(const std::string& text) {
  return detail::parse_guard("json", [&] { return Json::parse(text); });
}

inline Json subset_to_json(const VertexSubset& s) { return s.members(); }

inline VertexSubset subset_from_json(const Json& j, int n) {
  return detail::parse_guard("vertex set", [&] {
    if (!j.is_array()) throw Error(ErrorCode::Parse, "vertex set must be an array");
    VertexSubset s(n);
    for (const auto& x : j) s.insert(detail::vertex_in_range(x, n));
    return s;
  });
}

inline Json states_to_json(const std::vector<VertexSubset>& states) {
  Json out = Json::array();
  for (const auto& s : states) out.push_back(subset_to_json(s));
  return out;
}

inline std::vector<VertexSubset> states_from_json(const Json& j, int n) {
  return detail::parse_guard("state sequence", [&] {
    if (!j.is_array()) throw Error(ErrorCode::Parse, "state sequence must be an array");
    std::vector<VertexSubset> out;
    for (const auto& s : j) out.push_back(subset_from_json(s, n));
    return out;
  });
}

inline Json edits_to_json(const EditSequence& eta) {
  Json out = Json::array();
  for (const Marker& m : eta) out.push_back({{"v", m.v}, {"op", m.op == Op::Add ? "add" : "rem"}});
  return out;
}

inline EditSequence edits_from_json(const Json& j, int n) {
  return detail::parse_guard("edit sequence", [&] {
    if (!j.is_array()) throw Error(ErrorCode::Parse, "edit sequence must be an array");
    EditSequence out;
    for (const auto& m : j) {
      const std::string op = m.at("op").get<std::string>();
      if (op != "add" && op != "rem") throw Error(ErrorCode::Parse, "edit op must be add or rem");
      out.push_back({detail::vertex_in_range(m.at("v"), n), op == "add" ? Op::Add : Op::Remove});
    }
    return out;
  });
}

inline Json decomposition_to_json(const NicePathDecomposition& npd) {
  Json steps = Json::array();
  for (const NiceStep& s : npd.steps) steps.push_back({{"op", s.op == NiceOp::Introduce ? "intro" : "forget"}, {"v", s.v}});
  return {{"bags", states_to_json(npd.bags())}, {"nice", steps}};
}

/// Reads the "nice" step list; "bags", when present, must match it.
inline NicePathDecomposition decomposition_from_json(const Json& j, int n) {
  return detail::parse_guard("decomposition", [&] {
    NicePathDecomposition npd;
    npd.n = n;
    for (const auto& s : j.at("nice")) {
      const std::string op = s.at("op").get<std::string>();
      if (op != "intro" && op != "forget") throw Error(ErrorCode::Parse, "nice op must be intro or forget");
      npd.steps.push_back({op == "intro" ? NiceOp::Introduce : NiceOp::Forget, detail::vertex_in_range(s.at("v"), n)});
    }
    if (j.contains("bags") && states_from_json(j.at("bags"), n) != npd.bags())
      throw Error(ErrorCode::Parse, "bags do not match the nice steps");
    return npd;
  });
}

inline Json crown_to_json(const Crown& cr) {
  Json m = Json::array();
  for (auto [c, h] : cr.matching) m.push_back({c, h});
  return {{"C", subset_to_json(cr.c)}, {"H", subset_to_json(cr.h)}, {"M", m}};
}

inline Crown crown_from_json(const Json& j, int n) {
  return detail::parse_guard("crown", [&] {
    Crown cr{subset_from_json(j.at("C"), n), subset_from_json(j.at("H"), n), {}};
    for (const auto& e : j.at("M")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::Parse, "matching edge must be a pair");
      cr.matching.emplace_back(detail::vertex_in_range(e[0], n), detail::vertex_in_range(e[1], n));
    }
    return cr;
  });
}

inline Json word_instance_to_json(const WordInstance& w) {
  Json a = Json::array();
  for (auto [x, y] : w.relation) a.push_back({x, y});
  return {{"sigma", w.sigma_size}, {"A", a}, {"ws", w.ws}, {"wt", w.wt}};
}

inline WordInstance word_instance_from_json(const Json& j) {
  return detail::parse_guard("word instance", [&] {
    WordInstance w;
    w.sigma_size = j.at("sigma").get<int>();
    if (w.sigma_size < 1) throw Error(ErrorCode::Parse, "sigma must be positive");
    for (const auto& p : j.at("A")) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::Parse, "relation entry must be a pair");
      w.relation.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    w.ws = j.at("ws").get<Word>();
    w.wt = j.at("wt").get<Word>();
    return w;
  });
}

inline Json slides_to_json(const std::vector<Slide>& slides) {
  Json out = Json::array();
  for (const Slide& s : slides) out.push_back({s.from, s.to});
  return out;
}

inline std::vector<Slide> slides_from_json(const Json& j, int n) {
  return detail::parse_guard("slide sequence", [&] {
    std::vector<Slide> out;
    for (const auto& s : j) {
      if (!s.is_array() || s.size() != 2) throw Error(ErrorCode::Parse, "slide must be a pair");
      out.push_back({detail::vertex_in_range(s[0], n), detail::vertex_in_range(s[1], n)});
    }
    return out;
  });
}

/// Role map of a reduction: per-vertex roles, cages, k, and both endpoint sets.
inline Json role_map_to_json(const Reduction& r) {
  Json roles = Json::array();
  for (const Role& role : r.ci.roles) roles.push_back(describe(role));
  Json cages = Json::array();
  for (const Cage& c : r.ci.cages) cages.push_back({{"u", c.u}, {"v", c.v}, {"f", c.f}});
  return {{"n", r.ci.n}, {"sigma", r.ci.sigma_size}, {"k", r.ci.k}, {"vertices", r.ci.g.n()},
          {"roles", roles}, {"cages", cages}, {"I_ws", subset_to_json(r.i_ws)}, {"I_wt", subset_to_json(r.i_wt)}};
}

inline Json perturbation_to_json(const Perturbation& p) {
  Json groups = Json::array();
  for (const auto& g : p.group_of) groups.push_back(subset_to_json(g));
  return {{"k", p.k}, {"mu", p.mu}, {"s_star", subset_to_json(p.s_star)}, {"groups", groups}};
}

inline Json report_to_json(const PerturbationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"applicable", c.applicable}, {"pass", c.pass}, {"checked", c.checked}, {"witness", c.witness}});
  return {{"checks", checks}, {"s_star_is_local_minimum", r.s_star_is_local_minimum}, {"all_pass", r.all_pass()}};
}

}  // namespace bireconf
