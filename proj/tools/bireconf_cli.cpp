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

// bireconf command-line frontend. Exit codes: 0 positive verdict, 1 negative
// verdict, 2 input error, 3 budget exhausted.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bireconf/json_io.hpp"
#include "bireconf/left_right.hpp"
#include "bireconf/reconf.hpp"
#include "bireconf/ts_reduction.hpp"

using namespace bireconf;

namespace {

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct RunConfig {
  std::string graph_path;
  std::string input_path;
  std::string out_prefix;
  int k = 1;
  std::string model = "tar";
  std::string source;
  std::string target;
  std::size_t budget = 10'000'000;
  std::string format;  // empty: json, or text for generate
  bool twin_compress = false;
  std::uint64_t seed = 1;
  int left = 4;
  int right = 4;
  double density = 0.5;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

// A vertex set is a path to a JSON array file, or a comma-separated list.
VertexSubset load_set(const std::string& spec, int n) {
  if (std::filesystem::is_regular_file(spec)) return subset_from_json(parse_json(read_file(spec)), n);
  Json arr = Json::array();
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad vertex '" + item + "'");
    }
    if (used != item.size()) throw Error(ErrorCode::Parse, "bad vertex '" + item + "'");
    arr.push_back(v);
  }
  return subset_from_json(arr, n);
}

Model make_model(const std::string& name, int k) {
  if (name == "tar") return Model::tar(k);
  if (name == "tj") return Model::tj(k);
  return Model::ts(k);
}

// Number of vertex touches a path makes and the least any path could make.
std::pair<std::size_t, std::size_t> touches(const std::vector<VertexSubset>& path) {
  if (path.empty()) return {0, 0};
  std::size_t total = 0;
  for (std::size_t i = 1; i < path.size(); ++i) total += static_cast<std::size_t>((path[i] ^ path[i - 1]).size());
  return {total, static_cast<std::size_t>((path.front() ^ path.back()).size())};
}

std::map<Vertex, int> touch_counts(const std::vector<VertexSubset>& path) {
  std::map<Vertex, int> out;
  for (std::size_t i = 1; i < path.size(); ++i) (path[i] ^ path[i - 1]).for_each([&](Vertex v) { ++out[v]; });
  return out;
}

std::string to_dot(const Graph& g, const VertexSubset& a, const std::optional<VertexSubset>& b, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n  node [style=filled];\n";
  for (Vertex v = 0; v < g.n(); ++v) {
    bool in_a = a.contains(v);
    bool in_b = b && b->contains(v);
    const char* color = in_a && in_b ? "gray40" : in_a ? "gray75" : in_b ? "lightblue" : "white";
    out << "  " << v << " [fillcolor=" << color << "];\n";
  }
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

void print_text(const Json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix + it.key();
    if (it->is_object()) print_text(*it, key + ".");
    else std::cout << key << ": " << it->dump() << '\n';
  }
}

void emit(const RunConfig& cfg, const Json& j, const std::function<std::string()>& dot) {
  if (cfg.format == "dot") std::cout << dot();
  else if (cfg.format == "text") print_text(j);
  else std::cout << j.dump(2) << '\n';
}

int cmd_decide_lr(const RunConfig& cfg) {
  Graph g = load_graph(cfg.graph_path);
  DisjointCoverInstance inst{g, VertexSubset(g.n()), VertexSubset(g.n()), cfg.k};
  if (cfg.source.empty() || cfg.target.empty()) {
    Bipartition bp = bipartition(g);
    inst.s = bp.left;
    inst.t = bp.right;
  }
  if (!cfg.source.empty()) inst.s = load_set(cfg.source, g.n());
  if (!cfg.target.empty()) inst.t = load_set(cfg.target, g.n());
  Decision d = decide(inst);
  Json j{{"reachable", d.reachable}, {"width", d.width}, {"pathwidth", d.width}, {"k", cfg.k},
         {"source", subset_to_json(inst.s)}, {"target", subset_to_json(inst.t)},
         {"decomposition", decomposition_to_json(d.decomposition)}};
  if (d.reachable) {
    j["sequence"] = edits_to_json(d.sequence);
    j["states"] = states_to_json(d.states);
    j["cop_schedule"] = states_to_json(strategy_from_sequence(inst, lift(inst), d.states));
  } else {
    j["required_k"] = d.width + 1;
  }
  emit(cfg, j, [&] { return to_dot(g, inst.s, inst.t, "decide_lr"); });
  return d.reachable ? kExitPositive : kExitNegative;
}

int cmd_explore(const RunConfig& cfg) {
  Graph g = load_graph(cfg.graph_path);
  const Model m = make_model(cfg.model, cfg.k);
  const VertexSubset s = load_set(cfg.source, g.n());
  std::optional<VertexSubset> t;
  if (!cfg.target.empty()) t = load_set(cfg.target, g.n());
  BfsOptions opt;
  opt.budget = cfg.budget;
  Json j{{"model", to_string(m.kind)}, {"k", cfg.k}, {"source", subset_to_json(s)}, {"budget", cfg.budget}};
  if (t) j["target"] = subset_to_json(*t);
  auto dot = [&] { return to_dot(g, s, t, "explore"); };
  try {
    std::vector<VertexSubset> path;
    std::optional<int> dist;
    if (cfg.twin_compress) {
      TwinPartition tp = twin_partition(g);
      CompressedReport r = bfs_twin_compressed(g, tp, m, s, t, opt);
      Json groups = Json::array();
      for (const auto& grp : tp.groups) groups.push_back(subset_to_json(grp));
      j["twin_groups"] = groups;
      j["subgroups"] = r.subgroups.size();
      j["visited"] = r.visited;
      j["complete"] = r.complete;
      j["count_path"] = r.count_path;
      if (r.min_size) j["min_cover_size"] = *r.min_size;
      dist = r.target_distance;
      path = r.path;
      if (r.target_distance && !r.count_path.empty()) {
        Json moving = Json::array();
        for (std::size_t gi = 0; gi < tp.groups.size(); ++gi) {
          bool down = false, up = false, turned = false;
          for (std::size_t i = 1; i < r.count_path.size(); ++i) {
            int d = r.count_path[i][gi] - r.count_path[i - 1][gi];
            if ((d < 0 && up) || (d > 0 && down)) turned = true;
            down = down || d < 0;
            up = up || d > 0;
          }
          if (turned) moving.push_back(gi);
        }
        j["non_monotone_groups"] = moving;
      }
    } else {
      StateSpaceReport r = bfs(g, m, s, t, opt);
      j["visited"] = r.states.size();
      j["complete"] = r.complete;
      j["eccentricity"] = r.eccentricity;
      if (m.kind == ModelKind::TAR && !r.local_minima.empty()) {
        j["local_minima"] = states_to_json(r.local_minima);
      }
      dist = r.target_distance;
      path = r.path;
    }
    if (t) {
      j["reachable"] = dist.has_value();
      if (dist) {
        j["distance"] = *dist;
        j["path"] = states_to_json(path);
        auto [used, least] = touches(path);
        // Every step touches one vertex (TAR) or two (TJ, TS), so a shortest
        // path touching more than |S xor T| vertices forces repeats on all of them.
        std::size_t per_step = m.kind == ModelKind::TAR ? 1 : 2;
        j["every_shortest_path_non_monotone"] = static_cast<std::size_t>(*dist) * per_step > least;
        Json twice = Json::array();
        for (auto [v, c] : touch_counts(path))
          if (c > 1) twice.push_back(v);
        j["path_touches"] = used;
        j["vertices_touched_repeatedly"] = twice;
      }
    }
    emit(cfg, j, dot);
    return !t || dist ? kExitPositive : kExitNegative;
  } catch (const BudgetExceeded& e) {
    j["complete"] = false;
    j["visited"] = e.visited();
    j["error"] = e.what();
    emit(cfg, j, dot);
    return kExitBudget;
  }
}

int cmd_reduce_ts(const RunConfig& cfg) {
  WordInstance w = word_instance_from_json(parse_json(read_file(cfg.input_path)));
  Reduction r = reduce(w);
  Json roles = role_map_to_json(r);
  Json j{{"vertices", r.ci.g.n()}, {"edges", r.ci.g.edge_count()}, {"k", r.ci.k}, {"bipartite", is_bipartite(r.ci.g)}};
  if (!cfg.out_prefix.empty()) {
    std::ofstream(cfg.out_prefix + ".graph") << format_graph(r.ci.g);
    std::ofstream(cfg.out_prefix + ".roles.json") << roles.dump(2) << '\n';
    j["graph_file"] = cfg.out_prefix + ".graph";
    j["role_file"] = cfg.out_prefix + ".roles.json";
  } else {
    j["graph"] = format_graph(r.ci.g);
    j["roles"] = roles;
  }
  emit(cfg, j, [&] { return to_dot(r.ci.g, r.i_ws, r.i_wt, "reduction"); });
  return kExitPositive;
}

int cmd_verify(const RunConfig& cfg) {
  Graph g = load_graph(cfg.graph_path);
  const Model m = make_model(cfg.model, cfg.k);
  Json seq = parse_json(read_file(cfg.input_path));
  if (!seq.is_array()) throw Error(ErrorCode::Parse, "sequence file must hold a JSON array");
  Json j{{"model", to_string(m.kind)}, {"k", cfg.k}};
  std::vector<VertexSubset> states;
  bool edits = !seq.empty() && seq.front().is_object();
  if (edits || (seq.empty() && !cfg.source.empty())) {
    if (m.kind != ModelKind::TAR) throw Error(ErrorCode::Parse, "edit sequences are TAR-only");
    if (cfg.source.empty()) throw Error(ErrorCode::Parse, "edit sequences need --source");
    EditSequence eta = edits_from_json(seq, g.n());
    j["kind"] = "edits";
    try {
      states = apply_edits(g, cfg.k, load_set(cfg.source, g.n()), eta);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Parse) throw;
      j["ok"] = false;
      // Markers are reported by their 0-based position in the file.
      j["index"] = e.index() ? *e.index() - 1 : 0;
      j["reason"] = e.what();
      emit(cfg, j, [&] { return to_dot(g, load_set(cfg.source, g.n()), std::nullopt, "verify"); });
      return kExitNegative;
    }
  } else {
    states = states_from_json(seq, g.n());
    j["kind"] = "states";
    if (auto bad = check_states(g, m, states)) {
      j["ok"] = false;
      j["index"] = bad->index;
      j["reason"] = bad->reason;
      emit(cfg, j, [&] { return to_dot(g, states[bad->index], std::nullopt, "verify"); });
      return kExitNegative;
    }
  }
  j["ok"] = true;
  j["steps"] = states.empty() ? 0 : states.size() - 1;
  if (!states.empty()) j["final"] = subset_to_json(states.back());
  emit(cfg, j, [&] {
    return states.empty() ? to_dot(g, VertexSubset(g.n()), std::nullopt, "verify")
                          : to_dot(g, states.front(), states.back(), "verify");
  });
  return kExitPositive;
}

// Random bipartite graph on left + right vertices, reproducible from the seed.
int cmd_generate(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution coin(cfg.density);
  std::vector<Edge> es;
  for (Vertex u = 0; u < cfg.left; ++u)
    for (Vertex v = cfg.left; v < cfg.left + cfg.right; ++v)
      if (coin(rng)) es.emplace_back(u, v);
  Graph g(cfg.left + cfg.right, es);
  if (cfg.format == "dot") std::cout << to_dot(g, bipartition(g).left, std::nullopt, "generated");
  else if (cfg.format == "json") std::cout << Json{{"seed", cfg.seed}, {"graph", format_graph(g)}}.dump(2) << '\n';
  else std::cout << "c seed " << cfg.seed << '\n' << format_graph(g);
  return kExitPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconfiguration tools for vertex covers and independent sets"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::vector<std::string> formats{"json", "dot", "text"};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--seed", cfg.seed, "Seed for randomized generation");
  };

  auto* lr = app.add_subcommand("decide-lr", "Decide left-to-right TAR reachability on a bipartite graph");
  lr->add_option("--graph", cfg.graph_path, "Graph file")->required();
  lr->add_option("--k", cfg.k, "Capacity")->required()->check(CLI::PositiveNumber);
  lr->add_option("--source", cfg.source, "Source cover (default: left side)");
  lr->add_option("--target", cfg.target, "Target cover (default: right side)");
  add_common(lr);

  auto* ex = app.add_subcommand("explore", "Breadth-first search of the reconfiguration graph");
  ex->add_option("--graph", cfg.graph_path, "Graph file")->required();
  ex->add_option("--k", cfg.k, "Capacity or token count")->required()->check(CLI::PositiveNumber);
  ex->add_option("--model", cfg.model, "Reconfiguration model")->check(CLI::IsMember({"tar", "tj", "ts"}));
  ex->add_option("--source", cfg.source, "Source state")->required();
  ex->add_option("--target", cfg.target, "Target state");
  ex->add_option("--budget", cfg.budget, "Maximum visited states")->check(CLI::PositiveNumber);
  ex->add_flag("--twin-compress", cfg.twin_compress, "Search per-twin-group counts (TAR only)");
  add_common(ex);

  auto* rd = app.add_subcommand("reduce-ts", "Build the token-sliding instance of a word instance");
  rd->add_option("instance", cfg.input_path, "Word instance JSON file")->required();
  rd->add_option("--out", cfg.out_prefix, "Write <prefix>.graph and <prefix>.roles.json");
  add_common(rd);

  auto* vf = app.add_subcommand("verify", "Check a state or edit sequence step by step");
  vf->add_option("sequence", cfg.input_path, "Sequence JSON file")->required();
  vf->add_option("--graph", cfg.graph_path, "Graph file")->required();
  vf->add_option("--k", cfg.k, "Capacity or token count")->required()->check(CLI::PositiveNumber);
  vf->add_option("--model", cfg.model, "Reconfiguration model")->check(CLI::IsMember({"tar", "tj", "ts"}));
  vf->add_option("--source", cfg.source, "Start cover for edit sequences");
  add_common(vf);

  auto* gen = app.add_subcommand("generate", "Emit a seeded random bipartite graph");
  gen->add_option("--left", cfg.left, "Left side size")->check(CLI::NonNegativeNumber);
  gen->add_option("--right", cfg.right, "Right side size")->check(CLI::NonNegativeNumber);
  gen->add_option("--density", cfg.density, "Edge probability")->check(CLI::Range(0.0, 1.0));
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  if (cfg.format.empty()) cfg.format = gen->parsed() ? "text" : "json";

  try {
    if (lr->parsed()) return cmd_decide_lr(cfg);
    if (ex->parsed()) return cmd_explore(cfg);
    if (rd->parsed()) return cmd_reduce_ts(cfg);
    if (vf->parsed()) return cmd_verify(cfg);
    return cmd_generate(cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
