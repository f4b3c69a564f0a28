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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "bireconf/json_io.hpp"
#include "bireconf/reconf.hpp"

using namespace bireconf;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  Json json() const { return Json::parse(out); }
};

CliResult run(const std::string& args) {
  std::string cmd = std::string(BIRECONF_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(BIRECONF_SAMPLES_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "bireconf_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(CliDecideLr, K2WithTwoTokensIsReachable) {
  CliResult r = run("decide-lr --graph " + sample("k2.graph") + " --k 2");
  ASSERT_EQ(r.code, 0);
  Json j = r.json();
  EXPECT_TRUE(j["reachable"].get<bool>());
  EXPECT_EQ(j["sequence"].size(), 2u);
  EXPECT_TRUE(j.contains("cop_schedule"));
}

TEST(CliDecideLr, K2WithOneTokenIsUnreachable) {
  CliResult r = run("decide-lr --graph " + sample("k2.graph") + " --k 1");
  ASSERT_EQ(r.code, 1);
  Json j = r.json();
  EXPECT_FALSE(j["reachable"].get<bool>());
  EXPECT_EQ(j["width"].get<int>(), 1);
  EXPECT_FALSE(j.contains("sequence"));
}

TEST(CliDecideLr, C4VerdictsMatchSearch) {
  Graph g = parse_graph("p 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n");
  Bipartition bp = bipartition(g);
  for (int k = 1; k <= 4; ++k) {
    bool expected = false;
    if (bp.left.size() <= k && bp.right.size() <= k) expected = bfs(g, Model::tar(k), bp.left, bp.right).target_distance.has_value();
    CliResult r = run("decide-lr --graph " + sample("c4.graph") + " --k " + std::to_string(k));
    EXPECT_EQ(r.code, expected ? 0 : 1) << "k=" << k;
    EXPECT_EQ(r.json()["reachable"].get<bool>(), expected) << "k=" << k;
  }
}

TEST(CliDecideLr, EmittedSequenceVerifies) {
  CliResult r = run("decide-lr --graph " + sample("c4.graph") + " --k 4");
  ASSERT_EQ(r.code, 0);
  Json j = r.json();
  auto seq = scratch("c4_edits.json");
  write(seq, j["sequence"].dump());
  CliResult v = run("verify " + seq.string() + " --graph " + sample("c4.graph") + " --k 4 --source 0,2");
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(v.json()["ok"].get<bool>());
  auto states = scratch("c4_states.json");
  write(states, j["states"].dump());
  EXPECT_EQ(run("verify " + states.string() + " --graph " + sample("c4.graph") + " --k 4").code, 0);
}

TEST(CliDecideLr, RejectsNonBipartiteAndBadFlags) {
  auto tri = scratch("triangle.graph");
  write(tri, "p 3 3\ne 0 1\ne 1 2\ne 0 2\n");
  EXPECT_EQ(run("decide-lr --graph " + tri.string() + " --k 3").code, 2);
  EXPECT_EQ(run("decide-lr --graph " + sample("k2.graph") + " --k 0").code, 2);
  EXPECT_EQ(run("decide-lr --graph " + sample("k2.graph")).code, 2);
  EXPECT_EQ(run("decide-lr --graph " + sample("k2.graph") + " --k 2 --format xml").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(CliExplore, FigureInstanceFindsNonMonotonePath) {
  CliResult r = run("explore --graph " + sample("figure1.graph") + " --k 44 --source " + sample("figure1_source.json") +
              " --target " + sample("figure1_target.json") + " --twin-compress");
  ASSERT_EQ(r.code, 0);
  Json j = r.json();
  EXPECT_TRUE(j["reachable"].get<bool>());
  EXPECT_TRUE(j["every_shortest_path_non_monotone"].get<bool>());
  EXPECT_FALSE(j["vertices_touched_repeatedly"].empty());
  EXPECT_FALSE(j["non_monotone_groups"].empty());
}

TEST(CliExplore, BudgetExhaustionExitsThreeWithPartialReport) {
  CliResult r = run("explore --graph " + sample("figure1.graph") + " --k 44 --source " + sample("figure1_source.json") +
              " --budget 5");
  ASSERT_EQ(r.code, 3);
  Json j = r.json();
  EXPECT_FALSE(j["complete"].get<bool>());
  EXPECT_GT(j["visited"].get<int>(), 5);
}

TEST(CliExplore, K2Models) {
  CliResult tar = run("explore --graph " + sample("k2.graph") + " --k 2 --source 0 --target 1");
  ASSERT_EQ(tar.code, 0);
  EXPECT_EQ(tar.json()["distance"].get<int>(), 2);
  EXPECT_EQ(run("explore --graph " + sample("k2.graph") + " --k 1 --source 0 --target 1").code, 1);
  CliResult ts = run("explore --graph " + sample("k2.graph") + " --model ts --k 1 --source 0 --target 1");
  ASSERT_EQ(ts.code, 0);
  EXPECT_EQ(ts.json()["distance"].get<int>(), 1);
  EXPECT_EQ(run("explore --graph " + sample("k2.graph") + " --model ts --k 2 --source 0,1").code, 2);
  EXPECT_EQ(run("explore --graph " + sample("k2.graph") + " --k 2 --source 0,x").code, 2);
}

TEST(CliReduceTs, SizesOfSampleInstances) {
  CliResult two = run("reduce-ts " + sample("word_sigma2.json"));
  ASSERT_EQ(two.code, 0);
  EXPECT_EQ(two.json()["vertices"].get<int>(), 24);
  CliResult four = run("reduce-ts " + sample("word_sigma4_norepeat.json"));
  ASSERT_EQ(four.code, 0);
  EXPECT_EQ(four.json()["vertices"].get<int>(), 150);
  EXPECT_TRUE(four.json()["bipartite"].get<bool>());
}

TEST(CliReduceTs, MalformedJsonExitsTwo) {
  EXPECT_EQ(run("reduce-ts " + sample("malformed.json")).code, 2);
  auto notword = scratch("notword.json");
  write(notword, R"({"sigma":2,"A":[[0,1]],"ws":[0,0],"wt":[0,1]})");
  EXPECT_EQ(run("reduce-ts " + notword.string()).code, 2);
}

TEST(CliReduceTs, OutputFilesRoundTrip) {
  auto prefix = scratch("red").string();
  CliResult r = run("reduce-ts " + sample("word_sigma2.json") + " --out " + prefix);
  ASSERT_EQ(r.code, 0);
  std::ifstream gin(prefix + ".graph");
  Graph g = read_graph(gin);
  EXPECT_EQ(g.n(), 24);
  std::ifstream rin(prefix + ".roles.json");
  Json roles = Json::parse(rin);
  VertexSubset iws = subset_from_json(roles["I_ws"], g.n());
  EXPECT_TRUE(g.is_independent(iws));
  EXPECT_EQ(iws.size(), roles["k"].get<int>());
  EXPECT_EQ(roles["roles"].size(), 24u);
}

TEST(CliVerify, OkTamperedTruncated) {
  const std::string graph = " --graph " + sample("k2.graph") + " --k 2";
  CliResult ok = run("verify " + sample("k2_states.json") + graph);
  EXPECT_EQ(ok.code, 0);
  CliResult bad = run("verify " + sample("k2_tampered.json") + graph);
  ASSERT_EQ(bad.code, 1);
  EXPECT_EQ(bad.json()["index"].get<int>(), 1);
  auto cut = scratch("truncated.json");
  write(cut, "[[0],[0,1");
  EXPECT_EQ(run("verify " + cut.string() + graph).code, 2);
}

TEST(CliVerify, EditViolationIndexIsMarkerPosition) {
  auto eta = scratch("bad_edits.json");
  write(eta, R"([{"v":1,"op":"add"},{"v":1,"op":"rem"}])");
  CliResult r = run("verify " + eta.string() + " --graph " + sample("k2.graph") + " --k 2 --source 0");
  ASSERT_EQ(r.code, 0);
  write(eta, R"([{"v":0,"op":"rem"}])");
  r = run("verify " + eta.string() + " --graph " + sample("k2.graph") + " --k 2 --source 0");
  ASSERT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["index"].get<int>(), 0);
  EXPECT_EQ(run("verify " + eta.string() + " --graph " + sample("k2.graph") + " --k 2").code, 2);
}

TEST(CliFormats, DotAndText) {
  CliResult dot = run("decide-lr --graph " + sample("k2.graph") + " --k 2 --format dot");
  EXPECT_EQ(dot.code, 0);
  EXPECT_NE(dot.out.find("graph decide_lr {"), std::string::npos);
  EXPECT_NE(dot.out.find("0 -- 1"), std::string::npos);
  CliResult text = run("decide-lr --graph " + sample("k2.graph") + " --k 1 --format text");
  EXPECT_NE(text.out.find("reachable: false"), std::string::npos);
}

TEST(CliGenerate, SeedIsReproducible) {
  CliResult a = run("generate --seed 11 --left 4 --right 5");
  CliResult b = run("generate --seed 11 --left 4 --right 5");
  CliResult c = run("generate --seed 12 --left 4 --right 5");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  Graph g = parse_graph(a.out);
  EXPECT_EQ(g.n(), 9);
  EXPECT_TRUE(is_bipartite(g));
}
