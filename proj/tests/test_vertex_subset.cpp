// Copyright 2026 The bireconf Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "bireconf/vertex_subset.hpp"

using bireconf::VertexSubset;

TEST(VertexSubset, InsertEraseContains) {
  VertexSubset s(130);
  s.insert(0);
  s.insert(64);
  s.insert(129);
  EXPECT_TRUE(s.contains(64));
  EXPECT_FALSE(s.contains(63));
  EXPECT_EQ(s.size(), 3);
  s.erase(64);
  EXPECT_EQ(s.members(), (std::vector<int>{0, 129}));
  EXPECT_THROW(s.insert(130), std::out_of_range);
}

TEST(VertexSubset, FullAndComplementKeepHighBitsClear) {
  VertexSubset f = VertexSubset::full(70);
  EXPECT_EQ(f.size(), 70);
  EXPECT_TRUE(f.complement().empty());
  VertexSubset a(70, {1, 69});
  EXPECT_EQ(a.complement().size(), 68);
  EXPECT_EQ((a | a.complement()), f);
}

TEST(VertexSubset, EqualContentsGiveEqualHash) {
  VertexSubset a(100, {3, 77});
  VertexSubset b(100);
  b.insert(77);
  b.insert(3);
  b.insert(50);
  b.erase(50);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
}

TEST(VertexSubset, SetAlgebraMatchesStdSet) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 150);
    std::set<int> x, y;
    VertexSubset a(n), b(n);
    for (int v = 0; v < n; ++v) {
      if (rng() % 3 == 0) { x.insert(v); a.insert(v); }
      if (rng() % 3 == 0) { y.insert(v); b.insert(v); }
    }
    std::set<int> uni, inter, diff, sym;
    for (int v = 0; v < n; ++v) {
      bool in_x = x.count(v), in_y = y.count(v);
      if (in_x || in_y) uni.insert(v);
      if (in_x && in_y) inter.insert(v);
      if (in_x && !in_y) diff.insert(v);
      if (in_x != in_y) sym.insert(v);
    }
    auto as_vec = [](const std::set<int>& s) { return std::vector<int>(s.begin(), s.end()); };
    EXPECT_EQ((a | b).members(), as_vec(uni));
    EXPECT_EQ((a & b).members(), as_vec(inter));
    EXPECT_EQ((a - b).members(), as_vec(diff));
    EXPECT_EQ((a ^ b).members(), as_vec(sym));
    EXPECT_EQ(a.is_subset_of(b), std::includes(y.begin(), y.end(), x.begin(), x.end()));
    EXPECT_EQ(a.intersects(b), !inter.empty());
  }
}

TEST(VertexSubset, OrderingMatchesMaskOrderForSmallCapacity) {
  for (std::uint64_t x = 0; x < 64; ++x)
    for (std::uint64_t y = 0; y < 64; ++y)
      EXPECT_EQ(VertexSubset::from_mask(6, x) < VertexSubset::from_mask(6, y), x < y);
}

TEST(VertexSubset, CapacityMismatchThrows) {
  EXPECT_THROW((void)(VertexSubset(3) | VertexSubset(4)), std::invalid_argument);
}

TEST(VertexSubset, Prints) {
  std::ostringstream os;
  os << VertexSubset(5, {4, 1});
  EXPECT_EQ(os.str(), "{1,4}");
}
