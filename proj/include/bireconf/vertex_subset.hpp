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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bireconf {

using Vertex = int;

/**
 * Fixed-capacity set of vertex indices over [0, capacity).
 *
 * Storage is a packed array of 64-bit blocks; vertex i lives in bit (i % 64)
 * of block (i / 64). Unused high bits of the last block are always zero, so
 * two subsets with equal contents have identical blocks and identical hashes.
 */
class VertexSubset {
 public:
  using Block = std::uint64_t;
  static constexpr int kBlockBits = 64;

  VertexSubset() = default;
  explicit VertexSubset(int capacity)
      : capacity_(capacity), blocks_(block_count(capacity), 0) {
    if (capacity < 0) throw std::invalid_argument("negative subset capacity");
  }
  VertexSubset(int capacity, std::initializer_list<Vertex> members)
      : VertexSubset(capacity) {
    for (Vertex v : members) insert(v);
  }
  VertexSubset(int capacity, std::span<const Vertex> members)
      : VertexSubset(capacity) {
    for (Vertex v : members) insert(v);
  }

  static VertexSubset full(int capacity) {
    VertexSubset s(capacity);
    for (auto& b : s.blocks_) b = ~Block{0};
    s.trim();
    return s;
  }

  /// Builds a subset of capacity <= 64 from a bit mask.
  static VertexSubset from_mask(int capacity, std::uint64_t mask) {
    if (capacity > kBlockBits) throw std::invalid_argument("mask capacity exceeds 64");
    VertexSubset s(capacity);
    if (capacity > 0) s.blocks_[0] = mask;
    s.trim();
    return s;
  }

  [[nodiscard]] int capacity() const { return capacity_; }

  [[nodiscard]] bool contains(Vertex v) const {
    check(v);
    return (blocks_[v / kBlockBits] >> (v % kBlockBits)) & 1U;
  }
  void insert(Vertex v) {
    check(v);
    blocks_[v / kBlockBits] |= Block{1} << (v % kBlockBits);
  }
  void erase(Vertex v) {
    check(v);
    blocks_[v / kBlockBits] &= ~(Block{1} << (v % kBlockBits));
  }
  void flip(Vertex v) {
    check(v);
    blocks_[v / kBlockBits] ^= Block{1} << (v % kBlockBits);
  }
  [[nodiscard]] VertexSubset with(Vertex v) const {
    VertexSubset s = *this;
    s.insert(v);
    return s;
  }
  [[nodiscard]] VertexSubset without(Vertex v) const {
    VertexSubset s = *this;
    s.erase(v);
    return s;
  }

  [[nodiscard]] int size() const {
    int total = 0;
    for (Block b : blocks_) total += std::popcount(b);
    return total;
  }
  [[nodiscard]] bool empty() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](Block b) { return b == 0; });
  }

  [[nodiscard]] bool is_subset_of(const VertexSubset& other) const {
    same_capacity(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~other.blocks_[i]) return false;
    return true;
  }
  [[nodiscard]] bool intersects(const VertexSubset& other) const {
    same_capacity(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & other.blocks_[i]) return true;
    return false;
  }

  VertexSubset& operator|=(const VertexSubset& o) { return combine(o, [](Block a, Block b) { return a | b; }); }
  VertexSubset& operator&=(const VertexSubset& o) { return combine(o, [](Block a, Block b) { return a & b; }); }
  VertexSubset& operator^=(const VertexSubset& o) { return combine(o, [](Block a, Block b) { return a ^ b; }); }
  VertexSubset& operator-=(const VertexSubset& o) { return combine(o, [](Block a, Block b) { return a & ~b; }); }

  friend VertexSubset operator|(VertexSubset a, const VertexSubset& b) { return a |= b; }
  friend VertexSubset operator&(VertexSubset a, const VertexSubset& b) { return a &= b; }
  friend VertexSubset operator^(VertexSubset a, const VertexSubset& b) { return a ^= b; }
  friend VertexSubset operator-(VertexSubset a, const VertexSubset& b) { return a -= b; }

  [[nodiscard]] VertexSubset complement() const { return full(capacity_) - *this; }

  /// Sorted member list.
  [[nodiscard]] std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      Block b = blocks_[i];
      while (b) {
        int bit = std::countr_zero(b);
        fn(static_cast<Vertex>(i * kBlockBits + bit));
        b &= b - 1;
      }
    }
  }

  /// First member, or -1.
  [[nodiscard]] Vertex first() const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i]) return static_cast<Vertex>(i * kBlockBits + std::countr_zero(blocks_[i]));
    return -1;
  }

  [[nodiscard]] std::span<const Block> blocks() const { return blocks_; }

  /// Low 64 bits; only meaningful when capacity <= 64.
  [[nodiscard]] std::uint64_t mask() const { return blocks_.empty() ? 0 : blocks_[0]; }

  [[nodiscard]] std::size_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(capacity_);
    for (Block b : blocks_) {
      h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const VertexSubset&, const VertexSubset&) = default;

  /// Canonical order: capacity first, then block-wise from block 0 upward.
  friend std::strong_ordering operator<=>(const VertexSubset& a, const VertexSubset& b) {
    if (auto c = a.capacity_ <=> b.capacity_; c != 0) return c;
    for (std::size_t i = 0; i < a.blocks_.size(); ++i)
      if (auto c = a.blocks_[i] <=> b.blocks_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const VertexSubset& s) {
    os << '{';
    bool first = true;
    s.for_each([&](Vertex v) {
      if (!first) os << ',';
      os << v;
      first = false;
    });
    return os << '}';
  }

  /// Same text as operator<<, e.g. "{0,2}".
  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

 private:
  static std::size_t block_count(int capacity) {
    return static_cast<std::size_t>((capacity + kBlockBits - 1) / kBlockBits);
  }
  void check(Vertex v) const {
    if (v < 0 || v >= capacity_) throw std::out_of_range("vertex index out of subset capacity");
  }
  void same_capacity(const VertexSubset& o) const {
    if (o.capacity_ != capacity_) throw std::invalid_argument("subset capacity mismatch");
  }
  void trim() {
    int rem = capacity_ % kBlockBits;
    if (rem != 0 && !blocks_.empty()) blocks_.back() &= (Block{1} << rem) - 1;
  }
  template <class Op>
  VertexSubset& combine(const VertexSubset& o, Op op) {
    same_capacity(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] = op(blocks_[i], o.blocks_[i]);
    return *this;
  }

  int capacity_ = 0;
  std::vector<Block> blocks_;
};

struct VertexSubsetHash {
  std::size_t operator()(const VertexSubset& s) const { return s.hash(); }
};

}  // namespace bireconf
