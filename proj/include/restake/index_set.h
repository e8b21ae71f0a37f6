// Copyright 2026 The Restake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RESTAKE_INDEX_SET_H_
#define RESTAKE_INDEX_SET_H_

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace restake {

using Mask = std::uint64_t;

// Subset of {0, ..., universe-1}. The tag keeps service sets and validator
// sets from being mixed up. Iteration and comparison follow index order,
// which is the order vertices appear in the graph file.
template <class Tag>
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  IndexSet(std::size_t universe, std::initializer_list<std::size_t> items)
      : IndexSet(universe) {
    for (std::size_t i : items) insert(i);
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }

  // Requires universe <= 64.
  static IndexSet from_mask(std::size_t universe, Mask mask) {
    IndexSet s(universe);
    if (universe > 64) throw std::length_error("IndexSet: universe > 64");
    if (universe < 64 && (mask >> universe) != 0)
      throw std::out_of_range("IndexSet: mask outside universe");
    if (universe > 0) s.words_[0] = mask;
    return s;
  }

  Mask to_mask() const {
    if (universe_ > 64) throw std::length_error("IndexSet: universe > 64");
    return words_.empty() ? 0 : words_[0];
  }

  std::size_t universe() const { return universe_; }

  void insert(std::size_t i) {
    check(i);
    words_[i / 64] |= Mask{1} << (i % 64);
  }
  void erase(std::size_t i) {
    check(i);
    words_[i / 64] &= ~(Mask{1} << (i % 64));
  }
  bool contains(std::size_t i) const {
    return i < universe_ && ((words_[i / 64] >> (i % 64)) & 1) != 0;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (Mask w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (Mask w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Mask bits = words_[w];
      while (bits != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  bool is_subset_of(const IndexSet& o) const {
    same_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & ~o.words_[w]) != 0) return false;
    }
    return true;
  }
  bool intersects(const IndexSet& o) const {
    same_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & o.words_[w]) != 0) return true;
    }
    return false;
  }

  IndexSet& operator|=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  IndexSet& operator&=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  IndexSet& operator-=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  IndexSet complement() const { return full(universe_) - *this; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

  // Canonical order: compare characteristic vectors as binary numbers with
  // index 0 least significant (for universes <= 64 this is mask order).
  friend std::strong_ordering operator<=>(const IndexSet& a,
                                          const IndexSet& b) {
    if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
    for (std::size_t w = a.words_.size(); w-- > 0;) {
      if (auto c = a.words_[w] <=> b.words_[w]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  void check(std::size_t i) const {
    if (i >= universe_) throw std::out_of_range("IndexSet: index outside universe");
  }
  void same_universe(const IndexSet& o) const {
    if (universe_ != o.universe_)
      throw std::invalid_argument("IndexSet: universes differ");
  }

  std::size_t universe_ = 0;
  std::vector<Mask> words_;
};

struct ServiceTag {};
struct ValidatorTag {};
using ServiceSet = IndexSet<ServiceTag>;
using ValidatorSet = IndexSet<ValidatorTag>;

}  // namespace restake

#endif  // RESTAKE_INDEX_SET_H_
