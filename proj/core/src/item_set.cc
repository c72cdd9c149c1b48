// Copyright 2026 The Mechlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mechlab/item_set.h"

#include <algorithm>
#include <bit>

#include "mechlab/errors.h"

namespace mechlab {

ItemSet::ItemSet(int universe_size)
    : universe_size_(universe_size),
      words_((static_cast<std::size_t>(universe_size) + 63) / 64, 0) {
  if (universe_size < 0) throw DomainError("negative universe size");
}

ItemSet::ItemSet(int universe_size, std::initializer_list<int> items)
    : ItemSet(universe_size) {
  for (int item : items) Insert(item);
}

ItemSet::ItemSet(int universe_size, const std::vector<int>& items)
    : ItemSet(universe_size) {
  for (int item : items) Insert(item);
}

ItemSet ItemSet::Full(int universe_size) {
  ItemSet s(universe_size);
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~0ULL;
  if (universe_size % 64 != 0) {
    s.words_.back() = (1ULL << (universe_size % 64)) - 1;
  }
  return s;
}

ItemSet ItemSet::FromMask(int universe_size, std::uint64_t mask) {
  if (universe_size > 64) throw DomainError("mask universe exceeds 64 items");
  if (universe_size < 64 && (mask >> universe_size) != 0) {
    throw DomainError("mask has bits outside the universe");
  }
  ItemSet s(universe_size);
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

void ItemSet::CheckItem(int item) const {
  if (item < 0 || item >= universe_size_) {
    throw DomainError("item " + std::to_string(item) + " outside [0, " +
                      std::to_string(universe_size_) + ")");
  }
}

void ItemSet::CheckSameUniverse(const ItemSet& other) const {
  if (universe_size_ != other.universe_size_) {
    throw DomainError("item sets over different universes");
  }
}

bool ItemSet::Contains(int item) const {
  CheckItem(item);
  return (words_[item / 64] >> (item % 64)) & 1ULL;
}

void ItemSet::Insert(int item) {
  CheckItem(item);
  words_[item / 64] |= 1ULL << (item % 64);
}

void ItemSet::Erase(int item) {
  CheckItem(item);
  words_[item / 64] &= ~(1ULL << (item % 64));
}

int ItemSet::Size() const {
  int count = 0;
  for (std::uint64_t w : words_) count += std::popcount(w);
  return count;
}

bool ItemSet::Empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

bool ItemSet::IsSubsetOf(const ItemSet& other) const {
  CheckSameUniverse(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

bool ItemSet::Intersects(const ItemSet& other) const {
  CheckSameUniverse(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & other.words_[w]) return true;
  }
  return false;
}

ItemSet& ItemSet::operator|=(const ItemSet& other) {
  CheckSameUniverse(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

ItemSet& ItemSet::operator&=(const ItemSet& other) {
  CheckSameUniverse(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

ItemSet& ItemSet::operator-=(const ItemSet& other) {
  CheckSameUniverse(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    words_[w] &= ~other.words_[w];
  }
  return *this;
}

std::vector<int> ItemSet::Items() const {
  std::vector<int> items;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      int bit = std::countr_zero(bits);
      items.push_back(static_cast<int>(w * 64) + bit);
      bits &= bits - 1;
    }
  }
  return items;
}

std::uint64_t ItemSet::ToMask() const {
  if (universe_size_ > 64) throw DomainError("set universe exceeds 64 items");
  return words_.empty() ? 0 : words_[0];
}

std::string ItemSet::ToString() const {
  std::string out = "{";
  bool first = true;
  for (int item : Items()) {
    if (!first) out += ",";
    out += std::to_string(item);
    first = false;
  }
  return out + "}";
}

bool ItemSet::LexLess(const ItemSet& a, const ItemSet& b) {
  std::vector<int> x = a.Items();
  std::vector<int> y = b.Items();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

}  // namespace mechlab
