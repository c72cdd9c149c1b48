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

#ifndef MECHLAB_ITEM_SET_H_
#define MECHLAB_ITEM_SET_H_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mechlab {

// A subset of the item universe [0, universe_size). Sets built over
// different universes never compare equal.
class ItemSet {
 public:
  ItemSet() = default;
  explicit ItemSet(int universe_size);
  ItemSet(int universe_size, std::initializer_list<int> items);
  ItemSet(int universe_size, const std::vector<int>& items);

  static ItemSet Full(int universe_size);
  // Requires universe_size <= 64.
  static ItemSet FromMask(int universe_size, std::uint64_t mask);

  int universe_size() const { return universe_size_; }

  bool Contains(int item) const;
  void Insert(int item);
  void Erase(int item);
  int Size() const;
  bool Empty() const;

  bool IsSubsetOf(const ItemSet& other) const;
  bool Intersects(const ItemSet& other) const;

  ItemSet& operator|=(const ItemSet& other);
  ItemSet& operator&=(const ItemSet& other);
  // Set difference.
  ItemSet& operator-=(const ItemSet& other);
  friend ItemSet operator|(ItemSet a, const ItemSet& b) { return a |= b; }
  friend ItemSet operator&(ItemSet a, const ItemSet& b) { return a &= b; }
  friend ItemSet operator-(ItemSet a, const ItemSet& b) { return a -= b; }

  // Sorted member indices.
  std::vector<int> Items() const;
  // Requires universe_size <= 64.
  std::uint64_t ToMask() const;
  std::string ToString() const;

  // Lexicographic comparison of the sorted member lists.
  static bool LexLess(const ItemSet& a, const ItemSet& b);

  friend bool operator==(const ItemSet& a, const ItemSet& b) = default;

 private:
  void CheckItem(int item) const;
  void CheckSameUniverse(const ItemSet& other) const;

  int universe_size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mechlab

#endif  // MECHLAB_ITEM_SET_H_
