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

#ifndef MECHLAB_ALLOCATION_FAMILY_H_
#define MECHLAB_ALLOCATION_FAMILY_H_

#include <cstdint>
#include <vector>

namespace mechlab {

// One bundle mask per index (bidder): bit x of alloc[y] means item x goes to
// index y.
using Allocation = std::vector<std::uint64_t>;

// A total function X -> Y written as the image of each item.
using Function = std::vector<int>;

inline constexpr int kMaxFamilyItems = 64;

// An explicit, finite set of d-duplicate allocations of items X = [0,
// num_items) to indices Y = [0, num_indices): every item lies in at most d of
// the bundles of each member. Members are deduplicated and kept sorted
// (lexicographic on the mask vector); that order is the canonical order used
// for tie-breaking.
class AllocationFamily {
 public:
  AllocationFamily(int num_items, int num_indices, int d,
                   std::vector<Allocation> members);

  // Every 1-duplicate allocation; with `allow_unassigned` false, only those
  // assigning every item (i.e. all of Y^X).
  static AllocationFamily AllAllocations(int num_items, int num_indices,
                                         bool allow_unassigned = true);
  static AllocationFamily FromFunctions(int num_items, int num_indices,
                                        const std::vector<Function>& functions);

  int num_items() const { return num_items_; }
  int num_indices() const { return num_indices_; }
  int duplication() const { return d_; }
  const std::vector<Allocation>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  // The members that assign every item to exactly one index, as functions.
  std::vector<Function> TotalFunctions() const;

  friend bool operator==(const AllocationFamily&,
                         const AllocationFamily&) = default;

 private:
  int num_items_;
  int num_indices_;
  int d_;
  std::vector<Allocation> members_;
};

// Allocation <-> function conversions for total allocations.
Allocation AllocationOfFunction(const Function& f, int num_indices);
// Every allocation of `num_items` items to `num_indices` indices (each item to
// at most one index), in base-(num_indices + 1) counting order.
std::vector<Allocation> EnumerateAllocations(int num_items, int num_indices,
                                             bool allow_unassigned);

}  // namespace mechlab

#endif  // MECHLAB_ALLOCATION_FAMILY_H_
