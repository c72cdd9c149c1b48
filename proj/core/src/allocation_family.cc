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

#include "mechlab/allocation_family.h"

#include <algorithm>
#include <string>
#include <utility>

#include "mechlab/errors.h"

namespace mechlab {

AllocationFamily::AllocationFamily(int num_items, int num_indices, int d,
                                   std::vector<Allocation> members)
    : num_items_(num_items),
      num_indices_(num_indices),
      d_(d),
      members_(std::move(members)) {
  if (num_items < 1 || num_items > kMaxFamilyItems) {
    throw ParameterError("allocation families support 1..64 items");
  }
  if (num_indices < 1) throw ParameterError("allocation family needs indices");
  if (d < 1) throw ParameterError("duplication bound d must be >= 1");
  const std::uint64_t universe =
      num_items == 64 ? ~0ULL : (1ULL << num_items) - 1;
  for (std::size_t k = 0; k < members_.size(); ++k) {
    const Allocation& a = members_[k];
    if (static_cast<int>(a.size()) != num_indices) {
      throw ParameterError("member " + std::to_string(k) + " has " +
                           std::to_string(a.size()) + " bundles, expected " +
                           std::to_string(num_indices));
    }
    for (std::uint64_t bundle : a) {
      if (bundle & ~universe) {
        throw ParameterError("member " + std::to_string(k) +
                             " uses an item outside X");
      }
    }
    for (int x = 0; x < num_items; ++x) {
      int holders = 0;
      for (std::uint64_t bundle : a) holders += (bundle >> x) & 1ULL;
      if (holders > d) {
        throw ParameterError("member " + std::to_string(k) + " gives item " +
                             std::to_string(x) + " to " +
                             std::to_string(holders) + " indices (d = " +
                             std::to_string(d) + ")");
      }
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

std::vector<Allocation> EnumerateAllocations(int num_items, int num_indices,
                                             bool allow_unassigned) {
  const int radix = num_indices + (allow_unassigned ? 1 : 0);
  std::uint64_t count = 1;
  for (int x = 0; x < num_items; ++x) {
    count *= static_cast<std::uint64_t>(radix);
    if (count > 50'000'000) {
      throw ResourceError("too many allocations to enumerate");
    }
  }
  std::vector<Allocation> out;
  out.reserve(count);
  std::vector<int> digit(num_items, 0);
  for (std::uint64_t c = 0; c < count; ++c) {
    Allocation a(num_indices, 0);
    for (int x = 0; x < num_items; ++x) {
      // Digit num_indices (when allowed) leaves the item unassigned.
      if (digit[x] < num_indices) a[digit[x]] |= 1ULL << x;
    }
    out.push_back(std::move(a));
    for (int x = 0; x < num_items; ++x) {
      if (++digit[x] < radix) break;
      digit[x] = 0;
    }
  }
  return out;
}

AllocationFamily AllocationFamily::AllAllocations(int num_items,
                                                  int num_indices,
                                                  bool allow_unassigned) {
  return AllocationFamily(
      num_items, num_indices, 1,
      EnumerateAllocations(num_items, num_indices, allow_unassigned));
}

Allocation AllocationOfFunction(const Function& f, int num_indices) {
  Allocation a(num_indices, 0);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] < 0 || f[x] >= num_indices) {
      throw ParameterError("function value outside Y");
    }
    a[f[x]] |= 1ULL << x;
  }
  return a;
}

AllocationFamily AllocationFamily::FromFunctions(
    int num_items, int num_indices, const std::vector<Function>& functions) {
  std::vector<Allocation> members;
  members.reserve(functions.size());
  for (const Function& f : functions) {
    if (static_cast<int>(f.size()) != num_items) {
      throw ParameterError("function length differs from |X|");
    }
    members.push_back(AllocationOfFunction(f, num_indices));
  }
  return AllocationFamily(num_items, num_indices, 1, std::move(members));
}

std::vector<Function> AllocationFamily::TotalFunctions() const {
  std::vector<Function> out;
  for (const Allocation& a : members_) {
    Function f(num_items_, -1);
    bool total = true;
    for (int x = 0; x < num_items_ && total; ++x) {
      for (int y = 0; y < num_indices_; ++y) {
        if ((a[y] >> x) & 1ULL) {
          if (f[x] != -1) {
            total = false;
            break;
          }
          f[x] = y;
        }
      }
      if (f[x] == -1) total = false;
    }
    if (total) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mechlab
