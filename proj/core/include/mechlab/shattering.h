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

#ifndef MECHLAB_SHATTERING_H_
#define MECHLAB_SHATTERING_H_

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "mechlab/allocation_family.h"
#include "mechlab/rational.h"

namespace mechlab {

// The functions S -> A induced by members of `family`: a member contributes
// f when every x in S lies in S_y for exactly one y in A, and then f(x) = y.
// Sets are bitmasks over X and Y; f lists images of the elements of S in
// increasing order.
std::set<Function> Project(const AllocationFamily& family, std::uint64_t s,
                           std::uint64_t a);
// Project(family, s, a) contains all |A|^|S| functions.
bool IsShattered(const AllocationFamily& family, std::uint64_t s,
                 std::uint64_t a);

// A set of total functions X -> Y, deduplicated and sorted.
class FunctionFamily {
 public:
  FunctionFamily(int num_items, int num_indices,
                 std::vector<Function> functions);
  static FunctionFamily Of(const AllocationFamily& family);

  int num_items() const { return num_items_; }
  int num_indices() const { return num_indices_; }
  const std::vector<Function>& functions() const { return functions_; }
  std::size_t size() const { return functions_.size(); }

 private:
  int num_items_;
  int num_indices_;
  std::vector<Function> functions_;
};

// Y^X in lexicographic order (f(0) most significant). FamilyFromMask picks
// the subfamily selected by a bitmask over that list (|Y|^|X| <= 64).
std::vector<Function> AllFunctions(int num_items, int num_indices);
FunctionFamily FamilyFromMask(int num_items, int num_indices,
                              std::uint64_t mask);
// Uniform size in [1, |Y|^|X|], then a uniform subset of that size.
FunctionFamily RandomFunctionFamily(int num_items, int num_indices,
                                    std::uint64_t seed);

// Largest |A|, A a subset of X, admitting k-subsets Y_a of Y (a in A) such
// that every selector a -> y_a in Y_a is the restriction of some member.
// Empty families have dimension 0 by convention. Requires 1 <= k <= |Y|.
int DimK(const FunctionFamily& family, int k);
// The same quantity from a second enumerator: counts the distinct restrictions
// of members falling inside each box prod Y_a.
int DimKByCounting(const FunctionFamily& family, int k);
// True iff `a` (bitmask over X) is k-shattered.
bool IsKShattered(const FunctionFamily& family, std::uint64_t a, int k);

// sum_{i=0}^{dim} C(|X|,i) (k-1)^(|X|-i) C(|Y|,k)^i, exactly.
std::uint64_t SauerShelahBound(int num_items, int num_indices, int k, int dim);
// |family| <= SauerShelahBound(|X|, |Y|, k, DimK(family, k)).
bool SauerShelahCheck(const FunctionFamily& family, int k);

struct PropertyCheck {
  bool holds = false;
  std::optional<Allocation> witness;  // a violating allocation of X
};

// alpha-containment: for every allocation S of X some member T has
// |{y : S_y nonempty, S_y subset of T_y}| >= |{y : S_y nonempty}| / alpha.
PropertyCheck CheckContainment(const AllocationFamily& family,
                               const ExtendedRatio& alpha);
// alpha-intersection: sum_y |S_y cap T_y| >= sum_y |S_y| / alpha.
PropertyCheck CheckIntersection(const AllocationFamily& family,
                                const ExtendedRatio& alpha);

enum class Property { kContainment, kIntersection };

// Smallest alpha >= 1 with the property: the largest ratio demanded by any
// allocation.
ExtendedRatio MinimalAlpha(const AllocationFamily& family, Property property);
// The same minimum located by binary search over the realized ratios, calling
// the Check functions.
ExtendedRatio MinimalAlphaBySearch(const AllocationFamily& family,
                                   Property property);

enum class MirValuationClass { kSingleMinded, kZeroOneAdditive };

// Worst OPT / MIR welfare over every profile of the class. Single-minded
// profiles give each bidder either value 0 or a nonempty interest set with a
// value from `value_grid`; 0/1-additive profiles give each bidder any set of
// items worth 1. Requires a nonempty 1-duplicate family.
ExtendedRatio MirRatio(const AllocationFamily& family,
                       MirValuationClass valuation_class,
                       const std::vector<Money>& value_grid = {Money(1)});

}  // namespace mechlab

#endif  // MECHLAB_SHATTERING_H_
