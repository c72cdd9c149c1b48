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

#ifndef MECHLAB_MECHANISMS_H_
#define MECHLAB_MECHANISMS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mechlab/allocation_family.h"
#include "mechlab/instance.h"
#include "mechlab/item_set.h"
#include "mechlab/rational.h"

namespace mechlab {

// A per-item price threshold. Exclusive thresholds sit an infinitesimal above
// `value`: items worth exactly `value` are not bought, and a purchase is
// charged `value`.
struct Threshold {
  Money value;
  bool inclusive = true;

  Price AsPrice() const { return Price(value, !inclusive); }
  // True iff the threshold is <= x as a real number (an exclusive threshold
  // at v is <= x iff v < x).
  bool AtMost(const Money& x) const {
    return inclusive ? value <= x : value < x;
  }
  // True iff the threshold lies in the half-open interval (lo, hi].
  bool InInterval(const Money& lo, const Money& hi) const {
    return !AtMost(lo) && AtMost(hi);
  }

  friend bool operator==(const Threshold&, const Threshold&) = default;
};

// Bidders are visited in `order`; bidder i may buy any remaining items at
// prices[i] each.
struct SinglePriceSpec {
  std::vector<int> order;
  std::vector<Threshold> prices;  // indexed by bidder

  friend bool operator==(const SinglePriceSpec&,
                         const SinglePriceSpec&) = default;
};

// Bidders are visited in `order`; bidder i may buy any subset S of remaining
// items for sum_{j in S} prices[i][j].
struct PostedPriceSpec {
  std::vector<int> order;
  std::vector<std::vector<Money>> prices;  // [bidder][item]

  friend bool operator==(const PostedPriceSpec&,
                         const PostedPriceSpec&) = default;
};

struct Outcome {
  std::vector<ItemSet> allocation;  // per bidder, pairwise disjoint
  std::vector<Money> payments;      // per bidder, >= 0
  Money welfare;                    // sum_i v_i(allocation[i])

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// An outcome with nothing allocated.
Outcome EmptyOutcome(const Instance& inst);
// Throws ParameterError unless the outcome fits the instance, bundles are
// disjoint, payments are non-negative and welfare matches the allocation.
void ValidateOutcome(const Outcome& outcome, const Instance& inst);
// Sum of bidder values of the allocation.
Money AllocationWelfare(const std::vector<ItemSet>& allocation,
                        const Instance& inst);
Money BidderUtility(const Outcome& outcome, const Instance& inst, int bidder);

Outcome RunSinglePrice(const SinglePriceSpec& spec, const Instance& inst);
Outcome RunPostedPrice(const PostedPriceSpec& spec, const Instance& inst);

// Visits bidders by decreasing bid (ties: lower index first), each paying its
// own bid per item.
SinglePriceSpec SingleBidSpec(std::span<const Money> bids);
Outcome RunSingleBid(std::span<const Money> bids, const Instance& inst);

// floor(n / e) with 1/e replaced by the 18-digit truncation
// 0.367879441171442321, so the cutoff is identical on every platform.
int SecretaryCutoff(int n);

struct SecretarySale {
  int winner = -1;  // -1: unsold
  Money price;
};

// One item's adaptive sale. `arrival` lists bidders in arrival order. The
// first `cutoff` arrivals are refused and their values recorded; afterwards
// the price is the largest recorded value (0 if none) and the first bidder
// whose value reaches it buys at that price.
SecretarySale SecretaryItemSale(std::span<const Money> values,
                                std::span<const int> arrival, int cutoff);

// Per item, an independent uniform arrival order drawn from
// DeriveSeed(arrival_seed, streams::kSecretaryArrival, item). Additive and
// polar additive valuations only.
Outcome RunSecretary(const Instance& inst, std::uint64_t arrival_seed);

// Welfare maximization over `range` with Clarke-pivot payments computed in
// the range. Welfare ties go to the first member in canonical order.
Outcome RunMir(const AllocationFamily& range, const Instance& inst);
// Index of the member RunMir selects.
std::size_t MirChoice(const AllocationFamily& range, const Instance& inst);

// Converts an allocation mask vector into per-bidder item sets.
std::vector<ItemSet> ToItemSets(const Allocation& a, int num_items);

using MechanismRun = std::function<Outcome(const Instance&)>;

struct TruthViolation {
  int bidder = 0;
  int deviation = 0;  // index into the bidder's deviation list
  Money truthful_utility;
  Money deviant_utility;
};

// For each bidder and each misreport in deviations[bidder], reruns the
// mechanism with the misreport substituted and reports every case where the
// bidder's true utility strictly improves.
std::vector<TruthViolation> CheckTruthful(
    const MechanismRun& mechanism, const Instance& inst,
    const std::vector<std::vector<Valuation>>& deviations);

}  // namespace mechlab

#endif  // MECHLAB_MECHANISMS_H_
