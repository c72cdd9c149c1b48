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

#ifndef MECHLAB_ORACLES_H_
#define MECHLAB_ORACLES_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mechlab/instance.h"
#include "mechlab/mechanisms.h"
#include "mechlab/rational.h"

namespace mechlab {

// Largest n^m for which OptWelfare enumerates assignments of non-additive
// instances.
inline constexpr std::uint64_t kMaxOptAssignments = 10'000'000;

// Optimal social welfare. Additive instances use per-item maxima; others
// enumerate all n^m assignments (ResourceError beyond kMaxOptAssignments).
Money OptWelfare(const Instance& inst);
// An allocation achieving OptWelfare (first found in enumeration order).
std::vector<ItemSet> OptAllocation(const Instance& inst);

// The threshold grid of the single-price search: (0, inclusive) plus an
// inclusive and an exclusive threshold at every distinct single-item value,
// ascending with inclusive before exclusive at equal values.
std::vector<Threshold> SinglePriceGrid(const Instance& inst);

enum class OrderMode {
  kAll,    // every permutation of the bidders
  kFixed,  // only SearchOptions::fixed_order
};

struct SearchOptions {
  OrderMode orders = OrderMode::kAll;
  std::vector<int> fixed_order;  // used with kFixed; empty means identity
  // Maximum number of specs to evaluate; exceeding it is a ResourceError.
  std::uint64_t budget = 50'000'000;
  int threads = 1;
  // Declares the instance symmetric under bidder relabeling (true for bucket
  // instances), so kAll searches only the identity order.
  bool bidders_symmetric = false;
};

struct SearchReport {
  SinglePriceSpec best_spec;
  Money best_welfare;
  std::uint64_t search_space_size = 0;
  bool exhaustive = false;
  bool orders_reduced = false;
};

// Exhaustive welfare maximization over orders x SinglePriceGrid^n. Ties go to
// the lowest canonical index (order-major, then the price tuple read as
// base-|grid| digits with bidder 0 most significant), independent of the
// thread count.
SearchReport BestSinglePrice(const Instance& inst,
                             const SearchOptions& options = {});

// Calls `visit` with every spec of the search space in canonical order.
void ForEachSinglePriceSpec(
    const Instance& inst, const SearchOptions& options,
    const std::function<void(const SinglePriceSpec&)>& visit);

// Number of (bidder, bucket) pairs in which the bidder holds all of its
// special items of that bucket.
int SpecialPairCount(const Outcome& outcome, const BucketParams& params);

// n_j for buckets j = 0..b-1: let i_j be the first bidder in the visiting
// order whose threshold is <= c^j; n_j counts bidders before i_j whose
// threshold lies in (c^j, c^(j+1)]. When no such i_j exists every bidder
// with a threshold in that interval is counted.
std::vector<int> PriceClassCounts(const SinglePriceSpec& spec,
                                  const BucketParams& params);

struct PostedColumnExpectation {
  Money exhaustive;       // exact expectation over the column distribution
  Money formula;          // sum over levels with i_k present
  Money degenerate_part;  // exact contribution of levels without i_k
  bool premise_holds = false;  // every level k has an i_k
  std::vector<int> n_k;   // index k-1 for level k
};

// Per-item welfare of a posted-price mechanism on a GenRandomPosted column.
// `prices` lists the item's prices in visiting order. The exhaustive value
// enumerates the special bidder's position at every level; the formula is
// sum_k c(1+n_k)/n + (n-1-n_k)/n over levels where i_k exists.
PostedColumnExpectation PostedPriceExpectedWelfare(
    std::span<const Money> prices, int b, int c);
// cb/n + c + b.
Money PostedPriceWelfareBound(int b, int c, int n);

struct AllocationWelfareStats {
  double mean_welfare = 0;
  double frequency_at_least = 0;  // fraction of draws with welfare >= 2m/n
};

// Monte Carlo over 0/1 interest instances (m items, n bidders); trial t uses
// Interest01Assignment(m, n, DeriveSeed(seed, streams::kTrial, t)). Each
// allocation lists the receiving bidder per item (-1: unassigned).
std::vector<AllocationWelfareStats> AllocationSetWelfareBound(
    int m, int n, const std::vector<std::vector<int>>& allocations,
    int trials, std::uint64_t seed, int threads = 1);

using PhaseOneStrategy = std::function<Money(int bidder, const Valuation&)>;
using BidMechanism =
    std::function<Outcome(std::span<const Money> bids, const Instance&)>;

// max over profiles in the product of `valuation_sets` of OPT / welfare when
// every bidder bids strategy(i, v_i) and the mechanism runs on the truthful
// profile. Zero welfare with positive OPT is an infinite ratio.
ExtendedRatio GuaranteeRatio(
    const PhaseOneStrategy& strategy, const BidMechanism& mechanism,
    const std::vector<std::vector<Valuation>>& valuation_sets);

// Exact probability that the highest-value bidder wins a secretary sale with
// the given cutoff, over all n! arrival orders of distinct values. n <= 10.
Rational SecretaryWinProbability(int n, int cutoff);
// (r/n) * sum_{j=r+1}^{n} 1/(j-1) for r >= 1, and 1/n for r = 0.
Rational SecretaryFormula(int n, int cutoff);

}  // namespace mechlab

#endif  // MECHLAB_ORACLES_H_
