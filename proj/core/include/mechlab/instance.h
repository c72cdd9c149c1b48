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

#ifndef MECHLAB_INSTANCE_H_
#define MECHLAB_INSTANCE_H_

#include <cstdint>
#include <vector>

#include "mechlab/valuation.h"

namespace mechlab {

// n bidders with valuations over the same m items.
class Instance {
 public:
  explicit Instance(std::vector<Valuation> valuations);

  int num_bidders() const { return static_cast<int>(valuations_.size()); }
  int num_items() const { return num_items_; }
  const Valuation& valuation(int bidder) const { return valuations_.at(bidder); }
  const std::vector<Valuation>& valuations() const { return valuations_; }

  bool AllAdditive() const;
  // A copy with bidder i's valuation replaced.
  Instance WithValuation(int bidder, Valuation v) const;
  // max_i v_i([m]).
  Money MaxGrandBundleValue() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int num_items_ = 0;
  std::vector<Valuation> valuations_;
};

// Hard instance for single-price mechanisms: b buckets, bucket i holding
// c^(b-i) items worth c^i to every bidder except one "special" bidder per item
// who values it at c^(i+1).
struct BucketParams {
  int b = 0;
  int c = 0;
  int n = 0;
};

void ValidateBucketParams(const BucketParams& p);

// Item layout of a bucket instance. Items are numbered bucket by bucket,
// bucket 0 first.
struct BucketLayout {
  std::vector<int> sizes;   // c^(b-i)
  std::vector<int> starts;  // first item index of bucket i
  int num_items = 0;

  int BucketOf(int item) const;
};

BucketLayout BucketLayoutFor(const BucketParams& p);
// Specials are dealt round-robin by item index.
int BucketSpecialBidder(const BucketParams& p, int item);

Instance GenBucket(const BucketParams& p);

// Additive instance whose item columns are independent: with probability
// 1/c^k (k = 1..b) a random permutation of one c^(k+1) and n-1 copies of
// c^k, otherwise all zeros. Column j draws from
// DeriveSeed(seed, streams::kPostedColumn, j).
Instance GenRandomPosted(int b, int c, int n, int m, std::uint64_t seed);

// round(2 * m^(1/2 - eps)).
int Interest01BidderCount(int m, double eps);
// Interested bidder per item; item j draws from
// DeriveSeed(seed, streams::kInterestColumn, j).
std::vector<int> Interest01Assignment(int m, int n, std::uint64_t seed);
// 0/1-additive instance: each item interests one uniformly random bidder.
Instance GenInterest01(int m, double eps, std::uint64_t seed);
Instance Interest01Instance(const std::vector<int>& assignment, int n);

// Polar additive profile: each (bidder, item) flag is set with probability
// 1/n. Bidder i's flags draw from DeriveSeed(seed, streams::kPolarEntry, i).
Instance GenPolar(int n, int m, std::uint64_t seed);

// Additive profile with integer values uniform on [0, max_value].
Instance GenRandomAdditive(int n, int m, int max_value, std::uint64_t seed);

}  // namespace mechlab

#endif  // MECHLAB_INSTANCE_H_
