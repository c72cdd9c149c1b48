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

#include "mechlab/instance.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mechlab/errors.h"
#include "mechlab/random.h"

namespace mechlab {
namespace {

constexpr std::int64_t kMaxGeneratedItems = 10'000'000;

std::int64_t IntPow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > kMaxGeneratedItems * 1000 / base) {
      throw ParameterError("generator parameters overflow");
    }
    out *= base;
  }
  return out;
}

}  // namespace

Instance::Instance(std::vector<Valuation> valuations)
    : valuations_(std::move(valuations)) {
  if (valuations_.empty()) throw ParameterError("instance needs a bidder");
  num_items_ = valuations_.front().num_items();
  if (num_items_ < 1) throw ParameterError("instance needs an item");
  for (const Valuation& v : valuations_) {
    if (v.num_items() != num_items_) {
      throw ParameterError("valuations disagree on the number of items");
    }
  }
}

bool Instance::AllAdditive() const {
  return std::all_of(valuations_.begin(), valuations_.end(),
                     [](const Valuation& v) { return v.IsAdditive(); });
}

Instance Instance::WithValuation(int bidder, Valuation v) const {
  std::vector<Valuation> vals = valuations_;
  vals.at(bidder) = std::move(v);
  return Instance(std::move(vals));
}

Money Instance::MaxGrandBundleValue() const {
  Money best;
  for (const Valuation& v : valuations_) best = Max(best, v.GrandBundleValue());
  return best;
}

void ValidateBucketParams(const BucketParams& p) {
  if (p.b < 1) throw ParameterError("bucket count b must be >= 1");
  if (p.c < 2) throw ParameterError("base c must be >= 2");
  if (p.n < 1) throw ParameterError("bidder count n must be >= 1");
  if (p.c % p.n != 0) {
    throw ParameterError("n = " + std::to_string(p.n) +
                         " must divide c = " + std::to_string(p.c));
  }
}

int BucketLayout::BucketOf(int item) const {
  if (item < 0 || item >= num_items) throw DomainError("item out of range");
  auto it = std::upper_bound(starts.begin(), starts.end(), item);
  return static_cast<int>(it - starts.begin()) - 1;
}

BucketLayout BucketLayoutFor(const BucketParams& p) {
  ValidateBucketParams(p);
  BucketLayout layout;
  std::int64_t total = 0;
  for (int i = 0; i < p.b; ++i) {
    const std::int64_t size = IntPow(p.c, p.b - i);
    layout.starts.push_back(static_cast<int>(total));
    layout.sizes.push_back(static_cast<int>(size));
    total += size;
    if (total > kMaxGeneratedItems) {
      throw ParameterError("bucket instance has too many items");
    }
  }
  layout.num_items = static_cast<int>(total);
  return layout;
}

int BucketSpecialBidder(const BucketParams& p, int item) {
  return item % p.n;
}

Instance GenBucket(const BucketParams& p) {
  const BucketLayout layout = BucketLayoutFor(p);
  std::vector<std::vector<Money>> values(
      p.n, std::vector<Money>(layout.num_items));
  for (int i = 0; i < p.b; ++i) {
    const Money base(IntPow(p.c, i));
    const Money special = base * Money(p.c);
    for (int j = layout.starts[i]; j < layout.starts[i] + layout.sizes[i];
         ++j) {
      const int owner = BucketSpecialBidder(p, j);
      for (int bidder = 0; bidder < p.n; ++bidder) {
        values[bidder][j] = bidder == owner ? special : base;
      }
    }
  }
  std::vector<Valuation> vals;
  vals.reserve(p.n);
  for (auto& row : values) vals.push_back(Valuation::Additive(std::move(row)));
  return Instance(std::move(vals));
}

Instance GenRandomPosted(int b, int c, int n, int m, std::uint64_t seed) {
  if (b < 1 || c < 2 || n < 2 || m < 1) {
    throw ParameterError("random posted-price instance needs b>=1, c>=2, "
                         "n>=2, m>=1");
  }
  const std::int64_t scale = IntPow(c, b);
  std::vector<std::vector<Money>> values(n, std::vector<Money>(m));
  for (int j = 0; j < m; ++j) {
    Rng rng(DeriveSeed(seed, streams::kPostedColumn, j));
    // Level k owns a slice of width c^(b-k) out of c^b; the remainder is the
    // all-zero column.
    std::int64_t u = static_cast<std::int64_t>(rng.Uniform(scale));
    int level = 0;
    for (int k = 1; k <= b; ++k) {
      const std::int64_t width = IntPow(c, b - k);
      if (u < width) {
        level = k;
        break;
      }
      u -= width;
    }
    if (level == 0) continue;
    const int special = static_cast<int>(rng.Uniform(n));
    const Money low(IntPow(c, level));
    const Money high = low * Money(c);
    for (int i = 0; i < n; ++i) values[i][j] = i == special ? high : low;
  }
  std::vector<Valuation> vals;
  vals.reserve(n);
  for (auto& row : values) vals.push_back(Valuation::Additive(std::move(row)));
  return Instance(std::move(vals));
}

int Interest01BidderCount(int m, double eps) {
  if (m < 1) throw ParameterError("m must be >= 1");
  const int n = static_cast<int>(
      std::llround(2.0 * std::pow(static_cast<double>(m), 0.5 - eps)));
  if (n < 1) throw ParameterError("eps leaves fewer than one bidder");
  return n;
}

std::vector<int> Interest01Assignment(int m, int n, std::uint64_t seed) {
  std::vector<int> owner(m);
  for (int j = 0; j < m; ++j) {
    Rng rng(DeriveSeed(seed, streams::kInterestColumn, j));
    owner[j] = static_cast<int>(rng.Uniform(n));
  }
  return owner;
}

Instance Interest01Instance(const std::vector<int>& assignment, int n) {
  const int m = static_cast<int>(assignment.size());
  std::vector<std::vector<Money>> values(n, std::vector<Money>(m));
  for (int j = 0; j < m; ++j) values.at(assignment[j])[j] = Money(1);
  std::vector<Valuation> vals;
  vals.reserve(n);
  for (auto& row : values) vals.push_back(Valuation::Additive(std::move(row)));
  return Instance(std::move(vals));
}

Instance GenInterest01(int m, double eps, std::uint64_t seed) {
  const int n = Interest01BidderCount(m, eps);
  return Interest01Instance(Interest01Assignment(m, n, seed), n);
}

Instance GenPolar(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ParameterError("polar instance needs n, m >= 1");
  std::vector<Valuation> vals;
  vals.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(DeriveSeed(seed, streams::kPolarEntry, i));
    std::vector<bool> flags(m);
    for (int j = 0; j < m; ++j) flags[j] = rng.Uniform(n) == 0;
    vals.push_back(Valuation::PolarAdditive(std::move(flags)));
  }
  return Instance(std::move(vals));
}

Instance GenRandomAdditive(int n, int m, int max_value, std::uint64_t seed) {
  if (n < 1 || m < 1 || max_value < 0) {
    throw ParameterError("random additive instance needs n, m >= 1");
  }
  std::vector<Valuation> vals;
  vals.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(DeriveSeed(seed, streams::kAdditive, i));
    std::vector<Money> row(m);
    for (int j = 0; j < m; ++j) {
      row[j] = Money(static_cast<std::int64_t>(
          rng.Uniform(static_cast<std::uint64_t>(max_value) + 1)));
    }
    vals.push_back(Valuation::Additive(std::move(row)));
  }
  return Instance(std::move(vals));
}

}  // namespace mechlab
