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

#ifndef MECHLAB_TESTS_SUPPORT_NAIVE_H_
#define MECHLAB_TESTS_SUPPORT_NAIVE_H_

// Slow reference implementations written without the library's shortcuts.

#include <cstdint>
#include <vector>

#include "mechlab/allocation_family.h"
#include "mechlab/instance.h"
#include "mechlab/mechanisms.h"
#include "mechlab/valuation.h"

namespace mechlab::testing {

// Enumerates every subset of `available`.
ItemSet NaiveDemand(const Valuation& v, const std::vector<Price>& prices,
                    const ItemSet& available);

// Enumerates all (n+1)^m assignments, unassigned included.
Money NaiveOptWelfare(const Instance& inst);

// Sequential purchases using NaiveDemand.
Outcome NaiveSinglePrice(const SinglePriceSpec& spec, const Instance& inst);
Outcome NaivePostedPrice(const PostedPriceSpec& spec, const Instance& inst);

// Welfare-maximizing member (first in canonical order) with Clarke pivots.
Outcome NaiveMir(const AllocationFamily& range, const Instance& inst);

std::uint64_t Binomial(int n, int k);

// All valuations for one bidder with additive values drawn from `grid`.
std::vector<Valuation> AdditiveGrid(int num_items,
                                    const std::vector<Money>& grid);

// Per-item posted-price welfare from the column distribution, enumerating
// the level and the special bidder's position.
Money NaivePostedColumn(const std::vector<Money>& prices, int b, int c);
Money NaivePostedFormula(const std::vector<Money>& prices, int b, int c);

// Probability that the best of n candidates wins with the given cutoff, over
// all n! arrival orders.
Rational NaiveSecretaryWin(int n, int r);

}  // namespace mechlab::testing

#endif  // MECHLAB_TESTS_SUPPORT_NAIVE_H_
