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

#ifndef MECHLAB_TESTS_SUPPORT_FIXTURES_H_
#define MECHLAB_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mechlab/learning.h"
#include "mechlab/mechanisms.h"

namespace mechlab::testing {

struct RewardFixture {
  std::string name;
  RewardSequence rewards;  // raw rewards in [0, range]
};

// Adversarial reward sequences for a single K-action learner: i.i.d. noise,
// a rotating best action, an adaptive adversary that rewards the learner's
// least likely action, and a mid-run switch of the best action.
std::vector<RewardFixture> AdversarialFixtures(int count, int num_actions,
                                               double range,
                                               std::uint64_t seed);

// Zero-sum 2x2 game whose unique equilibrium mixes uniformly.
TabularGame MatchingPennies();
// 2x2 game with no pure equilibrium whose unique correlated equilibrium is
// the product of (1/2, 1/2) and (1/3, 2/3).
TabularGame AsymmetricPennies();
// Two players with three actions each; action 2 strictly dominates.
TabularGame DominanceGame();

// Single-price visit in index order where everyone pays their full reported
// value for whatever they take: a negative control for truthfulness checks.
Outcome RunFirstPriceBundle(const Instance& inst);

}  // namespace mechlab::testing

#endif  // MECHLAB_TESTS_SUPPORT_FIXTURES_H_
