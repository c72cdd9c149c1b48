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

#ifndef MECHLAB_LEARNING_H_
#define MECHLAB_LEARNING_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mechlab/instance.h"
#include "mechlab/oracles.h"
#include "mechlab/rational.h"

namespace mechlab {

// A finite simultaneous-move game. Utilities lie in
// [utility_low(), utility_low() + utility_range()].
class NormalFormGame {
 public:
  virtual ~NormalFormGame() = default;

  virtual int num_players() const = 0;
  virtual int num_actions(int player) const = 0;
  // Writes one utility per player and returns the profile's welfare.
  virtual double Payoffs(std::span<const int> profile,
                         std::span<double> utilities) const = 0;
  virtual double utility_low() const = 0;
  virtual double utility_range() const = 0;
};

// A game stored as a full payoff table, player 0's action most significant.
class TabularGame : public NormalFormGame {
 public:
  // utilities[profile][player] and welfare[profile] in table order.
  TabularGame(std::vector<int> num_actions,
              std::vector<std::vector<double>> utilities,
              std::vector<double> welfare, double utility_low,
              double utility_range);
  // Builds the table by calling `payoffs` once per profile.
  static TabularGame FromFunction(
      std::vector<int> num_actions,
      const std::function<double(std::span<const int>, std::span<double>)>&
          payoffs,
      double utility_low, double utility_range);

  int num_players() const override {
    return static_cast<int>(num_actions_.size());
  }
  int num_actions(int player) const override {
    return num_actions_.at(player);
  }
  double Payoffs(std::span<const int> profile,
                 std::span<double> utilities) const override;
  double utility_low() const override { return low_; }
  double utility_range() const override { return range_; }

  std::size_t num_profiles() const { return welfare_.size(); }
  std::size_t ProfileIndex(std::span<const int> profile) const;
  std::vector<int> ProfileAt(std::size_t index) const;

 private:
  std::vector<int> num_actions_;
  std::vector<std::vector<double>> utilities_;
  std::vector<double> welfare_;
  double low_;
  double range_;
};

// Per-bidder phase-one bids.
struct StrategySpace {
  std::vector<std::vector<Money>> bids;  // [bidder][action]
};

// {0} together with every power base^t lying in [smallest positive single-item
// value, largest grand-bundle value].
std::vector<Money> SingleBidGrid(const Instance& inst, int base);
StrategySpace UniformStrategySpace(const Instance& inst,
                                   const std::vector<Money>& grid);
// Throws ParameterError unless every bidder has between 1 and (m+1)^2
// actions, the polynomial size that keeps one round's broadcast O(log m)
// bits.
void CheckStrategySpaceSize(const StrategySpace& space, int num_items);

// The phase-one game of an interpolation mechanism: each profile of bids is
// run through `mechanism` with truthful phase-two behavior. Utilities are
// normalized against B = max grand-bundle value, so they must lie in [0, B].
TabularGame MechanismGame(const Instance& inst, const StrategySpace& space,
                          const BidMechanism& mechanism);

enum class Algorithm { kHedge, kSwap };
std::string_view AlgorithmName(Algorithm a);

// Per-player learning trace in normalized reward units.
struct PlayerAudit {
  std::vector<std::vector<double>> mixtures;  // [round][action]
  std::vector<std::vector<double>> rewards;   // [round][action], in [0, 1]
};

struct PlayHistory {
  Algorithm algorithm = Algorithm::kHedge;
  int rounds = 0;
  std::vector<double> etas;     // sqrt(ln K / T), per player
  double utility_low = 0;
  double utility_range = 1;     // B
  std::vector<std::vector<int>> actions;       // [round][player]
  std::vector<std::vector<double>> utilities;  // [round][player]
  std::vector<double> welfare;                 // [round]
  std::vector<PlayerAudit> audit;              // [player]
  // Learner-side regret sums, normalized units, accumulated online.
  std::vector<double> internal_external_regret;
  std::vector<double> internal_swap_regret;
};

// Simultaneous play for T rounds. Every player runs its own learner with
// rate sqrt(ln K / T) on full-information rewards (u - low) / range and
// samples its action from its mixture with
// Rng(DeriveSeed(seed, streams::kLearner, player)).
PlayHistory RunDynamics(const NormalFormGame& game, Algorithm algorithm,
                        int rounds, std::uint64_t seed);
PlayHistory RunHedge(const NormalFormGame& game, int rounds,
                     std::uint64_t seed);
PlayHistory RunSwapRegret(const NormalFormGame& game, int rounds,
                          std::uint64_t seed);

// An adaptive adversary for a single learner: given the round and the
// learner's current mixture, returns the raw reward of every action.
using RewardSequence =
    std::function<std::vector<double>(int round, std::span<const double>)>;

// One learner against a reward sequence whose values lie in
// [low, low + range]; the history has a single player.
PlayHistory RunOnlineSequence(int num_actions, const RewardSequence& rewards,
                              double low, double range, Algorithm algorithm,
                              int rounds, std::uint64_t seed);

// Expected regrets recomputed from the audit trail, in utility units and
// averaged over rounds.
double ExternalRegret(const PlayHistory& history, int player);
double SwapRegret(const PlayHistory& history, int player);
// The learner's own accounting in the same units.
double InternalExternalRegret(const PlayHistory& history, int player);
double InternalSwapRegret(const PlayHistory& history, int player);
// 2 * range * sqrt(ln K / T).
double HedgeRegretBound(const PlayHistory& history, int player);

// OPT divided by the mean welfare of the last half of the rounds (from
// round floor(T/2) on); +infinity when that mean is zero.
double EmpiricalPoa(const PlayHistory& history, const Money& opt);

// Empirical frequency of each action profile over rounds [from, T).
std::vector<double> EmpiricalJointDistribution(const PlayHistory& history,
                                               const TabularGame& game,
                                               int from);

inline constexpr std::size_t kMaxNashProfiles = 1'000'000;

// Every pure Nash equilibrium (no player gains by a unilateral deviation),
// in table order.
std::vector<std::vector<int>> PureNashEquilibria(const TabularGame& game);

}  // namespace mechlab

#endif  // MECHLAB_LEARNING_H_
