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

#include "mechlab/learning.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "mechlab/errors.h"
#include "mechlab/mechanisms.h"
#include "mechlab/random.h"

namespace mechlab {

TabularGame::TabularGame(std::vector<int> num_actions,
                         std::vector<std::vector<double>> utilities,
                         std::vector<double> welfare, double utility_low,
                         double utility_range)
    : num_actions_(std::move(num_actions)),
      utilities_(std::move(utilities)),
      welfare_(std::move(welfare)),
      low_(utility_low),
      range_(utility_range) {
  if (num_actions_.empty()) throw ParameterError("game needs a player");
  std::size_t profiles = 1;
  for (int k : num_actions_) {
    if (k < 1) throw ParameterError("every player needs an action");
    profiles *= static_cast<std::size_t>(k);
  }
  if (utilities_.size() != profiles || welfare_.size() != profiles) {
    throw ParameterError("payoff table size does not match the action counts");
  }
  for (const auto& row : utilities_) {
    if (row.size() != num_actions_.size()) {
      throw ParameterError("payoff row needs one utility per player");
    }
  }
  if (!(range_ > 0)) throw ParameterError("utility range must be positive");
}

TabularGame TabularGame::FromFunction(
    std::vector<int> num_actions,
    const std::function<double(std::span<const int>, std::span<double>)>&
        payoffs,
    double utility_low, double utility_range) {
  std::size_t profiles = 1;
  for (int k : num_actions) {
    if (k < 1) throw ParameterError("every player needs an action");
    profiles *= static_cast<std::size_t>(k);
    if (profiles > kMaxNashProfiles * 10) {
      throw ResourceError("payoff table too large");
    }
  }
  const std::size_t n = num_actions.size();
  std::vector<std::vector<double>> utilities(profiles,
                                             std::vector<double>(n));
  std::vector<double> welfare(profiles);
  std::vector<int> profile(n, 0);
  for (std::size_t p = 0; p < profiles; ++p) {
    welfare[p] = payoffs(profile, utilities[p]);
    for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
      if (++profile[i] < num_actions[i]) break;
      profile[i] = 0;
    }
  }
  return TabularGame(std::move(num_actions), std::move(utilities),
                     std::move(welfare), utility_low, utility_range);
}

std::size_t TabularGame::ProfileIndex(std::span<const int> profile) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < num_actions_.size(); ++i) {
    index = index * num_actions_[i] + profile[i];
  }
  return index;
}

std::vector<int> TabularGame::ProfileAt(std::size_t index) const {
  std::vector<int> profile(num_actions_.size());
  for (int i = static_cast<int>(num_actions_.size()) - 1; i >= 0; --i) {
    profile[i] = static_cast<int>(index % num_actions_[i]);
    index /= num_actions_[i];
  }
  return profile;
}

double TabularGame::Payoffs(std::span<const int> profile,
                            std::span<double> utilities) const {
  const std::size_t index = ProfileIndex(profile);
  std::copy(utilities_[index].begin(), utilities_[index].end(),
            utilities.begin());
  return welfare_[index];
}

std::vector<Money> SingleBidGrid(const Instance& inst, int base) {
  if (base < 2) throw ParameterError("bid grid base must be >= 2");
  Money lo;
  const Money hi = inst.MaxGrandBundleValue();
  bool found = false;
  for (const Valuation& v : inst.valuations()) {
    for (int j = 0; j < inst.num_items(); ++j) {
      const Money x = v.ItemValue(j);
      if (x.sign() > 0 && (!found || x < lo)) {
        lo = x;
        found = true;
      }
    }
  }
  std::vector<Money> grid = {Money(0)};
  if (!found) return grid;
  // Smallest power of base that is >= lo, possibly a negative power.
  Money p(1);
  while (p > lo) p /= Money(base);
  while (p < lo) p *= Money(base);
  for (; p <= hi; p *= Money(base)) grid.push_back(p);
  return grid;
}

StrategySpace UniformStrategySpace(const Instance& inst,
                                   const std::vector<Money>& grid) {
  return StrategySpace{
      std::vector<std::vector<Money>>(inst.num_bidders(), grid)};
}

void CheckStrategySpaceSize(const StrategySpace& space, int num_items) {
  const std::int64_t cap =
      static_cast<std::int64_t>(num_items + 1) * (num_items + 1);
  for (std::size_t i = 0; i < space.bids.size(); ++i) {
    const auto k = static_cast<std::int64_t>(space.bids[i].size());
    if (k < 1 || k > cap) {
      throw ParameterError("bidder " + std::to_string(i) + " has " +
                           std::to_string(k) + " strategies; at most " +
                           std::to_string(cap) + " keep the game learnable");
    }
  }
}

TabularGame MechanismGame(const Instance& inst, const StrategySpace& space,
                          const BidMechanism& mechanism) {
  const int n = inst.num_bidders();
  if (static_cast<int>(space.bids.size()) != n) {
    throw ParameterError("strategy space needs one bid list per bidder");
  }
  std::vector<int> num_actions;
  for (const auto& bids : space.bids) {
    num_actions.push_back(static_cast<int>(bids.size()));
  }
  const Money bound = inst.MaxGrandBundleValue();
  if (bound.sign() <= 0) throw ParameterError("instance has no value at stake");
  auto payoffs = [&](std::span<const int> profile, std::span<double> u) {
    std::vector<Money> bids(n);
    for (int i = 0; i < n; ++i) bids[i] = space.bids[i][profile[i]];
    const Outcome out = mechanism(bids, inst);
    for (int i = 0; i < n; ++i) {
      const Money utility = BidderUtility(out, inst, i);
      if (utility.sign() < 0 || utility > bound) {
        throw ParameterError("mechanism utility outside [0, B]");
      }
      u[i] = utility.ToDouble();
    }
    return out.welfare.ToDouble();
  };
  return TabularGame::FromFunction(std::move(num_actions), payoffs, 0.0,
                                   bound.ToDouble());
}

std::string_view AlgorithmName(Algorithm a) {
  return a == Algorithm::kHedge ? "hedge" : "swap";
}

namespace {

// Multiplicative weights on cumulative rewards.
class Hedge {
 public:
  Hedge(int k, double eta) : cumulative_(k, 0.0), eta_(eta) {}

  void Mixture(std::span<double> out) const {
    const double top =
        *std::max_element(cumulative_.begin(), cumulative_.end());
    double total = 0;
    for (std::size_t a = 0; a < cumulative_.size(); ++a) {
      out[a] = std::exp(eta_ * (cumulative_[a] - top));
      total += out[a];
    }
    for (double& x : out) x /= total;
  }

  void Update(std::span<const double> rewards, double scale) {
    for (std::size_t a = 0; a < cumulative_.size(); ++a) {
      cumulative_[a] += scale * rewards[a];
    }
  }

 private:
  std::vector<double> cumulative_;
  double eta_;
};

// Solves p = p Q for a row-stochastic Q with positive entries.
std::vector<double> StationaryDistribution(
    const std::vector<std::vector<double>>& q) {
  const int k = static_cast<int>(q.size());
  // Rows of (Q^T - I), with the last equation replaced by sum(p) = 1.
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) a[r][c] = q[c][r] - (r == c ? 1.0 : 0.0);
  }
  for (int c = 0; c < k; ++c) a[k - 1][c] = 1.0;
  a[k - 1][k] = 1.0;
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int r = col + 1; r < k; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    const double d = a[col][col];
    if (d == 0.0) continue;
    for (int r = 0; r < k; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col] / d;
      for (int c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> p(k);
  double total = 0;
  for (int r = 0; r < k; ++r) {
    p[r] = a[r][r] != 0.0 ? std::max(0.0, a[r][k] / a[r][r]) : 0.0;
    total += p[r];
  }
  if (!(total > 0)) {
    std::fill(p.begin(), p.end(), 1.0 / k);
  } else {
    for (double& x : p) x /= total;
  }
  return p;
}

// Hedge, or the swap-regret wrapper: one Hedge copy per own action, played
// through the stationary distribution of the copies' recommendations.
class Learner {
 public:
  Learner(Algorithm algorithm, int k, double eta)
      : algorithm_(algorithm), k_(k) {
    const int copies = algorithm == Algorithm::kHedge ? 1 : k;
    for (int c = 0; c < copies; ++c) copies_.emplace_back(k, eta);
  }

  void Mixture(std::span<double> out) const {
    if (algorithm_ == Algorithm::kHedge) {
      copies_[0].Mixture(out);
      return;
    }
    std::vector<std::vector<double>> q(k_, std::vector<double>(k_));
    for (int c = 0; c < k_; ++c) copies_[c].Mixture(q[c]);
    const std::vector<double> p = StationaryDistribution(q);
    std::copy(p.begin(), p.end(), out.begin());
  }

  // Copy c is credited p_c * r.
  void Update(std::span<const double> mixture, std::span<const double> r) {
    if (algorithm_ == Algorithm::kHedge) {
      copies_[0].Update(r, 1.0);
      return;
    }
    for (int c = 0; c < k_; ++c) copies_[c].Update(r, mixture[c]);
  }

 private:
  Algorithm algorithm_;
  int k_;
  std::vector<Hedge> copies_;
};

// Regret sums in normalized units. The online learner and the audit replay
// both feed it round by round, so their sums agree bit for bit.
class RegretAccumulator {
 public:
  explicit RegretAccumulator(int k)
      : k_(k), cumulative_(k, 0.0), pair_(static_cast<std::size_t>(k) * k,
                                          0.0) {}

  void Add(std::span<const double> p, std::span<const double> r) {
    double expected = 0;
    for (int a = 0; a < k_; ++a) {
      cumulative_[a] += r[a];
      expected += p[a] * r[a];
      for (int b = 0; b < k_; ++b) pair_[a * k_ + b] += p[a] * r[b];
    }
    expected_ += expected;
  }

  double External() const {
    return *std::max_element(cumulative_.begin(), cumulative_.end()) -
           expected_;
  }

  double Swap() const {
    double total = 0;
    for (int a = 0; a < k_; ++a) {
      double best = pair_[a * k_ + a];
      for (int b = 0; b < k_; ++b) best = std::max(best, pair_[a * k_ + b]);
      total += best - pair_[a * k_ + a];
    }
    return total;
  }

 private:
  int k_;
  std::vector<double> cumulative_;
  std::vector<double> pair_;  // sum_t p_t[a] r_t[b]
  double expected_ = 0;
};

double LearningRate(int k, int rounds) {
  return std::sqrt(std::log(static_cast<double>(std::max(k, 2))) / rounds);
}

double Normalize(double u, double low, double range) {
  const double r = (u - low) / range;
  constexpr double kSlack = 1e-9;
  if (r < -kSlack || r > 1 + kSlack) {
    throw ParameterError("utility " + std::to_string(u) +
                         " outside the declared range");
  }
  return std::clamp(r, 0.0, 1.0);
}

int Sample(Rng& rng, std::span<const double> p) {
  const double u = rng.UniformDouble();
  double acc = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    acc += p[a];
    if (u < acc) return static_cast<int>(a);
  }
  // Rounding left u above the total; take the last action with mass.
  for (int a = static_cast<int>(p.size()) - 1; a >= 0; --a) {
    if (p[a] > 0) return a;
  }
  return 0;
}

}  // namespace

PlayHistory RunDynamics(const NormalFormGame& game, Algorithm algorithm,
                        int rounds, std::uint64_t seed) {
  if (rounds < 1) throw ParameterError("rounds must be >= 1");
  const int n = game.num_players();
  PlayHistory h;
  h.algorithm = algorithm;
  h.rounds = rounds;
  h.utility_low = game.utility_low();
  h.utility_range = game.utility_range();
  h.audit.resize(n);
  std::vector<Learner> learners;
  std::vector<RegretAccumulator> regret;
  std::vector<Rng> rngs;
  std::vector<std::vector<double>> mixtures(n);
  for (int i = 0; i < n; ++i) {
    const int k = game.num_actions(i);
    h.etas.push_back(LearningRate(k, rounds));
    learners.emplace_back(algorithm, k, h.etas.back());
    regret.emplace_back(k);
    rngs.emplace_back(DeriveSeed(seed, streams::kLearner, i));
    mixtures[i].resize(k);
    h.audit[i].mixtures.reserve(rounds);
    h.audit[i].rewards.reserve(rounds);
  }
  h.actions.reserve(rounds);
  h.utilities.reserve(rounds);
  h.welfare.reserve(rounds);
  std::vector<int> profile(n);
  std::vector<double> utilities(n);
  std::vector<double> scratch(n);
  for (int t = 0; t < rounds; ++t) {
    for (int i = 0; i < n; ++i) {
      learners[i].Mixture(mixtures[i]);
      profile[i] = Sample(rngs[i], mixtures[i]);
    }
    const double welfare = game.Payoffs(profile, utilities);
    h.actions.push_back(profile);
    h.utilities.push_back(utilities);
    h.welfare.push_back(welfare);
    // Full information: each player learns what every own action would have
    // earned against the others' realized actions.
    std::vector<int> deviated = profile;
    for (int i = 0; i < n; ++i) {
      const int k = game.num_actions(i);
      std::vector<double> r(k);
      for (int a = 0; a < k; ++a) {
        deviated[i] = a;
        game.Payoffs(deviated, scratch);
        r[a] = Normalize(scratch[i], h.utility_low, h.utility_range);
      }
      deviated[i] = profile[i];
      regret[i].Add(mixtures[i], r);
      learners[i].Update(mixtures[i], r);
      h.audit[i].mixtures.push_back(mixtures[i]);
      h.audit[i].rewards.push_back(std::move(r));
    }
  }
  for (int i = 0; i < n; ++i) {
    h.internal_external_regret.push_back(regret[i].External());
    h.internal_swap_regret.push_back(regret[i].Swap());
  }
  return h;
}

PlayHistory RunHedge(const NormalFormGame& game, int rounds,
                     std::uint64_t seed) {
  return RunDynamics(game, Algorithm::kHedge, rounds, seed);
}

PlayHistory RunSwapRegret(const NormalFormGame& game, int rounds,
                          std::uint64_t seed) {
  return RunDynamics(game, Algorithm::kSwap, rounds, seed);
}

PlayHistory RunOnlineSequence(int num_actions, const RewardSequence& rewards,
                              double low, double range, Algorithm algorithm,
                              int rounds, std::uint64_t seed) {
  if (rounds < 1) throw ParameterError("rounds must be >= 1");
  if (num_actions < 1) throw ParameterError("learner needs an action");
  if (!(range > 0)) throw ParameterError("reward range must be positive");
  PlayHistory h;
  h.algorithm = algorithm;
  h.rounds = rounds;
  h.utility_low = low;
  h.utility_range = range;
  h.etas.push_back(LearningRate(num_actions, rounds));
  h.audit.resize(1);
  Learner learner(algorithm, num_actions, h.etas[0]);
  RegretAccumulator regret(num_actions);
  Rng rng(DeriveSeed(seed, streams::kLearner, 0));
  std::vector<double> mixture(num_actions);
  for (int t = 0; t < rounds; ++t) {
    learner.Mixture(mixture);
    const int action = Sample(rng, mixture);
    const std::vector<double> raw = rewards(t, mixture);
    if (static_cast<int>(raw.size()) != num_actions) {
      throw ParameterError("reward vector length differs from K");
    }
    std::vector<double> r(num_actions);
    for (int a = 0; a < num_actions; ++a) r[a] = Normalize(raw[a], low, range);
    h.actions.push_back({action});
    h.utilities.push_back({raw[action]});
    h.welfare.push_back(raw[action]);
    regret.Add(mixture, r);
    learner.Update(mixture, r);
    h.audit[0].mixtures.push_back(mixture);
    h.audit[0].rewards.push_back(std::move(r));
  }
  h.internal_external_regret.push_back(regret.External());
  h.internal_swap_regret.push_back(regret.Swap());
  return h;
}

namespace {

RegretAccumulator Replay(const PlayHistory& history, int player) {
  const PlayerAudit& audit = history.audit.at(player);
  if (audit.rewards.empty()) throw ParameterError("history has no audit trail");
  RegretAccumulator acc(static_cast<int>(audit.rewards.front().size()));
  for (std::size_t t = 0; t < audit.rewards.size(); ++t) {
    acc.Add(audit.mixtures[t], audit.rewards[t]);
  }
  return acc;
}

double ToUtilityUnits(const PlayHistory& h, double normalized_sum) {
  return normalized_sum * h.utility_range / h.rounds;
}

}  // namespace

double ExternalRegret(const PlayHistory& history, int player) {
  return ToUtilityUnits(history, Replay(history, player).External());
}

double SwapRegret(const PlayHistory& history, int player) {
  return ToUtilityUnits(history, Replay(history, player).Swap());
}

double InternalExternalRegret(const PlayHistory& history, int player) {
  return ToUtilityUnits(history, history.internal_external_regret.at(player));
}

double InternalSwapRegret(const PlayHistory& history, int player) {
  return ToUtilityUnits(history, history.internal_swap_regret.at(player));
}

double HedgeRegretBound(const PlayHistory& history, int player) {
  const auto k =
      static_cast<int>(history.audit.at(player).rewards.at(0).size());
  return 2.0 * history.utility_range *
         std::sqrt(std::log(static_cast<double>(std::max(k, 2))) /
                   history.rounds);
}

double EmpiricalPoa(const PlayHistory& history, const Money& opt) {
  if (history.rounds < 1) throw ParameterError("empty history");
  const int from = history.rounds / 2;
  double total = 0;
  for (int t = from; t < history.rounds; ++t) total += history.welfare[t];
  const double mean = total / (history.rounds - from);
  if (mean <= 0) {
    return opt.sign() > 0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  return opt.ToDouble() / mean;
}

std::vector<double> EmpiricalJointDistribution(const PlayHistory& history,
                                               const TabularGame& game,
                                               int from) {
  if (from < 0 || from >= history.rounds) {
    throw ParameterError("window start outside the history");
  }
  std::vector<double> freq(game.num_profiles(), 0.0);
  for (int t = from; t < history.rounds; ++t) {
    freq[game.ProfileIndex(history.actions[t])] += 1.0;
  }
  for (double& f : freq) f /= history.rounds - from;
  return freq;
}

std::vector<std::vector<int>> PureNashEquilibria(const TabularGame& game) {
  if (game.num_profiles() > kMaxNashProfiles) {
    throw ResourceError("too many profiles for pure Nash enumeration");
  }
  const int n = game.num_players();
  std::vector<std::vector<int>> equilibria;
  std::vector<double> u(n), alt(n);
  for (std::size_t p = 0; p < game.num_profiles(); ++p) {
    std::vector<int> profile = game.ProfileAt(p);
    game.Payoffs(profile, u);
    bool stable = true;
    for (int i = 0; i < n && stable; ++i) {
      std::vector<int> dev = profile;
      for (int a = 0; a < game.num_actions(i) && stable; ++a) {
        dev[i] = a;
        game.Payoffs(dev, alt);
        if (alt[i] > u[i]) stable = false;
      }
    }
    if (stable) equilibria.push_back(std::move(profile));
  }
  return equilibria;
}

}  // namespace mechlab
