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

#include "mechlab/mechanisms.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "mechlab/errors.h"
#include "mechlab/random.h"

namespace mechlab {
namespace {

void CheckOrder(const std::vector<int>& order, int n) {
  if (static_cast<int>(order.size()) != n) {
    throw ParameterError("order must list all " + std::to_string(n) +
                         " bidders");
  }
  std::vector<bool> seen(n, false);
  for (int i : order) {
    if (i < 0 || i >= n || seen[i]) {
      throw ParameterError("order is not a permutation of the bidders");
    }
    seen[i] = true;
  }
}

}  // namespace

Outcome EmptyOutcome(const Instance& inst) {
  Outcome out;
  out.allocation.assign(inst.num_bidders(), ItemSet(inst.num_items()));
  out.payments.assign(inst.num_bidders(), Money(0));
  return out;
}

Money AllocationWelfare(const std::vector<ItemSet>& allocation,
                        const Instance& inst) {
  Money total;
  for (int i = 0; i < inst.num_bidders(); ++i) {
    total += inst.valuation(i).Value(allocation[i]);
  }
  return total;
}

void ValidateOutcome(const Outcome& outcome, const Instance& inst) {
  const int n = inst.num_bidders();
  if (static_cast<int>(outcome.allocation.size()) != n ||
      static_cast<int>(outcome.payments.size()) != n) {
    throw ParameterError("outcome size does not match the bidder count");
  }
  ItemSet used(inst.num_items());
  for (int i = 0; i < n; ++i) {
    const ItemSet& s = outcome.allocation[i];
    if (s.universe_size() != inst.num_items()) {
      throw ParameterError("bundle universe does not match the item count");
    }
    if (s.Intersects(used)) {
      throw ParameterError("allocation bundles overlap");
    }
    used |= s;
    if (outcome.payments[i].sign() < 0) {
      throw ParameterError("negative payment");
    }
  }
  if (AllocationWelfare(outcome.allocation, inst) != outcome.welfare) {
    throw ParameterError("welfare does not match the allocation");
  }
}

Money BidderUtility(const Outcome& outcome, const Instance& inst, int bidder) {
  return inst.valuation(bidder).Value(outcome.allocation.at(bidder)) -
         outcome.payments.at(bidder);
}

Outcome RunSinglePrice(const SinglePriceSpec& spec, const Instance& inst) {
  const int n = inst.num_bidders();
  const int m = inst.num_items();
  CheckOrder(spec.order, n);
  if (static_cast<int>(spec.prices.size()) != n) {
    throw ParameterError("single-price spec needs one price per bidder");
  }
  Outcome out = EmptyOutcome(inst);
  ItemSet remaining = ItemSet::Full(m);
  std::vector<Price> prices(m);
  for (int bidder : spec.order) {
    const Threshold& t = spec.prices[bidder];
    if (t.value.sign() < 0) throw ParameterError("negative price");
    std::fill(prices.begin(), prices.end(), t.AsPrice());
    ItemSet bought = Demand(inst.valuation(bidder), prices, remaining);
    out.payments[bidder] = t.value * Money(bought.Size());
    remaining -= bought;
    out.allocation[bidder] = std::move(bought);
  }
  out.welfare = AllocationWelfare(out.allocation, inst);
  return out;
}

Outcome RunPostedPrice(const PostedPriceSpec& spec, const Instance& inst) {
  const int n = inst.num_bidders();
  const int m = inst.num_items();
  CheckOrder(spec.order, n);
  if (static_cast<int>(spec.prices.size()) != n) {
    throw ParameterError("posted-price matrix needs one row per bidder");
  }
  Outcome out = EmptyOutcome(inst);
  ItemSet remaining = ItemSet::Full(m);
  for (int bidder : spec.order) {
    const std::vector<Money>& row = spec.prices[bidder];
    if (static_cast<int>(row.size()) != m) {
      throw ParameterError("posted-price row needs one price per item");
    }
    std::vector<Price> prices;
    prices.reserve(m);
    for (const Money& p : row) {
      if (p.sign() < 0) throw ParameterError("negative price");
      prices.emplace_back(p);
    }
    ItemSet bought = Demand(inst.valuation(bidder), prices, remaining);
    Money pay;
    for (int j : bought.Items()) pay += row[j];
    out.payments[bidder] = pay;
    remaining -= bought;
    out.allocation[bidder] = std::move(bought);
  }
  out.welfare = AllocationWelfare(out.allocation, inst);
  return out;
}

SinglePriceSpec SingleBidSpec(std::span<const Money> bids) {
  SinglePriceSpec spec;
  spec.order.resize(bids.size());
  std::iota(spec.order.begin(), spec.order.end(), 0);
  std::stable_sort(spec.order.begin(), spec.order.end(),
                   [&](int a, int b) { return bids[a] > bids[b]; });
  for (const Money& b : bids) {
    if (b.sign() < 0) throw ParameterError("negative bid");
    spec.prices.push_back(Threshold{b, true});
  }
  return spec;
}

Outcome RunSingleBid(std::span<const Money> bids, const Instance& inst) {
  if (static_cast<int>(bids.size()) != inst.num_bidders()) {
    throw ParameterError("single-bid mechanism needs one bid per bidder");
  }
  return RunSinglePrice(SingleBidSpec(bids), inst);
}

int SecretaryCutoff(int n) {
  constexpr std::int64_t kInvENum = 367879441171442321LL;
  constexpr std::int64_t kInvEDen = 1000000000000000000LL;
  if (n < 0) throw ParameterError("negative bidder count");
  return static_cast<int>((static_cast<__int128>(n) * kInvENum) / kInvEDen);
}

SecretarySale SecretaryItemSale(std::span<const Money> values,
                                std::span<const int> arrival, int cutoff) {
  SecretarySale sale;
  Money recorded;
  const int n = static_cast<int>(arrival.size());
  for (int t = 0; t < n; ++t) {
    const Money& v = values[arrival[t]];
    if (t < cutoff) {
      recorded = Max(recorded, v);
    } else if (v >= recorded) {
      sale.winner = arrival[t];
      sale.price = recorded;
      break;
    }
  }
  return sale;
}

Outcome RunSecretary(const Instance& inst, std::uint64_t arrival_seed) {
  if (!inst.AllAdditive()) {
    throw UnsupportedValuationError(
        "the secretary mechanism supports additive bidders only");
  }
  const int n = inst.num_bidders();
  const int m = inst.num_items();
  const int cutoff = SecretaryCutoff(n);
  Outcome out = EmptyOutcome(inst);
  std::vector<Money> column(n);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) column[i] = inst.valuation(i).ItemValue(j);
    Rng rng(DeriveSeed(arrival_seed, streams::kSecretaryArrival, j));
    const std::vector<int> arrival = rng.Permutation(n);
    const SecretarySale sale = SecretaryItemSale(column, arrival, cutoff);
    if (sale.winner >= 0) {
      out.allocation[sale.winner].Insert(j);
      out.payments[sale.winner] += sale.price;
    }
  }
  out.welfare = AllocationWelfare(out.allocation, inst);
  return out;
}

std::vector<ItemSet> ToItemSets(const Allocation& a, int num_items) {
  std::vector<ItemSet> sets;
  sets.reserve(a.size());
  for (std::uint64_t mask : a) sets.push_back(ItemSet::FromMask(num_items, mask));
  return sets;
}

namespace {

void CheckRange(const AllocationFamily& range, const Instance& inst) {
  if (range.empty()) throw ParameterError("MIR range is empty");
  if (range.num_items() != inst.num_items() ||
      range.num_indices() != inst.num_bidders()) {
    throw ParameterError("MIR range dimensions do not match the instance");
  }
  if (range.duplication() != 1) {
    throw ParameterError("MIR auctions need a 1-duplicate range");
  }
}

// values[k][i] = v_i(member k's bundle for i).
std::vector<std::vector<Money>> MemberValues(const AllocationFamily& range,
                                             const Instance& inst) {
  const int n = inst.num_bidders();
  const int m = inst.num_items();
  std::vector<std::vector<Money>> values;
  values.reserve(range.size());
  for (const Allocation& a : range.members()) {
    std::vector<Money> row(n);
    for (int i = 0; i < n; ++i) {
      row[i] = inst.valuation(i).Value(ItemSet::FromMask(m, a[i]));
    }
    values.push_back(std::move(row));
  }
  return values;
}

std::size_t ArgmaxExcluding(const std::vector<std::vector<Money>>& values,
                            int excluded, Money* best_out) {
  std::size_t best = 0;
  Money best_welfare;
  for (std::size_t k = 0; k < values.size(); ++k) {
    Money w;
    for (std::size_t i = 0; i < values[k].size(); ++i) {
      if (static_cast<int>(i) != excluded) w += values[k][i];
    }
    if (k == 0 || w > best_welfare) {
      best = k;
      best_welfare = w;
    }
  }
  if (best_out != nullptr) *best_out = best_welfare;
  return best;
}

}  // namespace

std::size_t MirChoice(const AllocationFamily& range, const Instance& inst) {
  CheckRange(range, inst);
  return ArgmaxExcluding(MemberValues(range, inst), -1, nullptr);
}

Outcome RunMir(const AllocationFamily& range, const Instance& inst) {
  CheckRange(range, inst);
  const int n = inst.num_bidders();
  const auto values = MemberValues(range, inst);
  const std::size_t chosen = ArgmaxExcluding(values, -1, nullptr);
  Outcome out;
  out.allocation = ToItemSets(range.members()[chosen], inst.num_items());
  out.payments.resize(n);
  for (int i = 0; i < n; ++i) {
    Money best_without_i;
    ArgmaxExcluding(values, i, &best_without_i);
    Money others_at_choice;
    for (int y = 0; y < n; ++y) {
      if (y != i) others_at_choice += values[chosen][y];
    }
    out.payments[i] = best_without_i - others_at_choice;
  }
  out.welfare = AllocationWelfare(out.allocation, inst);
  return out;
}

std::vector<TruthViolation> CheckTruthful(
    const MechanismRun& mechanism, const Instance& inst,
    const std::vector<std::vector<Valuation>>& deviations) {
  std::vector<TruthViolation> violations;
  const Outcome truthful = mechanism(inst);
  const int n = std::min<int>(inst.num_bidders(),
                              static_cast<int>(deviations.size()));
  for (int i = 0; i < n; ++i) {
    const Money honest = BidderUtility(truthful, inst, i);
    for (std::size_t d = 0; d < deviations[i].size(); ++d) {
      const Outcome lied = mechanism(inst.WithValuation(i, deviations[i][d]));
      // Utility is judged with the bidder's true valuation.
      const Money gained = BidderUtility(lied, inst, i);
      if (gained > honest) {
        violations.push_back(
            TruthViolation{i, static_cast<int>(d), honest, gained});
      }
    }
  }
  return violations;
}

}  // namespace mechlab
