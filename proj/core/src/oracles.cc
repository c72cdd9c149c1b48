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

#include "mechlab/oracles.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "mechlab/errors.h"
#include "mechlab/random.h"

namespace mechlab {
namespace {

std::uint64_t CheckedMul(std::uint64_t a, std::uint64_t b,
                         std::uint64_t limit) {
  if (a != 0 && b > limit / a) return limit + 1;
  return a * b;
}

std::int64_t IntPow(std::int64_t base, int exp) {
  Rational r = Pow(Rational(base), exp);
  return r.num();
}

struct Assignment {
  Money best;
  std::vector<ItemSet> best_alloc;
  bool found = false;
};

void AssignItems(const Instance& inst, int item, std::vector<ItemSet>& alloc,
                 Assignment& out) {
  const int n = inst.num_bidders();
  if (item == inst.num_items()) {
    const Money w = AllocationWelfare(alloc, inst);
    if (!out.found || w > out.best) {
      out.best = w;
      out.best_alloc = alloc;
      out.found = true;
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    alloc[i].Insert(item);
    AssignItems(inst, item + 1, alloc, out);
    alloc[i].Erase(item);
  }
}

}  // namespace

std::vector<ItemSet> OptAllocation(const Instance& inst) {
  const int n = inst.num_bidders();
  const int m = inst.num_items();
  std::vector<ItemSet> alloc(n, ItemSet(m));
  if (inst.AllAdditive()) {
    for (int j = 0; j < m; ++j) {
      int best = 0;
      Money best_value = inst.valuation(0).ItemValue(j);
      for (int i = 1; i < n; ++i) {
        Money v = inst.valuation(i).ItemValue(j);
        if (v > best_value) {
          best = i;
          best_value = v;
        }
      }
      alloc[best].Insert(j);
    }
    return alloc;
  }
  std::uint64_t count = 1;
  for (int j = 0; j < m; ++j) {
    count = CheckedMul(count, static_cast<std::uint64_t>(n),
                       kMaxOptAssignments);
  }
  if (count > kMaxOptAssignments) {
    throw ResourceError("n^m exceeds the exhaustive welfare budget");
  }
  Assignment out;
  AssignItems(inst, 0, alloc, out);
  return out.best_alloc;
}

Money OptWelfare(const Instance& inst) {
  if (inst.AllAdditive()) {
    Money total;
    for (int j = 0; j < inst.num_items(); ++j) {
      Money best;
      for (int i = 0; i < inst.num_bidders(); ++i) {
        best = Max(best, inst.valuation(i).ItemValue(j));
      }
      total += best;
    }
    return total;
  }
  return AllocationWelfare(OptAllocation(inst), inst);
}

std::vector<Threshold> SinglePriceGrid(const Instance& inst) {
  std::set<Money> values;
  for (const Valuation& v : inst.valuations()) {
    for (int j = 0; j < inst.num_items(); ++j) values.insert(v.ItemValue(j));
  }
  std::vector<Threshold> grid = {Threshold{Money(0), true}};
  for (const Money& v : values) {
    if (!v.is_zero()) grid.push_back(Threshold{v, true});
    grid.push_back(Threshold{v, false});
  }
  return grid;
}

namespace {

struct SearchSpace {
  std::vector<std::vector<int>> orders;
  std::vector<Threshold> grid;
  std::uint64_t tuples = 0;  // |grid|^n
  std::uint64_t size = 0;
  bool orders_reduced = false;
};

SearchSpace BuildSearchSpace(const Instance& inst,
                             const SearchOptions& options) {
  const int n = inst.num_bidders();
  SearchSpace space;
  space.grid = SinglePriceGrid(inst);
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  if (options.orders == OrderMode::kFixed) {
    space.orders.push_back(options.fixed_order.empty() ? identity
                                                       : options.fixed_order);
  } else if (options.bidders_symmetric) {
    space.orders.push_back(identity);
    space.orders_reduced = n > 1;
  } else {
    std::vector<int> order = identity;
    std::uint64_t count = 0;
    do {
      if (++count > options.budget) {
        throw ResourceError("order enumeration exceeds the search budget");
      }
      space.orders.push_back(order);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  space.tuples = 1;
  for (int i = 0; i < n; ++i) {
    space.tuples = CheckedMul(space.tuples, space.grid.size(), options.budget);
  }
  space.size = CheckedMul(space.tuples, space.orders.size(), options.budget);
  if (space.size > options.budget) {
    throw ResourceError("single-price search space of more than " +
                        std::to_string(options.budget) + " specs");
  }
  return space;
}

SinglePriceSpec DecodeSpec(const SearchSpace& space, std::uint64_t index,
                           int n) {
  SinglePriceSpec spec;
  spec.order = space.orders[index / space.tuples];
  std::uint64_t tuple = index % space.tuples;
  spec.prices.resize(n);
  for (int i = n - 1; i >= 0; --i) {
    spec.prices[i] = space.grid[tuple % space.grid.size()];
    tuple /= space.grid.size();
  }
  return spec;
}

}  // namespace

void ForEachSinglePriceSpec(
    const Instance& inst, const SearchOptions& options,
    const std::function<void(const SinglePriceSpec&)>& visit) {
  const SearchSpace space = BuildSearchSpace(inst, options);
  for (std::uint64_t k = 0; k < space.size; ++k) {
    visit(DecodeSpec(space, k, inst.num_bidders()));
  }
}

SearchReport BestSinglePrice(const Instance& inst,
                             const SearchOptions& options) {
  const SearchSpace space = BuildSearchSpace(inst, options);
  const int n = inst.num_bidders();
  const int workers = static_cast<int>(std::clamp<std::uint64_t>(
      options.threads < 1 ? 1 : options.threads, 1, space.size));

  struct Best {
    std::uint64_t index = 0;
    Money welfare;
    bool found = false;
  };
  std::vector<Best> partial(workers);
  auto work = [&](int w) {
    const std::uint64_t lo = space.size * w / workers;
    const std::uint64_t hi = space.size * (w + 1) / workers;
    Best& best = partial[w];
    for (std::uint64_t k = lo; k < hi; ++k) {
      const Money welfare =
          RunSinglePrice(DecodeSpec(space, k, n), inst).welfare;
      if (!best.found || welfare > best.welfare) {
        best = Best{k, welfare, true};
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  // Blocks are ordered by index, so the first strict maximum is canonical.
  Best best;
  for (const Best& b : partial) {
    if (b.found && (!best.found || b.welfare > best.welfare)) best = b;
  }
  SearchReport report;
  report.best_spec = DecodeSpec(space, best.index, n);
  report.best_welfare = best.welfare;
  report.search_space_size = space.size;
  report.exhaustive = options.orders == OrderMode::kFixed ||
                      !space.orders_reduced;
  report.orders_reduced = space.orders_reduced;
  return report;
}

int SpecialPairCount(const Outcome& outcome, const BucketParams& params) {
  const BucketLayout layout = BucketLayoutFor(params);
  if (static_cast<int>(outcome.allocation.size()) != params.n) {
    throw ParameterError("outcome bidder count does not match the params");
  }
  for (const ItemSet& s : outcome.allocation) {
    if (s.universe_size() != layout.num_items) {
      throw ParameterError("outcome item count does not match the params");
    }
  }
  int pairs = 0;
  for (int i = 0; i < params.n; ++i) {
    for (int j = 0; j < params.b; ++j) {
      bool all = true;
      for (int item = layout.starts[j];
           item < layout.starts[j] + layout.sizes[j] && all; ++item) {
        if (BucketSpecialBidder(params, item) == i &&
            !outcome.allocation[i].Contains(item)) {
          all = false;
        }
      }
      pairs += all ? 1 : 0;
    }
  }
  return pairs;
}

std::vector<int> PriceClassCounts(const SinglePriceSpec& spec,
                                  const BucketParams& params) {
  ValidateBucketParams(params);
  if (static_cast<int>(spec.prices.size()) != params.n ||
      static_cast<int>(spec.order.size()) != params.n) {
    throw ParameterError("spec bidder count does not match the params");
  }
  std::vector<int> counts(params.b, 0);
  for (int j = 0; j < params.b; ++j) {
    const Money low(IntPow(params.c, j));
    const Money high(IntPow(params.c, j + 1));
    for (int bidder : spec.order) {
      const Threshold& t = spec.prices[bidder];
      if (t.AtMost(low)) break;  // i_j reached
      if (t.InInterval(low, high)) ++counts[j];
    }
  }
  return counts;
}

PostedColumnExpectation PostedPriceExpectedWelfare(
    std::span<const Money> prices, int b, int c) {
  const int n = static_cast<int>(prices.size());
  if (n < 1 || b < 1 || c < 2) {
    throw ParameterError("column expectation needs n >= 1, b >= 1, c >= 2");
  }
  PostedColumnExpectation out;
  out.premise_holds = true;
  for (int k = 1; k <= b; ++k) {
    const Money low(IntPow(c, k));
    const Money high = low * Money(c);
    const Money level_prob = Money(1) / low;
    // Exhaustive: the special value sits at each visiting position with
    // probability 1/n; the first bidder whose value meets its price buys.
    Money level;
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        const Money& value = t == s ? high : low;
        if (prices[t] <= value) {
          level += value;
          break;
        }
      }
    }
    level = level_prob * level / Money(n);
    out.exhaustive += level;

    int first_low = -1;
    for (int t = 0; t < n; ++t) {
      if (prices[t] <= low) {
        first_low = t;
        break;
      }
    }
    const int scan_end = first_low < 0 ? n : first_low;
    int n_k = 0;
    for (int t = 0; t < scan_end; ++t) n_k += prices[t] <= high ? 1 : 0;
    out.n_k.push_back(n_k);
    if (first_low < 0) {
      out.premise_holds = false;
      out.degenerate_part += level;
    } else {
      out.formula += Money(c) * Money(1 + n_k) / Money(n) +
                     Money(n - 1 - n_k) / Money(n);
    }
  }
  return out;
}

Money PostedPriceWelfareBound(int b, int c, int n) {
  return Money(c) * Money(b) / Money(n) + Money(c) + Money(b);
}

std::vector<AllocationWelfareStats> AllocationSetWelfareBound(
    int m, int n, const std::vector<std::vector<int>>& allocations,
    int trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  for (const auto& a : allocations) {
    if (static_cast<int>(a.size()) != m) {
      throw ParameterError("allocation length differs from m");
    }
    for (int owner : a) {
      if (owner < -1 || owner >= n) throw ParameterError("bidder out of range");
    }
  }
  const std::size_t count = allocations.size();
  const int workers = std::clamp(threads, 1, trials);
  // Integer sums are independent of the partition, hence deterministic.
  std::vector<std::vector<std::int64_t>> sum(
      workers, std::vector<std::int64_t>(count, 0));
  std::vector<std::vector<std::int64_t>> hits(
      workers, std::vector<std::int64_t>(count, 0));
  auto work = [&](int w) {
    const int lo = static_cast<int>(static_cast<std::int64_t>(trials) * w /
                                    workers);
    const int hi = static_cast<int>(static_cast<std::int64_t>(trials) *
                                    (w + 1) / workers);
    for (int t = lo; t < hi; ++t) {
      const std::vector<int> interest =
          Interest01Assignment(m, n, DeriveSeed(seed, streams::kTrial, t));
      for (std::size_t a = 0; a < count; ++a) {
        std::int64_t welfare = 0;
        for (int j = 0; j < m; ++j) {
          welfare += allocations[a][j] == interest[j] ? 1 : 0;
        }
        sum[w][a] += welfare;
        // welfare >= 2m/n
        hits[w][a] += welfare * n >= 2LL * m ? 1 : 0;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  std::vector<AllocationWelfareStats> stats(count);
  for (std::size_t a = 0; a < count; ++a) {
    std::int64_t s = 0, h = 0;
    for (int w = 0; w < workers; ++w) {
      s += sum[w][a];
      h += hits[w][a];
    }
    stats[a].mean_welfare = static_cast<double>(s) / trials;
    stats[a].frequency_at_least = static_cast<double>(h) / trials;
  }
  return stats;
}

ExtendedRatio GuaranteeRatio(
    const PhaseOneStrategy& strategy, const BidMechanism& mechanism,
    const std::vector<std::vector<Valuation>>& valuation_sets) {
  const int n = static_cast<int>(valuation_sets.size());
  if (n < 1) throw ParameterError("guarantee ratio needs bidders");
  std::uint64_t profiles = 1;
  for (const auto& set : valuation_sets) {
    if (set.empty()) throw ParameterError("empty valuation set");
    profiles = CheckedMul(profiles, set.size(), kMaxOptAssignments);
  }
  if (profiles > kMaxOptAssignments) {
    throw ResourceError("too many valuation profiles");
  }
  ExtendedRatio worst = ExtendedRatio::Of(Money(1), Money(1));
  std::vector<std::size_t> digit(n, 0);
  for (std::uint64_t p = 0; p < profiles; ++p) {
    std::vector<Valuation> vals;
    std::vector<Money> bids;
    for (int i = 0; i < n; ++i) {
      vals.push_back(valuation_sets[i][digit[i]]);
      bids.push_back(strategy(i, vals.back()));
    }
    const Instance inst(std::move(vals));
    const Outcome out = mechanism(bids, inst);
    worst = std::max(worst, ExtendedRatio::Of(OptWelfare(inst), out.welfare));
    for (int i = 0; i < n; ++i) {
      if (++digit[i] < valuation_sets[i].size()) break;
      digit[i] = 0;
    }
  }
  return worst;
}

Rational SecretaryWinProbability(int n, int cutoff) {
  if (n < 1 || n > 10) throw ParameterError("secretary enumeration needs n in 1..10");
  if (cutoff < 0 || cutoff > n) throw ParameterError("cutoff out of range");
  std::vector<Money> values(n);
  for (int i = 0; i < n; ++i) values[i] = Money(i + 1);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::int64_t wins = 0, total = 0;
  do {
    ++total;
    wins += SecretaryItemSale(values, order, cutoff).winner == n - 1 ? 1 : 0;
  } while (std::next_permutation(order.begin(), order.end()));
  return Rational(wins, total);
}

Rational SecretaryFormula(int n, int cutoff) {
  if (n < 1 || cutoff < 0 || cutoff > n) {
    throw ParameterError("secretary formula needs 0 <= r <= n, n >= 1");
  }
  if (cutoff == 0) return Rational(1, n);
  Rational sum;
  for (int j = cutoff + 1; j <= n; ++j) sum += Rational(1, j - 1);
  return Rational(cutoff, n) * sum;
}

}  // namespace mechlab
