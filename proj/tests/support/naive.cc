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

#include "support/naive.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mechlab::testing {

ItemSet NaiveDemand(const Valuation& v, const std::vector<Price>& prices,
                    const ItemSet& available) {
  const std::vector<int> items = available.Items();
  const int m = v.num_items();
  ItemSet best(m);
  Money best_real;
  int best_above = 0;
  bool have = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size());
       ++mask) {
    std::vector<int> chosen;
    for (std::size_t t = 0; t < items.size(); ++t) {
      if ((mask >> t) & 1) chosen.push_back(items[t]);
    }
    const ItemSet bundle(m, chosen);
    Money real = v.Value(bundle);
    int above = 0;
    for (int j : chosen) {
      real -= prices[j].amount;
      above += prices[j].above ? 1 : 0;
    }
    bool better = !have;
    if (have) {
      if (real != best_real) {
        better = real > best_real;
      } else if (above != best_above) {
        better = above < best_above;
      } else if (bundle.Size() != best.Size()) {
        better = bundle.Size() > best.Size();
      } else {
        better = bundle.Items() < best.Items();
      }
    }
    if (better) {
      have = true;
      best = bundle;
      best_real = real;
      best_above = above;
    }
  }
  return best;
}

Money NaiveOptWelfare(const Instance& inst) {
  const int n = inst.num_bidders();
  const int m = inst.num_items();
  std::vector<int> owner(m, 0);  // value n: unassigned
  Money best;
  while (true) {
    std::vector<std::vector<int>> bundles(n);
    for (int j = 0; j < m; ++j) {
      if (owner[j] < n) bundles[owner[j]].push_back(j);
    }
    Money w;
    for (int i = 0; i < n; ++i) w += inst.valuation(i).Value(ItemSet(m, bundles[i]));
    best = Max(best, w);
    int j = 0;
    while (j < m && owner[j] == n) owner[j++] = 0;
    if (j == m) break;
    ++owner[j];
  }
  return best;
}

namespace {

Outcome Sequential(const std::vector<int>& order, const Instance& inst,
                   const std::vector<std::vector<Price>>& prices) {
  const int n = inst.num_bidders();
  const int m = inst.num_items();
  Outcome out;
  out.allocation.assign(n, ItemSet(m));
  out.payments.assign(n, Money(0));
  ItemSet remaining = ItemSet::Full(m);
  for (int i : order) {
    const ItemSet take = NaiveDemand(inst.valuation(i), prices[i], remaining);
    out.allocation[i] = take;
    for (int j : take.Items()) out.payments[i] += prices[i][j].amount;
    out.welfare += inst.valuation(i).Value(take);
    remaining = remaining - take;
  }
  return out;
}

}  // namespace

Outcome NaiveSinglePrice(const SinglePriceSpec& spec, const Instance& inst) {
  std::vector<std::vector<Price>> prices;
  for (const Threshold& t : spec.prices) {
    prices.emplace_back(inst.num_items(), Price(t.value, !t.inclusive));
  }
  return Sequential(spec.order, inst, prices);
}

Outcome NaivePostedPrice(const PostedPriceSpec& spec, const Instance& inst) {
  std::vector<std::vector<Price>> prices;
  for (const auto& row : spec.prices) {
    prices.emplace_back(row.begin(), row.end());
  }
  return Sequential(spec.order, inst, prices);
}

Outcome NaiveMir(const AllocationFamily& range, const Instance& inst) {
  const int n = inst.num_bidders();
  const int m = inst.num_items();
  auto value = [&](const Allocation& a, int i) {
    return inst.valuation(i).Value(ItemSet::FromMask(m, a[i]));
  };
  auto welfare_without = [&](const Allocation& a, int skip) {
    Money w;
    for (int i = 0; i < n; ++i) {
      if (i != skip) w += value(a, i);
    }
    return w;
  };
  std::size_t chosen = 0;
  for (std::size_t h = 1; h < range.size(); ++h) {
    if (welfare_without(range.members()[h], -1) >
        welfare_without(range.members()[chosen], -1)) {
      chosen = h;
    }
  }
  const Allocation& a = range.members()[chosen];
  Outcome out;
  for (int i = 0; i < n; ++i) {
    out.allocation.push_back(ItemSet::FromMask(m, a[i]));
    Money best_without;
    for (const Allocation& h : range.members()) {
      best_without = Max(best_without, welfare_without(h, i));
    }
    out.payments.push_back(best_without - welfare_without(a, i));
  }
  out.welfare = welfare_without(a, -1);
  return out;
}

std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Valuation> AdditiveGrid(int num_items,
                                    const std::vector<Money>& grid) {
  std::vector<Valuation> out;
  std::vector<std::size_t> digit(num_items, 0);
  while (true) {
    std::vector<Money> values;
    for (std::size_t d : digit) values.push_back(grid[d]);
    out.push_back(Valuation::Additive(values));
    int j = 0;
    while (j < num_items && digit[j] + 1 == grid.size()) digit[j++] = 0;
    if (j == num_items) break;
    ++digit[j];
  }
  return out;
}

// Independent exhaustive expectation: enumerate levels and positions of the
// special value directly from the generator's definition.
Money NaivePostedColumn(const std::vector<Money>& prices, int b, int c) {
  const int n = static_cast<int>(prices.size());
  Money total;
  Money ck(1);
  for (int k = 1; k <= b; ++k) {
    ck *= Money(c);
    for (int special = 0; special < n; ++special) {
      for (int i = 0; i < n; ++i) {
        const Money v = i == special ? ck * Money(c) : ck;
        if (prices[i] <= v) {
          total += v / (ck * Money(n));
          break;
        }
      }
    }
  }
  return total;
}

// The closed form per level k: i_k is the first visitor with price <= c^k
// and n_k counts earlier visitors priced in (c^k, c^(k+1)]. Levels without
// an i_k are skipped, as is the formula's premise.
Money NaivePostedFormula(const std::vector<Money>& prices, int b, int c) {
  const int n = static_cast<int>(prices.size());
  Money total;
  Money ck(1);
  for (int k = 1; k <= b; ++k) {
    ck *= Money(c);
    int nk = 0;
    bool found = false;
    for (int i = 0; i < n && !found; ++i) {
      if (prices[i] <= ck) {
        found = true;
      } else if (prices[i] <= ck * Money(c)) {
        ++nk;
      }
    }
    if (found) total += Money(c * (1 + nk) + (n - 1 - nk), n);
  }
  return total;
}

// Independent enumeration: values are the ranks; the best candidate wins iff
// the first arrival after the cutoff beating every earlier value is it.
Rational NaiveSecretaryWin(int n, int r) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  long wins = 0, total = 0;
  do {
    ++total;
    const int observed =
        r == 0 ? 0 : *std::max_element(perm.begin(), perm.begin() + r);
    for (int t = r; t < n; ++t) {
      if (perm[t] >= observed) {
        wins += perm[t] == n;
        break;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Rational(wins, total);
}

}  // namespace mechlab::testing
