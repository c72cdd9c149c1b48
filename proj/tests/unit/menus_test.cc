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

#include "mechlab/menus.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "mechlab/allocation_family.h"
#include "mechlab/errors.h"
#include "mechlab/instance.h"
#include "mechlab/mechanisms.h"
#include "mechlab/random.h"
#include "support/fixtures.h"
#include "support/naive.h"

namespace mechlab {
namespace {

using testing::Binomial;
using testing::NaiveMir;
using testing::NaivePostedPrice;

Money R(std::int64_t n, std::int64_t d = 1) { return Money(n, d); }

std::vector<bool> Flags(int m, std::uint64_t mask) {
  std::vector<bool> f(m);
  for (int j = 0; j < m; ++j) f[j] = mask >> j & 1;
  return f;
}

// Menu of bidder `who` under posted prices straight from the definition:
// the items left by earlier bidders, bought when the polar value reaches the
// price.
Menu DirectPostedMenu(const PostedPriceSpec& spec, const Instance& base,
                      int who) {
  const int m = base.num_items();
  ItemSet left = ItemSet::Full(m);
  for (int i : spec.order) {
    if (i == who) break;
    left -= NaivePostedPrice(spec, base).allocation[i];
  }
  Menu menu;
  menu.bidder = who;
  menu.num_items = m;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    std::uint64_t bundle = 0;
    Money price(0);
    for (int j : left.Items()) {
      const Money v = mask >> j & 1 ? R(1) : PolarLowValue(m);
      if (v >= spec.prices[who][j]) {
        bundle |= 1ULL << j;
        price += spec.prices[who][j];
      }
    }
    menu.entries[bundle] = price;
  }
  return menu;
}

MechanismRun Posted(const PostedPriceSpec& spec) {
  return [spec](const Instance& inst) { return RunPostedPrice(spec, inst); };
}

TEST(ExtractMenuTest, PostedPricesByHand) {
  const Instance base = GenPolar(2, 4, 3);
  PostedPriceSpec spec;
  spec.order = {0, 1};
  spec.prices = {{R(1, 2), R(2), R(1, 64), R(0)},
                 {R(1, 2), R(1, 2), R(1, 2), R(1, 2)}};
  const Menu menu = ExtractMenu(Posted(spec), base, 0);
  const std::map<std::uint64_t, Money> expected = {
      {0b1100, R(1, 64)}, {0b1101, R(1, 2) + R(1, 64)}};
  EXPECT_EQ(menu.entries, expected);
  EXPECT_EQ(menu, DirectPostedMenu(spec, base, 0));
}

TEST(ExtractMenuTest, PostedPricesMatchDirectComputation) {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.Uniform(2));
    const int m = 2 + static_cast<int>(rng.Uniform(4));
    const Instance base = GenPolar(n, m, 100 + trial);
    PostedPriceSpec spec;
    spec.order = rng.Permutation(n);
    spec.prices.assign(n, std::vector<Money>(m));
    const std::vector<Money> menu_prices = {R(0), PolarLowValue(m), R(1, 3),
                                            R(1), R(2)};
    for (auto& row : spec.prices) {
      for (auto& p : row) p = menu_prices[rng.Uniform(menu_prices.size())];
    }
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(ExtractMenu(Posted(spec), base, i),
                DirectPostedMenu(spec, base, i))
          << "trial " << trial << " bidder " << i;
    }
  }
}

TEST(ExtractMenuTest, UniformSinglePriceChargesPerItem) {
  const Instance base = GenPolar(2, 4, 8);
  SinglePriceSpec spec{{0, 1}, {Threshold{R(1, 2), true},
                                Threshold{R(1, 2), true}}};
  const Menu menu = ExtractMenu(
      [&](const Instance& inst) { return RunSinglePrice(spec, inst); }, base,
      0);
  EXPECT_EQ(menu.entries.size(), 16u);
  for (const auto& [bundle, price] : menu.entries) {
    EXPECT_EQ(price, R(std::popcount(bundle), 2));
  }
}

TEST(ExtractMenuTest, MirMenuByClarkePivots) {
  // Range: everything to bidder 0, the split {0} | {1,2}, everything to 1.
  const AllocationFamily range(
      3, 2, 1, {{0b111, 0}, {0b001, 0b110}, {0, 0b111}});
  const Instance base({Valuation::PolarAdditive(Flags(3, 0b001)),
                       Valuation::PolarAdditive(Flags(3, 0b110))});
  const Menu menu = ExtractMenu(
      [&](const Instance& inst) { return RunMir(range, inst); }, base, 0);
  // Bidder 1 values the three members 0, 2 and 2 + 1/27, so bidder 0 pays
  // 2 + 1/27 minus that. Taking everything at best ties the split (welfare
  // 3), which comes first in canonical order, so it never appears.
  const std::map<std::uint64_t, Money> expected = {{0b000, R(0)},
                                                   {0b001, R(1, 27)}};
  EXPECT_EQ(menu.entries, expected);
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    const Instance inst =
        base.WithValuation(0, Valuation::PolarAdditive(Flags(3, mask)));
    const Outcome out = NaiveMir(range, inst);
    EXPECT_EQ(menu.entries.at(out.allocation[0].ToMask()), out.payments[0]);
  }
}

TEST(ExtractMenuTest, NonTruthfulControlIsCaught) {
  const Instance base = GenPolar(2, 3, 1);
  EXPECT_THROW(ExtractMenu(testing::RunFirstPriceBundle, base, 0),
               TruthfulnessViolationError);
  EXPECT_THROW(ExtractMenu(testing::RunFirstPriceBundle, GenPolar(2, 13, 1), 0),
               ResourceError);
}

TEST(ExtractMenuTest, TruthfulPlayPicksAUtilityMaximizingEntry) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.Uniform(2));
    const int m = 2 + static_cast<int>(rng.Uniform(3));
    const Instance inst = GenPolar(n, m, 500 + trial);
    std::vector<MechanismRun> runs;
    SinglePriceSpec sp;
    sp.order = rng.Permutation(n);
    for (int i = 0; i < n; ++i) {
      sp.prices.push_back(Threshold{R(1, 1 + static_cast<int>(rng.Uniform(4))),
                                    rng.Uniform(2) == 0});
    }
    runs.push_back([sp](const Instance& x) { return RunSinglePrice(sp, x); });
    PostedPriceSpec pp;
    pp.order = rng.Permutation(n);
    pp.prices.assign(n, std::vector<Money>(m, R(1, 2)));
    runs.push_back(Posted(pp));
    std::vector<Allocation> members;
    for (const Allocation& a : EnumerateAllocations(m, n, true)) {
      if (rng.Uniform(4) == 0) members.push_back(a);
    }
    members.push_back(Allocation(n, 0));
    const AllocationFamily range(m, n, 1, members);
    runs.push_back([range](const Instance& x) { return RunMir(range, x); });

    for (const MechanismRun& run : runs) {
      const Outcome truthful = run(inst);
      for (int i = 0; i < n; ++i) {
        Menu menu;
        ASSERT_NO_THROW(menu = ExtractMenu(run, inst, i));
        const Valuation& v = inst.valuation(i);
        const std::uint64_t got = truthful.allocation[i].ToMask();
        ASSERT_TRUE(menu.entries.count(got));
        EXPECT_EQ(menu.entries.at(got), truthful.payments[i]);
        const Money mine = v.Value(truthful.allocation[i]) - truthful.payments[i];
        for (const auto& [bundle, price] : menu.entries) {
          EXPECT_LE(v.Value(ItemSet::FromMask(m, bundle)) - price, mine);
        }
        for (const StructuredSubmenu& sub : FindStructuredSubmenus(menu)) {
          EXPECT_TRUE(ValidateStructuredSubmenu(menu, sub));
        }
      }
    }
  }
}

TEST(SubmenuTest, EqualPerItemPricesBinByCardinality) {
  const Instance base = GenPolar(2, 4, 8);
  PostedPriceSpec spec{{0, 1}, std::vector<std::vector<Money>>(
                                   2, std::vector<Money>(4, R(1, 2)))};
  const Menu menu = ExtractMenu(Posted(spec), base, 0);
  const auto subs = FindStructuredSubmenus(menu);
  ASSERT_EQ(subs.size(), 4u);
  const std::vector<int> ks = {2, 1, 3, 4};
  for (std::size_t s = 0; s < subs.size(); ++s) {
    EXPECT_EQ(subs[s].k, ks[s]);
    EXPECT_EQ(subs[s].anchor, R(ks[s], 2));
    EXPECT_EQ(subs[s].members.size(), Binomial(4, ks[s]));
    EXPECT_TRUE(ValidateStructuredSubmenu(menu, subs[s]));
  }
}

TEST(SubmenuTest, EmptyMenuHasNoSubmenus) {
  Menu menu;
  menu.num_items = 3;
  EXPECT_TRUE(FindStructuredSubmenus(menu).empty());
}

TEST(SubmenuTest, CloseBundlesShareABin) {
  Menu menu;
  menu.num_items = 2;
  // 1/m^6 = 1/64 apart, inside one 1/32 window.
  menu.entries = {{0b01, R(1, 2)}, {0b10, R(1, 2) - R(1, 64)}};
  auto subs = FindStructuredSubmenus(menu);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(subs[0].members, (std::vector<std::uint64_t>{0b01, 0b10}));
  EXPECT_EQ(subs[0].anchor, R(1, 2));

  // A superset only 1/16 dearer breaks the 1/m^3 = 1/8 gap.
  menu.entries[0b11] = R(1, 2) + R(1, 16);
  subs = FindStructuredSubmenus(menu);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(subs[0].k, 2);
  EXPECT_EQ(subs[0].members, (std::vector<std::uint64_t>{0b11}));
}

TEST(SubmenuTest, ValidationRejectsBrokenSubmenus) {
  Menu menu;
  menu.num_items = 2;
  menu.entries = {{0b00, R(0)}, {0b01, R(1)}, {0b10, R(1)}, {0b11, R(3)}};
  const StructuredSubmenu good{1, R(1), {0b01, 0b10}};
  EXPECT_TRUE(ValidateStructuredSubmenu(menu, good));
  StructuredSubmenu bad = good;
  bad.k = 2;
  EXPECT_FALSE(ValidateStructuredSubmenu(menu, bad));
  bad = good;
  bad.anchor = R(1) + R(1, 64);  // off the 1/32 grid
  EXPECT_FALSE(ValidateStructuredSubmenu(menu, bad));
  bad = good;
  bad.anchor = R(33, 32);  // on the grid, window misses price 1
  EXPECT_FALSE(ValidateStructuredSubmenu(menu, bad));
  bad = good;
  bad.members = {0b01, 0b100};
  EXPECT_FALSE(ValidateStructuredSubmenu(menu, bad));
  menu.entries[0b11] = R(1) + R(1, 16);
  EXPECT_FALSE(ValidateStructuredSubmenu(menu, good));
}

TEST(PolarEventTest, EventOneMatchesExactBinomial) {
  const int n = 3;
  const int m = 12;
  const PolarEventStats s = PolarEventCheck(n, m, {}, 10000, 77);
  // D ~ Bin(m, 1 - (1 - 1/n)^n).
  const double q = 1 - std::pow(1 - 1.0 / n, n);
  const double threshold = (1 - 1.1 * std::pow(1 - 1.0 / n, n)) * m;
  EXPECT_NEAR(s.event1_threshold, threshold, 1e-12);
  double exact = 0;
  for (int d = 0; d <= m; ++d) {
    if (d >= threshold) {
      exact += Binomial(m, d) * std::pow(q, d) * std::pow(1 - q, m - d);
    }
  }
  EXPECT_NEAR(s.event1_frequency, exact, 0.02);
  EXPECT_NEAR(s.mean_d, m * q, 0.1);
  EXPECT_LE(s.max_d, m);
  EXPECT_EQ(s.event2_frequency, 1.0);
  EXPECT_EQ(s.event3_frequency, 1.0);
}

TEST(PolarEventTest, PostedMenuSizesAreExact) {
  PostedPriceSpec spec{{0, 1}, std::vector<std::vector<Money>>(
                                   2, std::vector<Money>(4, R(1, 2)))};
  const PolarEventStats s = PolarEventCheck(2, 4, {Posted(spec)}, 20, 3);
  // The first bidder sees every item, so its menu has all 2^4 bundles.
  EXPECT_EQ(s.max_menu_size, 16u);
  // e^(4/4) / 40 < 1 bundle allowed.
  EXPECT_EQ(s.event3_frequency, 0.0);
}

}  // namespace
}  // namespace mechlab
