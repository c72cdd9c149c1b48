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

// Runs every acceptance criterion and prints one PASS/FAIL line per
// criterion. Exit status is nonzero when any criterion fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mechlab/allocation_family.h"
#include "mechlab/errors.h"
#include "mechlab/instance.h"
#include "mechlab/learning.h"
#include "mechlab/mechanisms.h"
#include "mechlab/menus.h"
#include "mechlab/oracles.h"
#include "mechlab/random.h"
#include "mechlab/shattering.h"
#include "support/fixtures.h"
#include "support/naive.h"

namespace mechlab {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

Money R(std::int64_t n, std::int64_t d = 1) { return Money(n, d); }

Verdict BucketExact() {
  std::ostringstream s;
  const Instance small = GenBucket({2, 2, 2});
  const Money opt2 = OptWelfare(small);
  SearchOptions all_orders;  // full grid, both orders
  const SearchReport r2 = BestSinglePrice(small, all_orders);
  const Instance big = GenBucket({3, 3, 3});
  const Money opt3 = OptWelfare(big);
  const SearchReport r3 = BestSinglePrice(big, all_orders);
  s << "opt(2,2,2)=" << opt2 << " best=" << r2.best_welfare
    << " ratio=" << opt2 / r2.best_welfare << "; opt(3,3,3)=" << opt3
    << " best=" << r3.best_welfare;
  const bool ok = opt2 == R(16) && r2.best_welfare == R(14) &&
                  opt2 / r2.best_welfare == R(8, 7) && r2.exhaustive &&
                  opt3 == R(243) && r3.best_welfare <= R(189) && r3.exhaustive;
  return {ok, s.str()};
}

Verdict SpecialPairs() {
  const BucketParams p{3, 3, 3};
  const Instance inst = GenBucket(p);
  long specs = 0, violations = 0;
  ForEachSinglePriceSpec(inst, SearchOptions{}, [&](const SinglePriceSpec& sp) {
    ++specs;
    const Outcome out = RunSinglePrice(sp, inst);
    int sum = 0;
    for (int nj : PriceClassCounts(sp, p)) sum += nj;
    if (SpecialPairCount(out, p) > p.b + p.n || sum > p.n) ++violations;
  });
  std::ostringstream s;
  s << specs << " specs, " << violations << " violations";
  return {specs > 0 && violations == 0, s.str()};
}

Verdict PostedFormula() {
  Rng rng(DeriveSeed(2024, streams::kFixture, 3));
  int columns = 0, premise = 0, mismatches = 0, over_bound = 0;
  for (int n : {2, 3}) {
    for (int b : {1, 2}) {
      const int c = 2;
      for (int t = 0; t < 1000; ++t) {
        std::vector<Money> prices(n);
        const std::uint64_t top = 2 * (1ULL << (b + 1)) + 3;
        for (auto& x : prices) {
          x = R(static_cast<std::int64_t>(rng.Uniform(top)), 2);
        }
        ++columns;
        const Money exhaustive = testing::NaivePostedColumn(prices, b, c);
        const auto lib = PostedPriceExpectedWelfare(prices, b, c);
        if (lib.exhaustive != exhaustive) ++mismatches;
        if (lib.premise_holds) {
          ++premise;
          if (exhaustive != testing::NaivePostedFormula(prices, b, c)) {
            ++mismatches;
          }
        }
        if (exhaustive > PostedPriceWelfareBound(b, c, n)) ++over_bound;
      }
    }
  }
  std::ostringstream s;
  s << columns << " columns (" << premise << " with every i_k), "
    << mismatches << " mismatches, " << over_bound << " above cb/n+c+b";
  return {premise > 0 && mismatches == 0 && over_bound == 0, s.str()};
}

Verdict CompetitorMax() {
  Rng rng(DeriveSeed(2024, streams::kFixture, 4));
  int failures = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng.Uniform(4));
    const int m = 1 + static_cast<int>(rng.Uniform(8));
    const Instance inst = GenRandomAdditive(n, m, 6, rng.NextU64());
    PostedPriceSpec spec;
    spec.order = rng.Permutation(n);
    spec.prices.assign(n, std::vector<Money>(m));
    Money opt;
    for (int j = 0; j < m; ++j) {
      Money best;
      for (int i = 0; i < n; ++i) {
        Money other;
        for (int k = 0; k < n; ++k) {
          if (k != i) other = std::max(other, inst.valuation(k).ItemValue(j));
        }
        spec.prices[i][j] = other;
        best = std::max(best, inst.valuation(i).ItemValue(j));
      }
      opt += best;
    }
    const Outcome out = RunPostedPrice(spec, inst);
    if (out.welfare != opt || OptWelfare(inst) != opt) ++failures;
  }
  return {failures == 0, "100 instances, " + std::to_string(failures) +
                             " below optimum"};
}

Verdict Interest01() {
  const int m = 256;
  const int n = Interest01BidderCount(m, 0.25);
  Rng rng(DeriveSeed(2024, streams::kFixture, 5));
  std::vector<std::vector<int>> allocations(50, std::vector<int>(m));
  for (auto& a : allocations) {
    for (int& x : a) x = static_cast<int>(rng.Uniform(n));
  }
  const auto stats = AllocationSetWelfareBound(m, n, allocations, 10000, 5, 4);
  const double target = static_cast<double>(m) / n;
  double worst = 0;
  for (const auto& s : stats) {
    worst = std::max(worst, std::abs(s.mean_welfare - target) / target);
  }
  std::ostringstream s;
  s << "n=" << n << ", worst relative deviation from " << target << ": "
    << worst;
  return {n == 8 && worst <= 0.05, s.str()};
}

Verdict Regret() {
  const int k = 4;
  const double range = 3.0;
  const int rounds = 10000;
  int external_over = 0, swap_not_shrinking = 0;
  double swap_full = 0, swap_half = 0;
  for (const auto& f : testing::AdversarialFixtures(20, k, range, 6)) {
    const PlayHistory h = RunOnlineSequence(k, f.rewards, 0.0, range,
                                            Algorithm::kHedge, rounds, 1);
    if (ExternalRegret(h, 0) > HedgeRegretBound(h, 0)) ++external_over;
    const PlayHistory full = RunOnlineSequence(k, f.rewards, 0.0, range,
                                               Algorithm::kSwap, rounds, 2);
    const PlayHistory half = RunOnlineSequence(k, f.rewards, 0.0, range,
                                               Algorithm::kSwap, rounds / 2, 2);
    swap_full += SwapRegret(full, 0);
    swap_half += SwapRegret(half, 0);
    if (SwapRegret(full, 0) > k * HedgeRegretBound(full, 0)) {
      ++swap_not_shrinking;
    }
  }
  std::ostringstream s;
  s << "hedge over bound: " << external_over << "/20; mean swap regret "
    << swap_half / 20 << " at T/2 -> " << swap_full / 20 << " at T";
  return {external_over == 0 && swap_not_shrinking == 0 &&
              swap_full < swap_half,
          s.str()};
}

Verdict SingleBidPoa() {
  const Instance inst = GenBucket({3, 3, 3});
  const auto grid = SingleBidGrid(inst, 3);
  const TabularGame game = MechanismGame(
      inst, UniformStrategySpace(inst, grid),
      [](std::span<const Money> bids, const Instance& i) {
        return RunSingleBid(bids, i);
      });
  const PlayHistory h = RunSwapRegret(game, 100000, 7);
  const double poa = EmpiricalPoa(h, OptWelfare(inst));
  const double limit = 12 * std::log(static_cast<double>(inst.num_items()));
  SearchOptions options;
  options.bidders_symmetric = true;
  const Money best = BestSinglePrice(inst, options).best_welfare;
  std::ostringstream s;
  s << "grid size " << grid.size() << ", empirical ratio " << poa
    << " (limit " << limit << "; best single price ratio "
    << (OptWelfare(inst) / best).ToDouble() << ", reported only)";
  return {poa <= limit, s.str()};
}

Verdict SauerShelah() {
  int checked = 0, failed = 0;
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    ++checked;
    if (!SauerShelahCheck(FamilyFromMask(3, 2, mask), 2)) ++failed;
  }
  for (std::uint64_t t = 0; t < 10000; ++t) {
    const FunctionFamily h =
        RandomFunctionFamily(4, 3, DeriveSeed(2024, streams::kFixture, t));
    for (int k : {2, 3}) {
      ++checked;
      if (!SauerShelahCheck(h, k)) ++failed;
    }
  }
  std::ostringstream s;
  s << checked << " (family, k) pairs, " << failed << " violations";
  return {failed == 0, s.str()};
}

Verdict Equivalences() {
  int families = 0, failed = 0;
  auto check = [&](const AllocationFamily& h) {
    if (h.empty()) return;
    ++families;
    const std::vector<Money> grid = {R(1), R(2)};
    if (MirRatio(h, MirValuationClass::kSingleMinded, grid) !=
            MinimalAlpha(h, Property::kContainment) ||
        MirRatio(h, MirValuationClass::kZeroOneAdditive) !=
            MinimalAlpha(h, Property::kIntersection)) {
      ++failed;
    }
  };
  auto subfamilies = [&](const std::vector<Allocation>& pool, int x) {
    for (std::uint64_t mask = 1; mask < (1ULL << pool.size()); ++mask) {
      std::vector<Allocation> members;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (mask >> i & 1) members.push_back(pool[i]);
      }
      check(AllocationFamily(x, 2, 1, members));
    }
  };
  // Every family of allocations for |X| <= 2, every family of total
  // allocations for |X| = 3, and a seeded sample of partial ones.
  for (int x = 1; x <= 2; ++x) subfamilies(EnumerateAllocations(x, 2, true), x);
  for (int x = 1; x <= 3; ++x) {
    subfamilies(EnumerateAllocations(x, 2, false), x);
  }
  const auto pool = EnumerateAllocations(3, 2, true);
  Rng rng(DeriveSeed(2024, streams::kFixture, 9));
  for (int t = 0; t < 3000; ++t) {
    std::vector<Allocation> members;
    const std::uint64_t keep = 1 + rng.Uniform(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (rng.Uniform(pool.size()) < keep) members.push_back(pool[i]);
    }
    check(AllocationFamily(3, 2, 1, members));
  }
  std::ostringstream s;
  s << families << " families, " << failed << " mismatches";
  return {failed == 0, s.str()};
}

// The four submenu conditions, checked without the library's validator.
bool SubmenuHolds(const Menu& menu, const StructuredSubmenu& sub) {
  const std::int64_t m = menu.num_items;
  const Money unit(1, m * m * m * m * m);
  const Money gap(1, m * m * m);
  const Money scaled = sub.anchor / unit;
  if (scaled.den() != 1) return false;
  for (std::uint64_t s : sub.members) {
    const auto it = menu.entries.find(s);
    if (it == menu.entries.end() || std::popcount(s) != sub.k) return false;
    if (!(sub.anchor - unit < it->second && it->second <= sub.anchor)) {
      return false;
    }
    for (const auto& [t, price] : menu.entries) {
      if (t != s && (t & s) == s && price < it->second + gap) return false;
    }
  }
  return !sub.members.empty();
}

Verdict Menus() {
  Rng rng(DeriveSeed(2024, streams::kFixture, 10));
  int menus = 0, violations = 0, submenus = 0, invalid = 0;
  for (int n = 2; n <= 3; ++n) {
    for (int m = 1; m <= 6; ++m) {
      for (int t = 0; t < 4; ++t) {
        const Instance inst = GenPolar(n, m, rng.NextU64());
        std::vector<MechanismRun> runs;
        SinglePriceSpec sp;
        sp.order = rng.Permutation(n);
        for (int i = 0; i < n; ++i) {
          sp.prices.push_back(
              Threshold{R(1 + static_cast<std::int64_t>(rng.Uniform(3)),
                          1 + static_cast<std::int64_t>(rng.Uniform(4))),
                        rng.Uniform(2) == 0});
        }
        runs.push_back(
            [sp](const Instance& x) { return RunSinglePrice(sp, x); });
        PostedPriceSpec pp;
        pp.order = rng.Permutation(n);
        pp.prices.assign(n, std::vector<Money>(m));
        for (auto& row : pp.prices) {
          for (auto& p : row) {
            p = R(static_cast<std::int64_t>(rng.Uniform(5)), 4);
          }
        }
        runs.push_back(
            [pp](const Instance& x) { return RunPostedPrice(pp, x); });
        const auto pool = EnumerateAllocations(m, n, true);
        std::vector<Allocation> members = {Allocation(n, 0)};
        for (int k = 0; k < 40; ++k) {
          members.push_back(pool[rng.Uniform(pool.size())]);
        }
        const AllocationFamily range(m, n, 1, members);
        runs.push_back([range](const Instance& x) { return RunMir(range, x); });
        for (const MechanismRun& run : runs) {
          for (int i = 0; i < n; ++i) {
            ++menus;
            try {
              const Menu menu = ExtractMenu(run, inst, i);
              for (const auto& sub : FindStructuredSubmenus(menu)) {
                ++submenus;
                if (!SubmenuHolds(menu, sub) ||
                    !ValidateStructuredSubmenu(menu, sub)) {
                  ++invalid;
                }
              }
            } catch (const TruthfulnessViolationError&) {
              ++violations;
            }
          }
        }
      }
    }
  }
  std::ostringstream s;
  s << menus << " menus, " << violations << " taxation violations, "
    << submenus << " submenus, " << invalid << " invalid";
  return {violations == 0 && invalid == 0 && submenus > 0, s.str()};
}

Verdict Secretary() {
  int failed = 0;
  std::ostringstream s;
  for (int n = 1; n <= 8; ++n) {
    const int r = SecretaryCutoff(n);
    Rational formula = r == 0 ? Rational(1, n) : Rational(0);
    for (int j = r + 1; j <= n && r > 0; ++j) {
      formula += Rational(r, n) * Rational(1, j - 1);
    }
    const Rational exact = testing::NaiveSecretaryWin(n, r);
    if (exact != formula || SecretaryWinProbability(n, r) != formula ||
        SecretaryFormula(n, r) != formula) {
      ++failed;
    }
    s << (n > 1 ? " " : "") << "n=" << n << ":" << exact;
  }
  return {failed == 0, s.str()};
}

}  // namespace
}  // namespace mechlab

int main() {
  using mechlab::Verdict;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria =
      {
          {"bucket construction exact", mechlab::BucketExact},
          {"special-pair counting bound", mechlab::SpecialPairs},
          {"posted-price column formula", mechlab::PostedFormula},
          {"competitor-max prices optimal", mechlab::CompetitorMax},
          {"0/1 interest allocation means", mechlab::Interest01},
          {"regret bounds", mechlab::Regret},
          {"single-bid empirical ratio", mechlab::SingleBidPoa},
          {"generalized Sauer-Shelah", mechlab::SauerShelah},
          {"MIR ratio equivalences", mechlab::Equivalences},
          {"menus and structured submenus", mechlab::Menus},
          {"secretary win probability", mechlab::Secretary},
      };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (!v.pass) ++failures;
    std::printf("%s %2zu %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
