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

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <utility>

#include "mechlab/errors.h"
#include "mechlab/random.h"

namespace mechlab {
namespace {

Valuation PolarReport(int m, std::uint64_t mask) {
  std::vector<bool> flags(m);
  for (int j = 0; j < m; ++j) flags[j] = (mask >> j) & 1ULL;
  return Valuation::PolarAdditive(std::move(flags));
}

void AddEntry(std::map<std::uint64_t, Money>& entries, std::uint64_t bundle,
              const Money& price) {
  auto [it, inserted] = entries.emplace(bundle, price);
  if (!inserted && it->second != price) {
    throw TruthfulnessViolationError(
        "bundle mask " + std::to_string(bundle) + " offered at " +
        it->second.ToString() + " and " + price.ToString());
  }
}

}  // namespace

Menu ExtractMenu(const MechanismRun& mechanism, const Instance& base,
                 int bidder, const MenuOptions& options) {
  const int m = base.num_items();
  if (m > kMaxMenuItems) {
    throw ResourceError("menu extraction enumerates 2^m reports; m <= 12");
  }
  if (bidder < 0 || bidder >= base.num_bidders()) {
    throw DomainError("bidder out of range");
  }
  const std::size_t polar = std::size_t{1} << m;
  const std::size_t total = polar + options.extra_reports.size();
  auto report = [&](std::size_t r) {
    return r < polar ? PolarReport(m, r) : options.extra_reports[r - polar];
  };
  const int workers = static_cast<int>(
      std::clamp<std::size_t>(options.threads < 1 ? 1 : options.threads, 1,
                              total));
  std::vector<std::map<std::uint64_t, Money>> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      for (std::size_t r = total * w / workers; r < total * (w + 1) / workers;
           ++r) {
        const Outcome out = mechanism(base.WithValuation(bidder, report(r)));
        ValidateOutcome(out, base.WithValuation(bidder, report(r)));
        AddEntry(partial[w], out.allocation[bidder].ToMask(),
                 out.payments[bidder]);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Menu menu;
  menu.bidder = bidder;
  menu.num_items = m;
  for (const auto& block : partial) {
    for (const auto& [bundle, price] : block) {
      AddEntry(menu.entries, bundle, price);
    }
  }
  return menu;
}

namespace {

Money WindowWidth(int m) { return Money(1) / Pow(Money(m), 5); }
Money GapWidth(int m) { return Money(1) / Pow(Money(m), 3); }

bool PassesSupersetGap(const Menu& menu, std::uint64_t s, const Money& price) {
  const Money needed = price + GapWidth(menu.num_items);
  for (const auto& [t, t_price] : menu.entries) {
    if (t != s && (s & ~t) == 0 && t_price < needed) return false;
  }
  return true;
}

}  // namespace

std::vector<StructuredSubmenu> FindStructuredSubmenus(const Menu& menu) {
  const int m = menu.num_items;
  if (menu.entries.empty()) return {};
  const std::int64_t scale = Pow(Money(m), 5).num();
  std::map<std::pair<int, Money>, std::vector<std::uint64_t>> bins;
  for (const auto& [bundle, price] : menu.entries) {
    const int k = std::popcount(bundle);
    if (k == 0) continue;
    const Money anchor(Money(price * Money(scale)).Ceil(), scale);
    bins[{k, anchor}].push_back(bundle);
  }
  std::vector<StructuredSubmenu> out;
  for (auto& [key, members] : bins) {
    const bool valid =
        std::all_of(members.begin(), members.end(), [&](std::uint64_t s) {
          return PassesSupersetGap(menu, s, menu.entries.at(s));
        });
    if (valid) out.push_back(StructuredSubmenu{key.first, key.second, members});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const StructuredSubmenu& a, const StructuredSubmenu& b) {
                     return a.members.size() > b.members.size();
                   });
  return out;
}

bool ValidateStructuredSubmenu(const Menu& menu,
                               const StructuredSubmenu& sub) {
  const int m = menu.num_items;
  if (sub.members.empty() || sub.k < 1) return false;
  // Anchor on the 1/m^5 grid.
  if (!(sub.anchor * Pow(Money(m), 5)).is_integer()) return false;
  const Money lo = sub.anchor - WindowWidth(m);
  for (std::uint64_t s : sub.members) {
    const auto it = menu.entries.find(s);
    if (it == menu.entries.end()) return false;
    if (std::popcount(s) != sub.k) return false;
    const Money& price = it->second;
    if (!(lo < price && price <= sub.anchor)) return false;
    // Superset gap, checked by growing s one missing item set at a time.
    const std::uint64_t universe = m == 64 ? ~0ULL : (1ULL << m) - 1;
    const std::uint64_t missing = universe & ~s;
    for (std::uint64_t extra = missing; extra != 0;
         extra = (extra - 1) & missing) {
      const auto t = menu.entries.find(s | extra);
      if (t != menu.entries.end() && t->second - price < GapWidth(m)) {
        return false;
      }
    }
  }
  return true;
}

PolarEventStats PolarEventCheck(int n, int m,
                                const std::vector<MechanismRun>& mechanisms,
                                int trials, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ParameterError("polar events need n, m >= 1");
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (!mechanisms.empty() && m > kMaxMenuItems) {
    throw ResourceError("menu events need m <= 12");
  }
  PolarEventStats stats;
  stats.trials = trials;
  stats.event1_threshold =
      (1.0 - 1.1 * std::pow(1.0 - 1.0 / n, n)) * static_cast<double>(m);
  stats.menu_threshold =
      std::exp(static_cast<double>(m) / (static_cast<double>(n) * n)) /
      (10.0 * n * n);
  const auto prefix = static_cast<std::size_t>(std::floor(stats.menu_threshold));
  const double bound_small = 4.0 * m / (static_cast<double>(n) * n);
  const double slack = 1.0 / (static_cast<double>(m) * m);
  int e1 = 0, e2 = 0, e3 = 0, all = 0;
  double sum_d = 0;
  for (int t = 0; t < trials; ++t) {
    const Instance inst = GenPolar(n, m, DeriveSeed(seed, streams::kTrial, t));
    int d = 0;
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) {
        if (inst.valuation(i).ItemValue(j) == Money(1)) {
          ++d;
          break;
        }
      }
    }
    sum_d += d;
    stats.max_d = std::max(stats.max_d, d);
    const bool event1 = d >= stats.event1_threshold;
    bool event2 = true, event3 = true;
    for (const MechanismRun& mech : mechanisms) {
      for (int i = 0; i < n; ++i) {
        const Menu menu = ExtractMenu(mech, inst, i);
        stats.max_menu_size = std::max(stats.max_menu_size,
                                       menu.entries.size());
        if (static_cast<double>(menu.entries.size()) > stats.menu_threshold) {
          event3 = false;
        }
        std::vector<ItemSet> bundles;
        for (const auto& entry : menu.entries) {
          bundles.push_back(ItemSet::FromMask(m, entry.first));
        }
        std::sort(bundles.begin(), bundles.end(), ItemSet::LexLess);
        for (std::size_t b = 0; b < std::min(prefix, bundles.size()); ++b) {
          const double value = inst.valuation(i).Value(bundles[b]).ToDouble();
          const double cap =
              std::max(4.0 * bundles[b].Size() / n, bound_small) + slack;
          if (value > cap) event2 = false;
        }
      }
    }
    e1 += event1;
    e2 += event2;
    e3 += event3;
    all += event1 && event2 && event3;
  }
  stats.event1_frequency = static_cast<double>(e1) / trials;
  stats.event2_frequency = static_cast<double>(e2) / trials;
  stats.event3_frequency = static_cast<double>(e3) / trials;
  stats.all_frequency = static_cast<double>(all) / trials;
  stats.mean_d = sum_d / trials;
  return stats;
}

}  // namespace mechlab
