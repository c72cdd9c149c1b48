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

#ifndef MECHLAB_MENUS_H_
#define MECHLAB_MENUS_H_

#include <cstdint>
#include <map>
#include <vector>

#include "mechlab/instance.h"
#include "mechlab/mechanisms.h"
#include "mechlab/rational.h"

namespace mechlab {

// The bundles a bidder can obtain with the others' reports fixed, each with
// the single price the mechanism charges for it.
struct Menu {
  int bidder = 0;
  int num_items = 0;
  std::map<std::uint64_t, Money> entries;  // bundle bitmask -> price

  friend bool operator==(const Menu&, const Menu&) = default;
};

inline constexpr int kMaxMenuItems = 12;

struct MenuOptions {
  // Reports tried in addition to the 2^m polar additive ones. Empty by
  // default, so menus cover the polar additive domain only.
  std::vector<Valuation> extra_reports;
  int threads = 1;
};

// Runs `mechanism` on `base` with bidder i's report replaced by each polar
// additive valuation (and any extra reports). Throws
// TruthfulnessViolationError when one bundle is sold at two prices.
Menu ExtractMenu(const MechanismRun& mechanism, const Instance& base,
                 int bidder, const MenuOptions& options = {});

// Equal-cardinality menu bundles whose prices fall in the window
// (anchor - 1/m^5, anchor], anchor a multiple of 1/m^5, such that every strict
// superset T in the menu costs at least price(S) + 1/m^3.
struct StructuredSubmenu {
  int k = 0;
  Money anchor;
  std::vector<std::uint64_t> members;  // ascending bitmasks

  friend bool operator==(const StructuredSubmenu&,
                         const StructuredSubmenu&) = default;
};

// Bins entries with |S| >= 1 by (|S|, ceil(price * m^5) / m^5) and keeps the
// bins whose members all pass the superset gap against the whole menu.
// Sorted by member count descending, then by (k, anchor).
std::vector<StructuredSubmenu> FindStructuredSubmenus(const Menu& menu);

// Re-checks the four conditions of a structured submenu: members are menu
// bundles of size k, the anchor lies on the 1/m^5 grid, prices lie in the
// window, and the superset gap holds.
bool ValidateStructuredSubmenu(const Menu& menu, const StructuredSubmenu& sub);

struct PolarEventStats {
  int trials = 0;
  double event1_threshold = 0;  // (1 - 1.1 (1 - 1/n)^n) m
  double menu_threshold = 0;    // e^(m/n^2) / (10 n^2)
  double event1_frequency = 0;  // D >= event1_threshold
  double event2_frequency = 0;
  double event3_frequency = 0;
  double all_frequency = 0;
  double mean_d = 0;            // D = number of items someone values at 1
  int max_d = 0;
  std::size_t max_menu_size = 0;
};

// Monte Carlo over GenPolar(n, m, DeriveSeed(seed, streams::kTrial, t)).
// Event 1: D >= (1 - 1.1 (1 - 1/n)^n) m. Event 2: for every bidder i and
// mechanism, the lexicographically first floor(menu_threshold) menu bundles S
// satisfy v_i(S) <= max(4|S|/n, 4m/n^2) + 1/m^2. Event 3: every menu has at
// most menu_threshold bundles. Events 2 and 3 hold vacuously without
// mechanisms.
PolarEventStats PolarEventCheck(int n, int m,
                                const std::vector<MechanismRun>& mechanisms,
                                int trials, std::uint64_t seed);

}  // namespace mechlab

#endif  // MECHLAB_MENUS_H_
