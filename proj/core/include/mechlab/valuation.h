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

#ifndef MECHLAB_VALUATION_H_
#define MECHLAB_VALUATION_H_

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "mechlab/item_set.h"
#include "mechlab/rational.h"

namespace mechlab {

struct AdditiveValuation {
  std::vector<Money> values;
};

// Value `value` for every bundle containing `interest`, 0 otherwise.
struct SingleMindedValuation {
  int num_items = 0;
  ItemSet interest;
  Money value;
};

// min(budget, sum of per-item values).
struct CappedAdditiveValuation {
  std::vector<Money> values;
  Money budget;
};

// Value table indexed by the bundle's bitmask.
struct ExplicitValuation {
  int num_items = 0;
  std::vector<Money> table;
};

// Additive with per-item value 1 (flag set) or 1/m^3.
struct PolarAdditiveValuation {
  std::vector<bool> flags;
};

enum class ValuationKind {
  kAdditive,
  kSingleMinded,
  kCappedAdditive,
  kExplicit,
  kPolarAdditive
};

std::string_view ValuationKindName(ValuationKind kind);

inline constexpr int kMaxExplicitItems = 16;

// An immutable valuation over items [0, num_items()). Construct through the
// factories, which validate the variant's invariants (non-negative values,
// value(empty) = 0, monotone tables).
class Valuation {
 public:
  using Variant =
      std::variant<AdditiveValuation, SingleMindedValuation,
                   CappedAdditiveValuation, ExplicitValuation,
                   PolarAdditiveValuation>;

  static Valuation Additive(std::vector<Money> values);
  static Valuation SingleMinded(ItemSet interest, Money value);
  static Valuation CappedAdditive(std::vector<Money> values, Money budget);
  static Valuation Explicit(int num_items, std::vector<Money> table);
  static Valuation PolarAdditive(std::vector<bool> flags);

  ValuationKind kind() const;
  int num_items() const;
  const Variant& variant() const { return variant_; }

  // True for the variants whose value is the sum of item values.
  bool IsAdditive() const;

  Money Value(const ItemSet& bundle) const;
  Money ItemValue(int item) const;
  Money GrandBundleValue() const;

  friend bool operator==(const Valuation& a, const Valuation& b);

 private:
  explicit Valuation(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

// The low per-item value of a polar additive valuation on m items.
Money PolarLowValue(int num_items);

// A per-item price. `above` marks a price an infinitesimal above `amount`:
// the bidder pays `amount` but strictly prefers not to buy at equality.
struct Price {
  Money amount;
  bool above = false;

  Price() = default;
  Price(Money a, bool above_flag = false)  // NOLINT
      : amount(std::move(a)), above(above_flag) {}
};

// Utility in the ordered field of reals extended by one positive
// infinitesimal: real - above_count * epsilon.
struct DemandUtility {
  Money real;
  int above_count = 0;

  friend bool operator==(const DemandUtility&, const DemandUtility&) = default;
  friend std::strong_ordering operator<=>(const DemandUtility& a,
                                          const DemandUtility& b);
};

DemandUtility BundleUtility(const Valuation& v, std::span<const Price> prices,
                            const ItemSet& bundle);

// Utility-maximizing bundle within `available`. Among maximizers the larger
// bundle wins, then the lexicographically smallest sorted item list.
// `prices` must have one entry per item.
ItemSet Demand(const Valuation& v, std::span<const Price> prices,
               const ItemSet& available);

// Subsets of `available` are enumerated for non-closed-form variants; this
// caps the number of candidate items.
inline constexpr int kMaxDemandEnumerationItems = 24;

enum class ValuationClass { kSubmodular, kSubadditive, kAdditive, kMonotone };

std::string_view ValuationClassName(ValuationClass c);

// Decides class membership. Exhaustive for num_items <= 16; closed form for
// larger non-explicit valuations.
bool ValidateClass(const Valuation& v, ValuationClass c);

}  // namespace mechlab

#endif  // MECHLAB_VALUATION_H_
