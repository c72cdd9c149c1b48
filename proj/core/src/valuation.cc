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

#include "mechlab/valuation.h"

#include <bit>
#include <cstdint>
#include <string>
#include <utility>

#include "mechlab/errors.h"

namespace mechlab {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckNonNegative(const Money& x, const char* what) {
  if (x.sign() < 0) {
    throw ParameterError(std::string(what) + " must be non-negative, got " +
                         x.ToString());
  }
}

void CheckBundle(const ItemSet& bundle, int num_items) {
  if (bundle.universe_size() != num_items) {
    throw DomainError("bundle over " + std::to_string(bundle.universe_size()) +
                      " items queried on a valuation over " +
                      std::to_string(num_items));
  }
}

Money SumOver(const std::vector<Money>& values, const ItemSet& bundle) {
  Money total;
  for (int j : bundle.Items()) total += values[j];
  return total;
}

// Per-item additive demand: buy iff the item's value is at least its price
// in the extended order.
bool BuysItem(const Money& value, const Price& price) {
  auto cmp = value <=> price.amount;
  return cmp > 0 || (cmp == 0 && !price.above);
}

bool IsFree(const Price& price) {
  return price.amount.is_zero() && !price.above;
}

// Exhaustive demand over subsets of `candidates`. `value_of` maps a mask over
// the candidate list to the bundle value.
template <class ValueOf>
ItemSet EnumerateDemand(const std::vector<int>& candidates,
                        std::span<const Price> prices, int num_items,
                        ValueOf value_of) {
  const int r = static_cast<int>(candidates.size());
  if (r > kMaxDemandEnumerationItems) {
    throw ResourceError("demand enumeration over " + std::to_string(r) +
                        " candidate items exceeds the limit of " +
                        std::to_string(kMaxDemandEnumerationItems));
  }
  std::uint64_t best_mask = 0;
  DemandUtility best{value_of(0), 0};
  int best_size = 0;
  for (std::uint64_t mask = 1; mask < (1ULL << r); ++mask) {
    DemandUtility u{value_of(mask), 0};
    for (int t = 0; t < r; ++t) {
      if ((mask >> t) & 1ULL) {
        const Price& p = prices[candidates[t]];
        u.real -= p.amount;
        u.above_count += p.above ? 1 : 0;
      }
    }
    const int size = std::popcount(mask);
    auto cmp = u <=> best;
    bool better = cmp > 0;
    if (cmp == 0) {
      if (size != best_size) {
        better = size > best_size;
      } else {
        // Same size: the lowest differing candidate decides lex order.
        const std::uint64_t diff = mask ^ best_mask;
        better = (mask & (diff & (~diff + 1))) != 0;
      }
    }
    if (better) {
      best = u;
      best_mask = mask;
      best_size = size;
    }
  }
  ItemSet out(num_items);
  for (int t = 0; t < r; ++t) {
    if ((best_mask >> t) & 1ULL) out.Insert(candidates[t]);
  }
  return out;
}

}  // namespace

std::string_view ValuationKindName(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kAdditive:
      return "additive";
    case ValuationKind::kSingleMinded:
      return "single_minded";
    case ValuationKind::kCappedAdditive:
      return "capped_additive";
    case ValuationKind::kExplicit:
      return "explicit";
    case ValuationKind::kPolarAdditive:
      return "polar";
  }
  return "unknown";
}

std::string_view ValuationClassName(ValuationClass c) {
  switch (c) {
    case ValuationClass::kSubmodular:
      return "submodular";
    case ValuationClass::kSubadditive:
      return "subadditive";
    case ValuationClass::kAdditive:
      return "additive";
    case ValuationClass::kMonotone:
      return "monotone";
  }
  return "unknown";
}

Money PolarLowValue(int num_items) {
  const std::int64_t m = num_items;
  return Money(1, m * m * m);
}

Valuation Valuation::Additive(std::vector<Money> values) {
  if (values.empty()) throw ParameterError("valuation needs at least one item");
  for (const Money& v : values) CheckNonNegative(v, "item value");
  return Valuation(AdditiveValuation{std::move(values)});
}

Valuation Valuation::SingleMinded(ItemSet interest, Money value) {
  if (interest.universe_size() < 1) {
    throw ParameterError("valuation needs at least one item");
  }
  if (interest.Empty()) {
    throw ParameterError("single-minded interest set must be nonempty");
  }
  CheckNonNegative(value, "single-minded value");
  const int m = interest.universe_size();
  return Valuation(SingleMindedValuation{m, std::move(interest), value});
}

Valuation Valuation::CappedAdditive(std::vector<Money> values, Money budget) {
  if (values.empty()) throw ParameterError("valuation needs at least one item");
  for (const Money& v : values) CheckNonNegative(v, "item value");
  CheckNonNegative(budget, "budget");
  return Valuation(CappedAdditiveValuation{std::move(values), budget});
}

Valuation Valuation::Explicit(int num_items, std::vector<Money> table) {
  if (num_items < 1 || num_items > kMaxExplicitItems) {
    throw ParameterError("explicit valuations support 1.." +
                         std::to_string(kMaxExplicitItems) + " items");
  }
  if (table.size() != (std::size_t{1} << num_items)) {
    throw ParameterError("explicit table must have 2^m entries");
  }
  if (!table[0].is_zero()) {
    throw ParameterError("explicit table must value the empty bundle at 0");
  }
  for (const Money& v : table) CheckNonNegative(v, "table value");
  for (std::uint32_t s = 0; s < table.size(); ++s) {
    for (int j = 0; j < num_items; ++j) {
      if (!((s >> j) & 1U) && table[s | (1U << j)] < table[s]) {
        throw ParameterError("explicit table is not monotone at bundle " +
                             std::to_string(s) + " + item " +
                             std::to_string(j));
      }
    }
  }
  return Valuation(ExplicitValuation{num_items, std::move(table)});
}

Valuation Valuation::PolarAdditive(std::vector<bool> flags) {
  if (flags.empty()) throw ParameterError("valuation needs at least one item");
  return Valuation(PolarAdditiveValuation{std::move(flags)});
}

ValuationKind Valuation::kind() const {
  return static_cast<ValuationKind>(variant_.index());
}

int Valuation::num_items() const {
  return std::visit(
      Overloaded{
          [](const AdditiveValuation& v) {
            return static_cast<int>(v.values.size());
          },
          [](const SingleMindedValuation& v) { return v.num_items; },
          [](const CappedAdditiveValuation& v) {
            return static_cast<int>(v.values.size());
          },
          [](const ExplicitValuation& v) { return v.num_items; },
          [](const PolarAdditiveValuation& v) {
            return static_cast<int>(v.flags.size());
          },
      },
      variant_);
}

bool Valuation::IsAdditive() const {
  return kind() == ValuationKind::kAdditive ||
         kind() == ValuationKind::kPolarAdditive;
}

Money Valuation::Value(const ItemSet& bundle) const {
  CheckBundle(bundle, num_items());
  return std::visit(
      Overloaded{
          [&](const AdditiveValuation& v) { return SumOver(v.values, bundle); },
          [&](const SingleMindedValuation& v) {
            return v.interest.IsSubsetOf(bundle) ? v.value : Money(0);
          },
          [&](const CappedAdditiveValuation& v) {
            return Min(v.budget, SumOver(v.values, bundle));
          },
          [&](const ExplicitValuation& v) {
            return v.table[bundle.ToMask()];
          },
          [&](const PolarAdditiveValuation& v) {
            const Money low = PolarLowValue(static_cast<int>(v.flags.size()));
            std::int64_t high_count = 0;
            std::int64_t low_count = 0;
            for (int j : bundle.Items()) {
              if (v.flags[j]) {
                ++high_count;
              } else {
                ++low_count;
              }
            }
            return Money(high_count) + low * Money(low_count);
          },
      },
      variant_);
}

Money Valuation::ItemValue(int item) const {
  ItemSet single(num_items());
  single.Insert(item);
  return Value(single);
}

Money Valuation::GrandBundleValue() const {
  return Value(ItemSet::Full(num_items()));
}

bool operator==(const Valuation& a, const Valuation& b) {
  if (a.kind() != b.kind()) return false;
  return std::visit(
      Overloaded{
          [&](const AdditiveValuation& x) {
            return x.values == std::get<AdditiveValuation>(b.variant_).values;
          },
          [&](const SingleMindedValuation& x) {
            const auto& y = std::get<SingleMindedValuation>(b.variant_);
            return x.interest == y.interest && x.value == y.value;
          },
          [&](const CappedAdditiveValuation& x) {
            const auto& y = std::get<CappedAdditiveValuation>(b.variant_);
            return x.values == y.values && x.budget == y.budget;
          },
          [&](const ExplicitValuation& x) {
            const auto& y = std::get<ExplicitValuation>(b.variant_);
            return x.num_items == y.num_items && x.table == y.table;
          },
          [&](const PolarAdditiveValuation& x) {
            return x.flags ==
                   std::get<PolarAdditiveValuation>(b.variant_).flags;
          },
      },
      a.variant_);
}

std::strong_ordering operator<=>(const DemandUtility& a,
                                 const DemandUtility& b) {
  if (auto cmp = a.real <=> b.real; cmp != 0) return cmp;
  // More infinitesimal charges means lower utility.
  return b.above_count <=> a.above_count;
}

DemandUtility BundleUtility(const Valuation& v, std::span<const Price> prices,
                            const ItemSet& bundle) {
  DemandUtility u{v.Value(bundle), 0};
  for (int j : bundle.Items()) {
    u.real -= prices[j].amount;
    u.above_count += prices[j].above ? 1 : 0;
  }
  return u;
}

ItemSet Demand(const Valuation& v, std::span<const Price> prices,
               const ItemSet& available) {
  const int m = v.num_items();
  CheckBundle(available, m);
  if (static_cast<int>(prices.size()) != m) {
    throw DomainError("demand needs one price per item");
  }
  const std::vector<int> avail = available.Items();
  return std::visit(
      Overloaded{
          [&](const AdditiveValuation& a) {
            ItemSet out(m);
            for (int j : avail) {
              if (BuysItem(a.values[j], prices[j])) out.Insert(j);
            }
            return out;
          },
          [&](const PolarAdditiveValuation& p) {
            const Money low = PolarLowValue(m);
            ItemSet out(m);
            for (int j : avail) {
              if (BuysItem(p.flags[j] ? Money(1) : low, prices[j])) {
                out.Insert(j);
              }
            }
            return out;
          },
          [&](const SingleMindedValuation& s) {
            ItemSet free_items(m);
            for (int j : avail) {
              if (IsFree(prices[j])) free_items.Insert(j);
            }
            if (!s.interest.IsSubsetOf(available)) return free_items;
            DemandUtility u = BundleUtility(v, prices, s.interest);
            if (u < DemandUtility{Money(0), 0}) return free_items;
            return s.interest | free_items;
          },
          [&](const CappedAdditiveValuation& c) {
            // An item whose own value is below its price lowers utility
            // whenever it is added, so only the rest can appear in demand.
            std::vector<int> candidates;
            for (int j : avail) {
              if (BuysItem(c.values[j], prices[j])) candidates.push_back(j);
            }
            return EnumerateDemand(
                candidates, prices, m, [&](std::uint64_t mask) {
                  Money total;
                  for (std::size_t t = 0; t < candidates.size(); ++t) {
                    if ((mask >> t) & 1ULL) total += c.values[candidates[t]];
                  }
                  return Min(c.budget, total);
                });
          },
          [&](const ExplicitValuation& e) {
            return EnumerateDemand(avail, prices, m, [&](std::uint64_t mask) {
              std::uint64_t items = 0;
              for (std::size_t t = 0; t < avail.size(); ++t) {
                if ((mask >> t) & 1ULL) items |= 1ULL << avail[t];
              }
              return e.table[items];
            });
          },
      },
      v.variant());
}

namespace {

bool ValidateByTable(const Valuation& v, ValuationClass c) {
  const int m = v.num_items();
  const std::uint32_t size = 1U << m;
  std::vector<Money> t(size);
  for (std::uint32_t s = 0; s < size; ++s) {
    t[s] = v.Value(ItemSet::FromMask(m, s));
  }
  switch (c) {
    case ValuationClass::kMonotone:
      for (std::uint32_t s = 0; s < size; ++s) {
        for (int j = 0; j < m; ++j) {
          if (!((s >> j) & 1U) && t[s | (1U << j)] < t[s]) return false;
        }
      }
      return true;
    case ValuationClass::kAdditive:
      for (std::uint32_t s = 0; s < size; ++s) {
        Money sum;
        for (int j = 0; j < m; ++j) {
          if ((s >> j) & 1U) sum += t[1U << j];
        }
        if (sum != t[s]) return false;
      }
      return true;
    case ValuationClass::kSubmodular:
      // Diminishing marginals over adjacent pairs is equivalent to the
      // lattice inequality over all pairs.
      for (std::uint32_t s = 0; s < size; ++s) {
        for (int i = 0; i < m; ++i) {
          if ((s >> i) & 1U) continue;
          for (int j = i + 1; j < m; ++j) {
            if ((s >> j) & 1U) continue;
            const std::uint32_t si = s | (1U << i);
            const std::uint32_t sj = s | (1U << j);
            if (t[si] + t[sj] < t[si | sj] + t[s]) return false;
          }
        }
      }
      return true;
    case ValuationClass::kSubadditive:
      // Every valuation here is monotone, so disjoint pairs suffice.
      for (std::uint32_t x = 0; x < size; ++x) {
        const std::uint32_t rest = (size - 1) & ~x;
        for (std::uint32_t y = rest;; y = (y - 1) & rest) {
          if (t[x] + t[y] < t[x | y]) return false;
          if (y == 0) break;
        }
      }
      return true;
  }
  return false;
}

bool ValidateClosedForm(const Valuation& v, ValuationClass c) {
  if (c == ValuationClass::kMonotone) return true;
  switch (v.kind()) {
    case ValuationKind::kAdditive:
    case ValuationKind::kPolarAdditive:
      return true;
    case ValuationKind::kCappedAdditive: {
      if (c != ValuationClass::kAdditive) return true;
      const auto& cap = std::get<CappedAdditiveValuation>(v.variant());
      Money total;
      for (const Money& x : cap.values) total += x;
      return cap.budget >= total;
    }
    case ValuationKind::kSingleMinded: {
      const auto& s = std::get<SingleMindedValuation>(v.variant());
      return s.interest.Size() == 1 || s.value.is_zero();
    }
    case ValuationKind::kExplicit:
      break;
  }
  throw ResourceError("explicit valuations are validated by enumeration");
}

}  // namespace

bool ValidateClass(const Valuation& v, ValuationClass c) {
  if (v.num_items() <= kMaxExplicitItems) return ValidateByTable(v, c);
  return ValidateClosedForm(v, c);
}

}  // namespace mechlab
