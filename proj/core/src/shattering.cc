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

#include "mechlab/shattering.h"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>

#include "mechlab/errors.h"
#include "mechlab/instance.h"
#include "mechlab/mechanisms.h"
#include "mechlab/oracles.h"
#include "mechlab/random.h"

namespace mechlab {
namespace {

std::vector<int> Bits(std::uint64_t mask) {
  std::vector<int> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

std::uint64_t IntPowU(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      throw ArithmeticError("integer power overflows 64 bits");
    }
    out *= base;
  }
  return out;
}

}  // namespace

std::set<Function> Project(const AllocationFamily& family, std::uint64_t s,
                           std::uint64_t a) {
  const std::vector<int> xs = Bits(s);
  const std::vector<int> ys = Bits(a);
  if (!xs.empty() && xs.back() >= family.num_items()) {
    throw DomainError("S is not a subset of X");
  }
  if (!ys.empty() && ys.back() >= family.num_indices()) {
    throw DomainError("A is not a subset of Y");
  }
  std::set<Function> out;
  for (const Allocation& member : family.members()) {
    Function f(xs.size(), -1);
    bool ok = true;
    for (std::size_t t = 0; t < xs.size() && ok; ++t) {
      for (int y : ys) {
        if ((member[y] >> xs[t]) & 1ULL) {
          if (f[t] != -1) {
            ok = false;
            break;
          }
          f[t] = y;
        }
      }
      if (f[t] == -1) ok = false;
    }
    if (ok) out.insert(std::move(f));
  }
  return out;
}

bool IsShattered(const AllocationFamily& family, std::uint64_t s,
                 std::uint64_t a) {
  const int size_s = std::popcount(s);
  const int size_a = std::popcount(a);
  if (size_s == 0) return !family.empty();
  if (size_a == 0) return false;
  const std::uint64_t needed = IntPowU(size_a, size_s);
  if (family.size() < needed) return false;
  return Project(family, s, a).size() == needed;
}

FunctionFamily::FunctionFamily(int num_items, int num_indices,
                               std::vector<Function> functions)
    : num_items_(num_items),
      num_indices_(num_indices),
      functions_(std::move(functions)) {
  if (num_items < 1 || num_items > kMaxFamilyItems) {
    throw ParameterError("function families support 1..64 items");
  }
  if (num_indices < 1) throw ParameterError("function family needs indices");
  for (const Function& f : functions_) {
    if (static_cast<int>(f.size()) != num_items) {
      throw ParameterError("function length differs from |X|");
    }
    for (int y : f) {
      if (y < 0 || y >= num_indices) {
        throw ParameterError("function value outside Y");
      }
    }
  }
  std::sort(functions_.begin(), functions_.end());
  functions_.erase(std::unique(functions_.begin(), functions_.end()),
                   functions_.end());
}

FunctionFamily FunctionFamily::Of(const AllocationFamily& family) {
  return FunctionFamily(family.num_items(), family.num_indices(),
                        family.TotalFunctions());
}

std::vector<Function> AllFunctions(int num_items, int num_indices) {
  const std::uint64_t count = IntPowU(num_indices, num_items);
  if (count > (1ULL << 20)) throw ResourceError("|Y|^|X| too large");
  std::vector<Function> out;
  out.reserve(count);
  Function f(num_items, 0);
  for (std::uint64_t c = 0; c < count; ++c) {
    out.push_back(f);
    for (int x = num_items - 1; x >= 0; --x) {
      if (++f[x] < num_indices) break;
      f[x] = 0;
    }
  }
  return out;
}

FunctionFamily FamilyFromMask(int num_items, int num_indices,
                              std::uint64_t mask) {
  const std::vector<Function> all = AllFunctions(num_items, num_indices);
  if (all.size() > 64) throw ParameterError("mask families need |Y|^|X| <= 64");
  std::vector<Function> chosen;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if ((mask >> i) & 1ULL) chosen.push_back(all[i]);
  }
  return FunctionFamily(num_items, num_indices, std::move(chosen));
}

FunctionFamily RandomFunctionFamily(int num_items, int num_indices,
                                    std::uint64_t seed) {
  const std::vector<Function> all = AllFunctions(num_items, num_indices);
  Rng rng(seed);
  const std::size_t size = 1 + rng.Uniform(all.size());
  const std::vector<int> perm = rng.Permutation(static_cast<int>(all.size()));
  std::vector<Function> chosen;
  chosen.reserve(size);
  for (std::size_t i = 0; i < size; ++i) chosen.push_back(all[perm[i]]);
  return FunctionFamily(num_items, num_indices, std::move(chosen));
}

namespace {

std::vector<std::vector<int>> KSubsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    if (std::popcount(mask) == k) out.push_back(Bits(mask));
  }
  return out;
}

void CheckK(const FunctionFamily& family, int k) {
  if (k < 1 || k > family.num_indices()) {
    throw ParameterError("k must lie in [1, |Y|], got " + std::to_string(k));
  }
}

// Calls `test` on every assignment of a k-subset to each element of `xs`;
// returns true as soon as `test` does.
template <typename Test>
bool AnyBox(const std::vector<int>& xs,
            const std::vector<std::vector<int>>& subsets, Test test) {
  std::vector<int> choice(xs.size(), 0);
  while (true) {
    if (test(choice)) return true;
    std::size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (++choice[i] < static_cast<int>(subsets.size())) break;
      choice[i] = 0;
    }
    if (i == choice.size()) return false;
  }
}

// Selector enumerator: the set of member restrictions must contain every
// selector of the box.
bool ShatteredBySelectors(const FunctionFamily& family,
                          const std::vector<int>& xs, int k) {
  const int ny = family.num_indices();
  std::unordered_set<std::uint64_t> restrictions;
  for (const Function& f : family.functions()) {
    std::uint64_t code = 0;
    for (int x : xs) code = code * ny + f[x];
    restrictions.insert(code);
  }
  const auto subsets = KSubsets(ny, k);
  const std::uint64_t selectors = IntPowU(k, static_cast<int>(xs.size()));
  return AnyBox(xs, subsets, [&](const std::vector<int>& choice) {
    for (std::uint64_t s = 0; s < selectors; ++s) {
      std::uint64_t code = 0, rest = s;
      std::vector<int> ys(xs.size());
      for (int t = static_cast<int>(xs.size()) - 1; t >= 0; --t) {
        ys[t] = subsets[choice[t]][rest % k];
        rest /= k;
      }
      for (int y : ys) code = code * ny + y;
      if (!restrictions.contains(code)) return false;
    }
    return true;
  });
}

// Counting enumerator: the members inside the box must have k^|A| distinct
// restrictions.
bool ShatteredByCounting(const FunctionFamily& family,
                         const std::vector<int>& xs, int k) {
  const int ny = family.num_indices();
  const auto subsets = KSubsets(ny, k);
  std::vector<std::uint64_t> masks;
  for (const auto& s : subsets) {
    std::uint64_t m = 0;
    for (int y : s) m |= 1ULL << y;
    masks.push_back(m);
  }
  const std::uint64_t needed = IntPowU(k, static_cast<int>(xs.size()));
  return AnyBox(xs, subsets, [&](const std::vector<int>& choice) {
    std::set<std::vector<int>> seen;
    for (const Function& f : family.functions()) {
      std::vector<int> r;
      bool inside = true;
      for (std::size_t t = 0; t < xs.size() && inside; ++t) {
        inside = (masks[choice[t]] >> f[xs[t]]) & 1ULL;
        r.push_back(f[xs[t]]);
      }
      if (inside) seen.insert(std::move(r));
    }
    return seen.size() == needed;
  });
}

template <typename Shattered>
int Dimension(const FunctionFamily& family, int k, Shattered shattered) {
  CheckK(family, k);
  if (family.size() == 0) return 0;
  const int nx = family.num_items();
  if (nx > 20) throw ResourceError("dimension search needs |X| <= 20");
  for (int size = nx; size > 0; --size) {
    for (std::uint64_t a = 0; a < (1ULL << nx); ++a) {
      if (std::popcount(a) == size && shattered(family, Bits(a), k)) {
        return size;
      }
    }
  }
  return 0;
}

}  // namespace

bool IsKShattered(const FunctionFamily& family, std::uint64_t a, int k) {
  CheckK(family, k);
  if (family.size() == 0) return false;
  return ShatteredBySelectors(family, Bits(a), k);
}

int DimK(const FunctionFamily& family, int k) {
  return Dimension(family, k, ShatteredBySelectors);
}

int DimKByCounting(const FunctionFamily& family, int k) {
  return Dimension(family, k, ShatteredByCounting);
}

std::uint64_t SauerShelahBound(int num_items, int num_indices, int k,
                               int dim) {
  if (k < 1 || k > num_indices) throw ParameterError("k must lie in [1, |Y|]");
  auto binom = [](int n, int r) {
    unsigned __int128 out = 1;
    for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
  };
  const unsigned __int128 cy = binom(num_indices, k);
  unsigned __int128 total = 0;
  constexpr unsigned __int128 kMax = std::numeric_limits<std::uint64_t>::max();
  for (int i = 0; i <= dim; ++i) {
    unsigned __int128 term = binom(num_items, i);
    for (int e = 0; e < num_items - i; ++e) term *= k - 1;
    for (int e = 0; e < i; ++e) {
      term *= cy;
      if (term > kMax) throw ArithmeticError("Sauer-Shelah bound overflows");
    }
    total += term;
    if (total > kMax) throw ArithmeticError("Sauer-Shelah bound overflows");
  }
  return static_cast<std::uint64_t>(total);
}

bool SauerShelahCheck(const FunctionFamily& family, int k) {
  const int dim = DimK(family, k);
  return family.size() <= SauerShelahBound(family.num_items(),
                                           family.num_indices(), k, dim);
}

namespace {

inline constexpr std::uint64_t kMaxPropertyAllocations = 1'000'000;

// Per allocation S of X: (demand, best supply) where the property requires
// best * alpha >= demand.
template <typename Visit>
void ForEachRequirement(const AllocationFamily& family, Property property,
                        Visit visit) {
  const int nx = family.num_items();
  const int ny = family.num_indices();
  if (IntPowU(ny + 1, nx) > kMaxPropertyAllocations) {
    throw ResourceError("too many allocations of X to enumerate");
  }
  for (const Allocation& s : EnumerateAllocations(nx, ny, true)) {
    std::int64_t demand = 0;
    for (std::uint64_t bundle : s) {
      demand += property == Property::kContainment ? (bundle != 0 ? 1 : 0)
                                                   : std::popcount(bundle);
    }
    if (demand == 0) continue;
    std::int64_t best = 0;
    for (const Allocation& t : family.members()) {
      std::int64_t supply = 0;
      for (int y = 0; y < ny; ++y) {
        if (property == Property::kContainment) {
          supply += s[y] != 0 && (s[y] & ~t[y]) == 0 ? 1 : 0;
        } else {
          supply += std::popcount(s[y] & t[y]);
        }
      }
      best = std::max(best, supply);
    }
    if (!visit(s, demand, best)) return;
  }
}

PropertyCheck Check(const AllocationFamily& family, Property property,
                    const ExtendedRatio& alpha) {
  PropertyCheck result;
  result.holds = true;
  if (alpha.infinite) return result;
  if (alpha.value < Rational(1)) throw ParameterError("alpha must be >= 1");
  ForEachRequirement(family, property,
                     [&](const Allocation& s, std::int64_t demand,
                         std::int64_t best) {
                       if (Rational(best) * alpha.value < Rational(demand)) {
                         result.holds = false;
                         result.witness = s;
                         return false;
                       }
                       return true;
                     });
  return result;
}

}  // namespace

PropertyCheck CheckContainment(const AllocationFamily& family,
                               const ExtendedRatio& alpha) {
  return Check(family, Property::kContainment, alpha);
}

PropertyCheck CheckIntersection(const AllocationFamily& family,
                                const ExtendedRatio& alpha) {
  return Check(family, Property::kIntersection, alpha);
}

ExtendedRatio MinimalAlpha(const AllocationFamily& family, Property property) {
  ExtendedRatio alpha = ExtendedRatio::Of(Rational(1), Rational(1));
  ForEachRequirement(family, property,
                     [&](const Allocation&, std::int64_t demand,
                         std::int64_t best) {
                       alpha = std::max(alpha, ExtendedRatio::Of(
                                                   Rational(demand),
                                                   Rational(best)));
                       return true;
                     });
  return alpha;
}

ExtendedRatio MinimalAlphaBySearch(const AllocationFamily& family,
                                   Property property) {
  std::vector<ExtendedRatio> candidates = {
      ExtendedRatio::Of(Rational(1), Rational(1)), ExtendedRatio::Infinite()};
  ForEachRequirement(family, property,
                     [&](const Allocation&, std::int64_t demand,
                         std::int64_t best) {
                       const auto r =
                           ExtendedRatio::Of(Rational(demand), Rational(best));
                       if (r >= candidates[0]) candidates.push_back(r);
                       return true;
                     });
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  // The property is monotone in alpha and holds at infinity.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (Check(family, property, candidates[mid]).holds) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

ExtendedRatio MirRatio(const AllocationFamily& family,
                       MirValuationClass valuation_class,
                       const std::vector<Money>& value_grid) {
  if (family.empty()) throw ParameterError("MIR range is empty");
  if (family.duplication() != 1) {
    throw ParameterError("MIR ratios need a 1-duplicate family");
  }
  const int m = family.num_items();
  const int n = family.num_indices();
  if (m > 6) throw ResourceError("MIR ratio enumeration needs |X| <= 6");
  const std::uint64_t subsets = 1ULL << m;

  // Per-bidder candidate valuations.
  std::vector<Valuation> options;
  if (valuation_class == MirValuationClass::kSingleMinded) {
    options.push_back(Valuation::Additive(std::vector<Money>(m)));
    for (std::uint64_t s = 1; s < subsets; ++s) {
      for (const Money& v : value_grid) {
        if (v.sign() <= 0) throw ParameterError("grid values must be positive");
        options.push_back(Valuation::SingleMinded(ItemSet::FromMask(m, s), v));
      }
    }
  } else {
    for (std::uint64_t s = 0; s < subsets; ++s) {
      std::vector<Money> values(m);
      for (int j = 0; j < m; ++j) values[j] = Money((s >> j) & 1ULL ? 1 : 0);
      options.push_back(Valuation::Additive(std::move(values)));
    }
  }
  if (IntPowU(options.size(), n) > kMaxOptAssignments) {
    throw ResourceError("too many valuation profiles");
  }
  ExtendedRatio worst = ExtendedRatio::Of(Rational(1), Rational(1));
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    std::vector<Valuation> vals;
    for (int i = 0; i < n; ++i) vals.push_back(options[digit[i]]);
    const Instance inst(std::move(vals));
    const std::size_t chosen = MirChoice(family, inst);
    const Money mir =
        AllocationWelfare(ToItemSets(family.members()[chosen], m), inst);
    worst = std::max(worst, ExtendedRatio::Of(OptWelfare(inst), mir));
    int i = 0;
    for (; i < n; ++i) {
      if (++digit[i] < options.size()) break;
      digit[i] = 0;
    }
    if (i == n) break;
  }
  return worst;
}

}  // namespace mechlab
