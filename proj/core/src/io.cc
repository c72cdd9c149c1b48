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

#include "mechlab/io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <utility>

#include "mechlab/errors.h"

namespace mechlab {
namespace {

std::string Child(const std::string& path, const std::string& key) {
  return path + "/" + key;
}

std::string Child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& Field(const Json& j, const std::string& key,
                  const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, "missing field \"" + key + "\"");
  return *it;
}

const Json& ArrayField(const Json& j, const std::string& key,
                       const std::string& path) {
  const Json& a = Field(j, key, path);
  if (!a.is_array()) throw ParseError(Child(path, key), "expected an array");
  return a;
}

std::int64_t IntFrom(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<std::int64_t>();
}

int IntField(const Json& j, const std::string& key, const std::string& path) {
  const std::int64_t v = IntFrom(Field(j, key, path), Child(path, key));
  if (v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    throw ParseError(Child(path, key), "integer out of range");
  }
  return static_cast<int>(v);
}

bool BoolFrom(const Json& j, const std::string& path) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer() && (j == 0 || j == 1)) return j == 1;
  throw ParseError(path, "expected a boolean");
}

std::vector<Money> MoneyList(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  std::vector<Money> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(RationalFromJson(j[i], Child(path, i)));
  }
  return out;
}

Json MoneyListToJson(const std::vector<Money>& values) {
  Json out = Json::array();
  for (const Money& v : values) out.push_back(RationalToJson(v));
  return out;
}

std::vector<int> IndexList(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an index list");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(static_cast<int>(IntFrom(j[i], Child(path, i))));
  }
  return out;
}

// A visiting order: a permutation of 0..n-1 with n = `num_bidders`.
std::vector<int> OrderFrom(const Json& j, std::size_t num_bidders,
                           const std::string& path) {
  std::vector<int> order = IndexList(j, path);
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  bool ok = order.size() == num_bidders;
  for (std::size_t i = 0; ok && i < sorted.size(); ++i) {
    ok = sorted[i] == static_cast<int>(i);
  }
  if (!ok) throw ParseError(path, "order must be a permutation of the bidders");
  return order;
}

ItemSet ItemSetFrom(const Json& j, int m, const std::string& path) {
  const std::vector<int> items = IndexList(j, path);
  for (int x : items) {
    if (x < 0 || x >= m) throw ParseError(path, "item index out of range");
  }
  return ItemSet(m, items);
}

// Wraps library validation errors raised while building an object.
template <typename F>
auto Guarded(const std::string& path, F build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace

Json RationalToJson(const Rational& r) { return r.ToString(); }

Rational RationalFromJson(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::Parse(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(path, e.what());
    }
  }
  throw ParseError(path, "expected a rational string or integer");
}

Json ValuationToJson(const Valuation& v) {
  Json out;
  out["type"] = std::string(ValuationKindName(v.kind()));
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, AdditiveValuation>) {
          out["values"] = MoneyListToJson(x.values);
        } else if constexpr (std::is_same_v<T, SingleMindedValuation>) {
          out["num_items"] = x.num_items;
          out["interest"] = x.interest.Items();
          out["value"] = RationalToJson(x.value);
        } else if constexpr (std::is_same_v<T, CappedAdditiveValuation>) {
          out["values"] = MoneyListToJson(x.values);
          out["budget"] = RationalToJson(x.budget);
        } else if constexpr (std::is_same_v<T, ExplicitValuation>) {
          out["num_items"] = x.num_items;
          out["table"] = MoneyListToJson(x.table);
        } else {
          Json flags = Json::array();
          for (bool f : x.flags) flags.push_back(f ? 1 : 0);
          out["flags"] = flags;
        }
      },
      v.variant());
  return out;
}

Valuation ValuationFromJson(const Json& j, const std::string& path) {
  const Json& type = Field(j, "type", path);
  if (!type.is_string()) throw ParseError(Child(path, "type"), "expected a string");
  const std::string t = type.get<std::string>();
  return Guarded(path, [&] {
    if (t == "additive") {
      return Valuation::Additive(
          MoneyList(Field(j, "values", path), Child(path, "values")));
    }
    if (t == "single_minded") {
      const int m = IntField(j, "num_items", path);
      if (m < 1) throw ParseError(Child(path, "num_items"), "must be >= 1");
      return Valuation::SingleMinded(
          ItemSetFrom(Field(j, "interest", path), m, Child(path, "interest")),
          RationalFromJson(Field(j, "value", path), Child(path, "value")));
    }
    if (t == "capped_additive") {
      return Valuation::CappedAdditive(
          MoneyList(Field(j, "values", path), Child(path, "values")),
          RationalFromJson(Field(j, "budget", path), Child(path, "budget")));
    }
    if (t == "explicit") {
      return Valuation::Explicit(
          IntField(j, "num_items", path),
          MoneyList(Field(j, "table", path), Child(path, "table")));
    }
    if (t == "polar") {
      const Json& flags = ArrayField(j, "flags", path);
      std::vector<bool> out;
      for (std::size_t i = 0; i < flags.size(); ++i) {
        out.push_back(BoolFrom(flags[i], Child(Child(path, "flags"), i)));
      }
      return Valuation::PolarAdditive(std::move(out));
    }
    throw ParseError(Child(path, "type"), "unknown valuation type \"" + t + "\"");
  });
}

Json InstanceToJson(const Instance& inst) {
  Json vals = Json::array();
  for (const Valuation& v : inst.valuations()) vals.push_back(ValuationToJson(v));
  return Json{{"n", inst.num_bidders()},
              {"m", inst.num_items()},
              {"valuations", vals}};
}

Instance InstanceFromJson(const Json& j, const std::string& path) {
  const int n = IntField(j, "n", path);
  const int m = IntField(j, "m", path);
  const Json& vals = ArrayField(j, "valuations", path);
  if (static_cast<int>(vals.size()) != n) {
    throw ParseError(Child(path, "valuations"), "expected n valuations");
  }
  std::vector<Valuation> out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const std::string p = Child(Child(path, "valuations"), i);
    out.push_back(ValuationFromJson(vals[i], p));
    if (out.back().num_items() != m) {
      throw ParseError(p, "valuation is not over m items");
    }
  }
  return Guarded(path, [&] { return Instance(std::move(out)); });
}

Json SinglePriceSpecToJson(const SinglePriceSpec& spec) {
  Json prices = Json::array();
  for (const Threshold& t : spec.prices) {
    prices.push_back(
        Json{{"value", RationalToJson(t.value)}, {"inclusive", t.inclusive}});
  }
  return Json{{"type", "single_price"}, {"order", spec.order}, {"prices", prices}};
}

SinglePriceSpec SinglePriceSpecFromJson(const Json& j,
                                        const std::string& path) {
  SinglePriceSpec spec;
  const Json& prices = ArrayField(j, "prices", path);
  spec.order =
      OrderFrom(Field(j, "order", path), prices.size(), Child(path, "order"));
  for (std::size_t i = 0; i < prices.size(); ++i) {
    const std::string p = Child(Child(path, "prices"), i);
    Threshold t;
    if (prices[i].is_object()) {
      t.value = RationalFromJson(Field(prices[i], "value", p), Child(p, "value"));
      if (prices[i].contains("inclusive")) {
        t.inclusive = BoolFrom(prices[i]["inclusive"], Child(p, "inclusive"));
      }
    } else {
      t.value = RationalFromJson(prices[i], p);
    }
    if (t.value.sign() < 0) throw ParseError(p, "negative price");
    spec.prices.push_back(t);
  }
  return spec;
}

Json PostedPriceSpecToJson(const PostedPriceSpec& spec) {
  Json rows = Json::array();
  for (const auto& row : spec.prices) rows.push_back(MoneyListToJson(row));
  return Json{{"type", "posted_price"}, {"order", spec.order}, {"prices", rows}};
}

PostedPriceSpec PostedPriceSpecFromJson(const Json& j,
                                        const std::string& path) {
  PostedPriceSpec spec;
  const Json& rows = ArrayField(j, "prices", path);
  spec.order =
      OrderFrom(Field(j, "order", path), rows.size(), Child(path, "order"));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string p = Child(Child(path, "prices"), i);
    spec.prices.push_back(MoneyList(rows[i], p));
    for (const Money& x : spec.prices.back()) {
      if (x.sign() < 0) throw ParseError(p, "negative price");
    }
  }
  return spec;
}

Json BidsToJson(const std::vector<Money>& bids) {
  return Json{{"type", "single_bid"}, {"bids", MoneyListToJson(bids)}};
}

std::vector<Money> BidsFromJson(const Json& j, const std::string& path) {
  std::vector<Money> bids =
      MoneyList(Field(j, "bids", path), Child(path, "bids"));
  for (const Money& b : bids) {
    if (b.sign() < 0) throw ParseError(Child(path, "bids"), "negative bid");
  }
  return bids;
}

Json OutcomeToJson(const Outcome& outcome) {
  Json alloc = Json::array();
  for (const ItemSet& s : outcome.allocation) alloc.push_back(s.Items());
  const int m =
      outcome.allocation.empty() ? 0 : outcome.allocation[0].universe_size();
  return Json{{"num_items", m},
              {"allocation", alloc},
              {"payments", MoneyListToJson(outcome.payments)},
              {"welfare", RationalToJson(outcome.welfare)}};
}

Outcome OutcomeFromJson(const Json& j, const std::string& path) {
  const int m = IntField(j, "num_items", path);
  const Json& alloc = ArrayField(j, "allocation", path);
  Outcome out;
  ItemSet used(m);
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    const std::string p = Child(Child(path, "allocation"), i);
    ItemSet s = ItemSetFrom(alloc[i], m, p);
    if (s.Intersects(used)) throw ParseError(p, "allocation bundles overlap");
    used |= s;
    out.allocation.push_back(std::move(s));
  }
  out.payments = MoneyList(Field(j, "payments", path), Child(path, "payments"));
  if (out.payments.size() != out.allocation.size()) {
    throw ParseError(Child(path, "payments"), "expected one payment per bidder");
  }
  for (const Money& p : out.payments) {
    if (p.sign() < 0) throw ParseError(Child(path, "payments"), "negative payment");
  }
  out.welfare = RationalFromJson(Field(j, "welfare", path), Child(path, "welfare"));
  return out;
}

Json AllocationFamilyToJson(const AllocationFamily& family) {
  Json members = Json::array();
  for (const Allocation& a : family.members()) {
    Json bundles = Json::array();
    for (std::uint64_t mask : a) {
      bundles.push_back(ItemSet::FromMask(family.num_items(), mask).Items());
    }
    members.push_back(bundles);
  }
  return Json{{"items", family.num_items()},
              {"indices", family.num_indices()},
              {"d", family.duplication()},
              {"members", members}};
}

AllocationFamily AllocationFamilyFromJson(const Json& j,
                                          const std::string& path) {
  const int items = IntField(j, "items", path);
  const int indices = IntField(j, "indices", path);
  const int d = j.contains("d") ? IntField(j, "d", path) : 1;
  if (items < 1 || items > kMaxFamilyItems) {
    throw ParseError(Child(path, "items"), "must lie in 1..64");
  }
  const Json& members = ArrayField(j, "members", path);
  std::vector<Allocation> out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const std::string p = Child(Child(path, "members"), k);
    if (!members[k].is_array()) throw ParseError(p, "expected a bundle list");
    Allocation a;
    for (std::size_t y = 0; y < members[k].size(); ++y) {
      a.push_back(ItemSetFrom(members[k][y], items, Child(p, y)).ToMask());
    }
    out.push_back(std::move(a));
  }
  return Guarded(path, [&] {
    return AllocationFamily(items, indices, d, std::move(out));
  });
}

Json SearchReportToJson(const SearchReport& report, const Money& opt) {
  return Json{
      {"best_spec", SinglePriceSpecToJson(report.best_spec)},
      {"best_welfare", RationalToJson(report.best_welfare)},
      {"opt_welfare", RationalToJson(opt)},
      {"ratio", ExtendedRatio::Of(opt, report.best_welfare).ToString()},
      {"search_space_size", report.search_space_size},
      {"exhaustive", report.exhaustive},
      {"orders_reduced", report.orders_reduced}};
}

Json MenuToJson(const Menu& menu) {
  Json entries = Json::array();
  for (const auto& [mask, price] : menu.entries) {
    entries.push_back(
        Json{{"bundle", mask},
             {"items", ItemSet::FromMask(menu.num_items, mask).Items()},
             {"price", RationalToJson(price)}});
  }
  return Json{{"bidder", menu.bidder},
              {"num_items", menu.num_items},
              {"entries", entries}};
}

Menu MenuFromJson(const Json& j, const std::string& path) {
  Menu menu;
  menu.bidder = IntField(j, "bidder", path);
  menu.num_items = IntField(j, "num_items", path);
  if (menu.num_items < 1 || menu.num_items > 64) {
    throw ParseError(Child(path, "num_items"), "must lie in 1..64");
  }
  const Json& entries = ArrayField(j, "entries", path);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = Child(Child(path, "entries"), i);
    const Json& b = Field(entries[i], "bundle", p);
    if (!b.is_number_unsigned() && !b.is_number_integer()) {
      throw ParseError(Child(p, "bundle"), "expected a bitmask");
    }
    const auto mask = b.get<std::uint64_t>();
    const Money price =
        RationalFromJson(Field(entries[i], "price", p), Child(p, "price"));
    if (!menu.entries.emplace(mask, price).second) {
      throw ParseError(p, "bundle listed twice");
    }
  }
  return menu;
}

Json SubmenusToJson(const std::vector<StructuredSubmenu>& submenus) {
  Json out = Json::array();
  for (const StructuredSubmenu& s : submenus) {
    out.push_back(Json{{"k", s.k},
                       {"anchor", RationalToJson(s.anchor)},
                       {"size", s.members.size()},
                       {"members", s.members}});
  }
  return out;
}

Json PlayHistorySummary(const PlayHistory& history, const Money& opt) {
  Json players = Json::array();
  for (std::size_t i = 0; i < history.audit.size(); ++i) {
    const int p = static_cast<int>(i);
    Json player = {{"player", p},
                   {"eta", history.etas.at(i)},
                   {"external_regret", ExternalRegret(history, p)},
                   {"swap_regret", SwapRegret(history, p)}};
    // The guarantee of the learner that was actually run.
    if (history.algorithm == Algorithm::kHedge) {
      player["external_bound"] = HedgeRegretBound(history, p);
    } else {
      const auto k = static_cast<double>(history.audit[i].rewards.at(0).size());
      player["swap_bound"] = k * HedgeRegretBound(history, p);
    }
    players.push_back(std::move(player));
  }
  const double poa = EmpiricalPoa(history, opt);
  double mean = 0;
  for (double w : history.welfare) mean += w;
  mean /= history.rounds;
  return Json{
      {"algorithm", std::string(AlgorithmName(history.algorithm))},
      {"equilibrium_notion",
       history.algorithm == Algorithm::kHedge ? "coarse_correlated"
                                              : "correlated"},
      {"rounds", history.rounds},
      {"normalization_bound", history.utility_range},
      {"players", players},
      {"opt_welfare", RationalToJson(opt)},
      {"mean_welfare", mean},
      {"empirical_poa",
       std::isinf(poa) ? Json("inf") : Json(poa)}};
}

Json PlayHistoryToJson(const PlayHistory& history) {
  Json audit = Json::array();
  for (const PlayerAudit& a : history.audit) {
    audit.push_back(Json{{"mixtures", a.mixtures}, {"rewards", a.rewards}});
  }
  return Json{{"algorithm", std::string(AlgorithmName(history.algorithm))},
              {"rounds", history.rounds},
              {"etas", history.etas},
              {"utility_low", history.utility_low},
              {"utility_range", history.utility_range},
              {"actions", history.actions},
              {"utilities", history.utilities},
              {"welfare", history.welfare},
              {"audit", audit},
              {"internal_external_regret", history.internal_external_regret},
              {"internal_swap_regret", history.internal_swap_regret}};
}

namespace {

template <typename T>
T Typed(const Json& j, const std::string& key, const std::string& path) {
  const Json& field = Field(j, key, path);
  try {
    return field.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(Child(path, key), "unexpected type");
  }
}

}  // namespace

PlayHistory PlayHistoryFromJson(const Json& j, const std::string& path) {
  PlayHistory h;
  const auto algo = Typed<std::string>(j, "algorithm", path);
  if (algo == AlgorithmName(Algorithm::kHedge)) {
    h.algorithm = Algorithm::kHedge;
  } else if (algo == AlgorithmName(Algorithm::kSwap)) {
    h.algorithm = Algorithm::kSwap;
  } else {
    throw ParseError(Child(path, "algorithm"), "unknown algorithm " + algo);
  }
  h.rounds = IntField(j, "rounds", path);
  h.etas = Typed<std::vector<double>>(j, "etas", path);
  h.utility_low = Typed<double>(j, "utility_low", path);
  h.utility_range = Typed<double>(j, "utility_range", path);
  h.actions = Typed<std::vector<std::vector<int>>>(j, "actions", path);
  h.utilities = Typed<std::vector<std::vector<double>>>(j, "utilities", path);
  h.welfare = Typed<std::vector<double>>(j, "welfare", path);
  const Json& audit = ArrayField(j, "audit", path);
  for (std::size_t i = 0; i < audit.size(); ++i) {
    const std::string p = Child(Child(path, "audit"), i);
    PlayerAudit a;
    a.mixtures = Typed<std::vector<std::vector<double>>>(audit[i], "mixtures",
                                                        p);
    a.rewards = Typed<std::vector<std::vector<double>>>(audit[i], "rewards", p);
    h.audit.push_back(std::move(a));
  }
  h.internal_external_regret =
      Typed<std::vector<double>>(j, "internal_external_regret", path);
  h.internal_swap_regret =
      Typed<std::vector<double>>(j, "internal_swap_regret", path);
  const auto rounds = static_cast<std::size_t>(h.rounds);
  if (h.rounds < 0 || h.actions.size() != rounds ||
      h.utilities.size() != rounds || h.welfare.size() != rounds) {
    throw ParseError(path, "per-round arrays disagree with rounds");
  }
  return h;
}

std::string PlayHistoryCsv(const PlayHistory& history) {
  std::ostringstream os;
  os.precision(17);
  const std::size_t n = history.actions.empty() ? 0 : history.actions[0].size();
  os << "schema,round";
  for (std::size_t i = 0; i < n; ++i) os << ",a" << i;
  os << ",welfare\n";
  for (int t = 0; t < history.rounds; ++t) {
    os << kHistoryCsvSchema << ',' << t;
    for (int a : history.actions[t]) os << ',' << a;
    os << ',' << history.welfare[t] << '\n';
  }
  return os.str();
}

std::string SinglePriceSpecLabel(const SinglePriceSpec& spec) {
  std::string out = "order=";
  for (std::size_t i = 0; i < spec.order.size(); ++i) {
    out += (i ? " " : "") + std::to_string(spec.order[i]);
  }
  out += ";prices=";
  for (std::size_t i = 0; i < spec.prices.size(); ++i) {
    out += (i ? " " : "") + spec.prices[i].value.ToString() +
           (spec.prices[i].inclusive ? "" : "+");
  }
  return out;
}

std::string SearchReportCsv(const SearchReport& report, const Money& opt) {
  std::ostringstream os;
  os << "schema,spec,welfare,opt,ratio\n";
  os << kSearchCsvSchema << ',' << SinglePriceSpecLabel(report.best_spec)
     << ',' << report.best_welfare << ',' << opt << ','
     << ExtendedRatio::Of(opt, report.best_welfare).ToString() << '\n';
  return os.str();
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("", path + ": " + e.what());
  }
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string DumpJson(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mechlab
