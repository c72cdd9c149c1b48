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

#ifndef MECHLAB_IO_H_
#define MECHLAB_IO_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mechlab/allocation_family.h"
#include "mechlab/instance.h"
#include "mechlab/learning.h"
#include "mechlab/mechanisms.h"
#include "mechlab/menus.h"
#include "mechlab/oracles.h"
#include "mechlab/shattering.h"

namespace mechlab {

using Json = nlohmann::json;

// Rationals are written as "n" or "n/d" strings; readers also accept JSON
// integers. Item sets are sorted index lists. Every reader throws ParseError
// carrying a JSON-pointer path to the offending node.

Json RationalToJson(const Rational& r);
Rational RationalFromJson(const Json& j, const std::string& path = "");

Json ValuationToJson(const Valuation& v);
Valuation ValuationFromJson(const Json& j, const std::string& path = "");

// {"n": .., "m": .., "valuations": [..]}
Json InstanceToJson(const Instance& inst);
Instance InstanceFromJson(const Json& j, const std::string& path = "");

// {"type": "single_price", "order": [..],
//  "prices": [{"value": "2", "inclusive": true}, ..]}
Json SinglePriceSpecToJson(const SinglePriceSpec& spec);
SinglePriceSpec SinglePriceSpecFromJson(const Json& j,
                                        const std::string& path = "");
// {"type": "posted_price", "order": [..], "prices": [[..], ..]}
Json PostedPriceSpecToJson(const PostedPriceSpec& spec);
PostedPriceSpec PostedPriceSpecFromJson(const Json& j,
                                        const std::string& path = "");
// {"type": "single_bid", "bids": [..]}
Json BidsToJson(const std::vector<Money>& bids);
std::vector<Money> BidsFromJson(const Json& j, const std::string& path = "");

// {"num_items": m, "allocation": [[..], ..], "payments": [..],
//  "welfare": ".."}. Overlapping bundles and negative payments are rejected.
Json OutcomeToJson(const Outcome& outcome);
Outcome OutcomeFromJson(const Json& j, const std::string& path = "");

// {"items": |X|, "indices": |Y|, "d": d, "members": [[[..], ..], ..]} where
// each member lists the item set of every index.
Json AllocationFamilyToJson(const AllocationFamily& family);
AllocationFamily AllocationFamilyFromJson(const Json& j,
                                          const std::string& path = "");

Json SearchReportToJson(const SearchReport& report, const Money& opt);

// {"bidder": i, "num_items": m, "entries": [{"bundle": mask, "items": [..],
//  "price": ".."}, ..]}
Json MenuToJson(const Menu& menu);
Menu MenuFromJson(const Json& j, const std::string& path = "");
Json SubmenusToJson(const std::vector<StructuredSubmenu>& submenus);

// Regrets, learning rates and the empirical ratio of a history.
Json PlayHistorySummary(const PlayHistory& history, const Money& opt);

inline constexpr const char* kHistoryCsvSchema = "mechlab.history.v1";
inline constexpr const char* kSearchCsvSchema = "mechlab.search.v1";

// Header: schema,round,a0..a{n-1},welfare. The schema column repeats the
// schema string on every row.
std::string PlayHistoryCsv(const PlayHistory& history);
// Full history including the learner audit; doubles round-trip exactly.
Json PlayHistoryToJson(const PlayHistory& history);
PlayHistory PlayHistoryFromJson(const Json& j, const std::string& path = "");
// Header: schema,spec,welfare,opt,ratio.
std::string SearchReportCsv(const SearchReport& report, const Money& opt);

// Compact single-line rendering of a single-price spec, e.g.
// "order=0 1;prices=2 1+" ("+" marks an exclusive threshold).
std::string SinglePriceSpecLabel(const SinglePriceSpec& spec);

Json ReadJsonFile(const std::string& path);
// Writes `text` to `path`, or to stdout when `path` is empty or "-".
void WriteText(const std::string& path, const std::string& text);
std::string DumpJson(const Json& j);

}  // namespace mechlab

#endif  // MECHLAB_IO_H_
