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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "mechlab/errors.h"
#include "mechlab/instance.h"
#include "mechlab/learning.h"
#include "mechlab/mechanisms.h"
#include "support/fixtures.h"

namespace mechlab {
namespace {

Money R(std::int64_t n, std::int64_t d = 1) { return Money(n, d); }

template <typename F>
std::string ParsePathOf(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(IoTest, Rationals) {
  EXPECT_EQ(RationalToJson(R(3, 4)), Json("3/4"));
  EXPECT_EQ(RationalToJson(R(-2)), Json("-2"));
  EXPECT_EQ(RationalFromJson(Json("6/8")), R(3, 4));
  EXPECT_EQ(RationalFromJson(Json(5)), R(5));
  EXPECT_THROW(RationalFromJson(Json("1/0")), ParseError);
  EXPECT_THROW(RationalFromJson(Json("abc")), ParseError);
  EXPECT_THROW(RationalFromJson(Json(0.5)), ParseError);
  EXPECT_EQ(ParsePathOf([] { RationalFromJson(Json("1/0"), "/x"); }), "/x");
}

TEST(IoTest, EveryValuationVariantRoundTrips) {
  const std::vector<Valuation> vals = {
      Valuation::Additive({R(1), R(1, 2), R(0)}),
      Valuation::SingleMinded(ItemSet(3, {0, 2}), R(7, 3)),
      Valuation::CappedAdditive({R(2), R(3), R(1)}, R(4)),
      Valuation::Explicit(2, {R(0), R(1), R(2), R(2)}),
      Valuation::PolarAdditive({true, false, true}),
  };
  for (const Valuation& v : vals) {
    const Json j = ValuationToJson(v);
    EXPECT_EQ(ValuationFromJson(j), v) << j.dump();
    EXPECT_EQ(ValuationToJson(ValuationFromJson(j)), j);
  }
}

TEST(IoTest, BucketInstanceRoundTripsByteForByte) {
  const Instance inst = GenBucket({3, 3, 3});
  const std::string text = DumpJson(InstanceToJson(inst));
  const Instance back = InstanceFromJson(Json::parse(text));
  EXPECT_EQ(back, inst);
  EXPECT_EQ(DumpJson(InstanceToJson(back)), text);
}

TEST(IoTest, InstanceErrorsCarryThePath) {
  Json j = InstanceToJson(GenBucket({2, 2, 2}));
  j["valuations"][1]["values"][2] = "1/0";
  const std::string path = ParsePathOf([&] { InstanceFromJson(j); });
  EXPECT_NE(path.find("valuations"), std::string::npos) << path;
  EXPECT_NE(path.find('1'), std::string::npos) << path;
  EXPECT_NE(path.find('2'), std::string::npos) << path;

  j = InstanceToJson(GenBucket({2, 2, 2}));
  j["valuations"][0]["type"] = "quadratic";
  EXPECT_THROW(InstanceFromJson(j), ParseError);
  j = InstanceToJson(GenBucket({2, 2, 2}));
  j["valuations"][0]["values"][0] = "-1";
  EXPECT_THROW(InstanceFromJson(j), ParseError);
}

TEST(IoTest, OutcomesRoundTripAndRejectOverlap) {
  const Instance inst = GenBucket({2, 2, 2});
  const std::vector<Money> bids = {R(2), R(1)};
  const Outcome out = RunSingleBid(bids, inst);
  EXPECT_EQ(OutcomeFromJson(OutcomeToJson(out)), out);

  Json j = OutcomeToJson(out);
  j["allocation"][1].push_back(j["allocation"][0][0]);
  EXPECT_THROW(OutcomeFromJson(j), ParseError);
  j = OutcomeToJson(out);
  j["payments"][0] = "-1";
  EXPECT_THROW(OutcomeFromJson(j), ParseError);
  j = OutcomeToJson(out);
  j["payments"].erase(1);
  EXPECT_THROW(OutcomeFromJson(j), ParseError);
}

TEST(IoTest, SpecsRoundTrip) {
  const SinglePriceSpec sp{{1, 0}, {Threshold{R(1), false},
                                    Threshold{R(1, 2), true}}};
  EXPECT_EQ(SinglePriceSpecFromJson(SinglePriceSpecToJson(sp)), sp);
  EXPECT_EQ(SinglePriceSpecLabel(sp), "order=1 0;prices=1+ 1/2");
  const PostedPriceSpec pp{{0, 1}, {{R(1), R(2)}, {R(0), R(3, 2)}}};
  EXPECT_EQ(PostedPriceSpecFromJson(PostedPriceSpecToJson(pp)), pp);
  const std::vector<Money> bids = {R(9), R(0), R(1, 3)};
  EXPECT_EQ(BidsFromJson(BidsToJson(bids)), bids);

  Json bad = SinglePriceSpecToJson(sp);
  bad["order"] = Json::array({0, 0});
  EXPECT_THROW(SinglePriceSpecFromJson(bad), ParseError);
}

TEST(IoTest, FamiliesAndMenusRoundTrip) {
  const AllocationFamily f(3, 2, 2, {{0b011, 0b110}, {0b100, 0}});
  EXPECT_EQ(AllocationFamilyFromJson(AllocationFamilyToJson(f)), f);
  Json bad = AllocationFamilyToJson(f);
  bad["d"] = 1;  // the first member uses item 1 twice
  EXPECT_THROW(AllocationFamilyFromJson(bad), ParseError);

  Menu menu;
  menu.bidder = 1;
  menu.num_items = 3;
  menu.entries = {{0, R(0)}, {0b101, R(5, 4)}};
  EXPECT_EQ(MenuFromJson(MenuToJson(menu)), menu);
}

TEST(IoTest, PlayHistoryRoundTripsByteForByte) {
  const PlayHistory h = RunSwapRegret(testing::AsymmetricPennies(), 300, 4);
  const std::string text = DumpJson(PlayHistoryToJson(h));
  const PlayHistory back = PlayHistoryFromJson(Json::parse(text));
  EXPECT_EQ(back.actions, h.actions);
  EXPECT_EQ(back.utilities, h.utilities);
  EXPECT_EQ(back.audit[1].mixtures, h.audit[1].mixtures);
  EXPECT_EQ(back.internal_swap_regret, h.internal_swap_regret);
  EXPECT_EQ(DumpJson(PlayHistoryToJson(back)), text);
  EXPECT_EQ(SwapRegret(back, 0), SwapRegret(h, 0));

  Json bad = PlayHistoryToJson(h);
  bad["welfare"].erase(0);
  EXPECT_THROW(PlayHistoryFromJson(bad), ParseError);
}

TEST(IoTest, HistoryCsvShape) {
  const PlayHistory h = RunHedge(testing::MatchingPennies(), 5, 1);
  const std::string csv = PlayHistoryCsv(h);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "schema,round,a0,a1,welfare");
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(line.rfind(std::string(kHistoryCsvSchema) + ",", 0), 0u);
    ++rows;
  }
  EXPECT_EQ(rows, 5);
}

TEST(IoTest, FilesRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("mechlab_io_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "inst.json").string();
  const Instance inst = GenInterest01(8, 0.25, 3);
  WriteText(path, DumpJson(InstanceToJson(inst)));
  EXPECT_EQ(InstanceFromJson(ReadJsonFile(path)), inst);
  EXPECT_THROW(ReadJsonFile((dir / "missing.json").string()), ParseError);
  {
    std::ofstream out(dir / "broken.json");
    out << "{\"n\": ";
  }
  EXPECT_THROW(ReadJsonFile((dir / "broken.json").string()), ParseError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace mechlab
