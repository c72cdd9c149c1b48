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

#include "support/fixtures.h"

#include <algorithm>
#include <memory>

#include "mechlab/random.h"

namespace mechlab::testing {

std::vector<RewardFixture> AdversarialFixtures(int count, int num_actions,
                                               double range,
                                               std::uint64_t seed) {
  std::vector<RewardFixture> out;
  for (int f = 0; f < count; ++f) {
    const std::uint64_t s = DeriveSeed(seed, streams::kFixture, f);
    const int k = num_actions;
    switch (f % 4) {
      case 0: {
        auto rng = std::make_shared<Rng>(s);
        out.push_back({"iid", [rng, k, range](int, std::span<const double>) {
                         std::vector<double> r(k);
                         for (double& x : r) x = range * rng->UniformDouble();
                         return r;
                       }});
        break;
      }
      case 1: {
        const int period = 1 + static_cast<int>(Rng(s).Uniform(50));
        out.push_back({"rotating", [k, range, period](int t,
                                                      std::span<const double>) {
                         std::vector<double> r(k, 0.0);
                         r[(t / period) % k] = range;
                         return r;
                       }});
        break;
      }
      case 2:
        out.push_back({"adaptive", [k, range](int, std::span<const double> p) {
                         std::vector<double> r(k, 0.0);
                         r[std::min_element(p.begin(), p.end()) - p.begin()] =
                             range;
                         return r;
                       }});
        break;
      default: {
        const double bias = 0.1 + 0.4 * Rng(s).UniformDouble();
        out.push_back({"switch", [k, range, bias](int t,
                                                  std::span<const double>) {
                         std::vector<double> r(k, range * (0.5 - bias));
                         r[t % 2 == 0 ? 0 : k - 1] = range * 0.5;
                         r[t < 5000 ? 0 : 1] = range * (0.5 + bias);
                         return r;
                       }});
        break;
      }
    }
  }
  return out;
}

namespace {

TabularGame TwoByTwo(const double (&u0)[2][2], const double (&u1)[2][2]) {
  std::vector<std::vector<double>> utilities;
  std::vector<double> welfare;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      utilities.push_back({u0[a][b], u1[a][b]});
      welfare.push_back(u0[a][b] + u1[a][b]);
    }
  }
  return TabularGame({2, 2}, utilities, welfare, 0.0, 2.0);
}

}  // namespace

TabularGame MatchingPennies() {
  const double u0[2][2] = {{1, 0}, {0, 1}};
  const double u1[2][2] = {{0, 1}, {1, 0}};
  return TwoByTwo(u0, u1);
}

TabularGame AsymmetricPennies() {
  const double u0[2][2] = {{2, 0}, {0, 1}};
  const double u1[2][2] = {{0, 1}, {1, 0}};
  return TwoByTwo(u0, u1);
}

TabularGame DominanceGame() {
  return TabularGame::FromFunction(
      {3, 3},
      [](std::span<const int> a, std::span<double> u) {
        u[0] = a[0] == 2 ? 1.0 : 0.1 * a[1];
        u[1] = a[1] == 2 ? 1.0 : 0.1 * a[0];
        return u[0] + u[1];
      },
      0.0, 1.0);
}

Outcome RunFirstPriceBundle(const Instance& inst) {
  Outcome out = EmptyOutcome(inst);
  ItemSet remaining = ItemSet::Full(inst.num_items());
  for (int i = 0; i < inst.num_bidders(); ++i) {
    const Valuation& v = inst.valuation(i);
    std::vector<int> wanted;
    for (int j : remaining.Items()) {
      if (v.ItemValue(j).sign() > 0) wanted.push_back(j);
    }
    const ItemSet take(inst.num_items(), wanted);
    out.allocation[i] = take;
    out.payments[i] = v.Value(take);
    out.welfare += v.Value(take);
    remaining -= take;
  }
  return out;
}

}  // namespace mechlab::testing
