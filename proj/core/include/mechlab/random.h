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

#ifndef MECHLAB_RANDOM_H_
#define MECHLAB_RANDOM_H_

#include <cstdint>
#include <vector>

namespace mechlab {

// Sub-stream derivation. Every random quantity in the library is drawn from
// an Rng seeded with DeriveSeed(root_seed, stream, index), where `stream`
// names the consumer (one of the constants below) and `index` is the unit of
// work (item column, trial, round block). Units therefore draw the same
// numbers whether they are generated serially or in parallel.
std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t DeriveSeed(std::uint64_t root, std::uint64_t stream,
                         std::uint64_t index);

namespace streams {
inline constexpr std::uint64_t kPostedColumn = 1;
inline constexpr std::uint64_t kInterestColumn = 2;
inline constexpr std::uint64_t kPolarEntry = 3;
inline constexpr std::uint64_t kSecretaryArrival = 4;
inline constexpr std::uint64_t kLearner = 5;
inline constexpr std::uint64_t kTrial = 6;
inline constexpr std::uint64_t kFixture = 7;
inline constexpr std::uint64_t kAdditive = 8;
}  // namespace streams

// SplitMix64 sequence generator with platform-independent sampling helpers
// (the std distributions are implementation-defined). Construction is a
// single store, so per-column and per-trial generators are cheap.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t NextU64();
  // Uniform on [0, bound), unbiased. bound > 0.
  std::uint64_t Uniform(std::uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double UniformDouble();
  bool Bernoulli(double p) { return UniformDouble() < p; }
  // Uniformly random permutation of [0, n).
  std::vector<int> Permutation(int n);

 private:
  std::uint64_t state_;
};

}  // namespace mechlab

#endif  // MECHLAB_RANDOM_H_
