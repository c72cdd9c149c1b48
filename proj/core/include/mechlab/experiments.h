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

#ifndef MECHLAB_EXPERIMENTS_H_
#define MECHLAB_EXPERIMENTS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mechlab/errors.h"

namespace mechlab {

// A malformed experiment request (unknown name, bad parameter).
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { kJson, kCsv };

struct ExperimentConfig {
  std::string name;
  // Experiment-specific parameters, e.g. {"b", "2"}; lists are
  // comma-separated.
  std::map<std::string, std::string> params;
  std::uint64_t seed = 1;
  std::string out;  // empty or "-": stdout
  OutputFormat format = OutputFormat::kJson;
  int threads = 1;
  std::uint64_t budget = 50'000'000;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAssertion = 2;
inline constexpr int kExitResource = 3;

struct ExperimentResult {
  int exit_code = kExitOk;
  std::string output;   // what was (or would be) written to config.out
  std::string summary;  // one human-readable line
  bool partial = false;
};

// Registered experiment names.
std::vector<std::string> ExperimentNames();

// Runs a named experiment and writes its output. Exit codes: 0 success,
// 2 an asserted identity or bound failed, 1 usage error (nothing written),
// 3 enumeration budget exceeded (partial results written, flagged).
ExperimentResult RunExperiment(const ExperimentConfig& config);

}  // namespace mechlab

#endif  // MECHLAB_EXPERIMENTS_H_
