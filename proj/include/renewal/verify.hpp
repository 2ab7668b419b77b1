// Copyright 2026 The renewalkit Authors
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

#ifndef RENEWALKIT_VERIFY_HPP_
#define RENEWALKIT_VERIFY_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "renewal/experiment.hpp"

namespace renewal {

inline constexpr std::uint64_t kDefaultMasterSeed = 42424242;
inline constexpr int kNumCriteria = 7;

/// Options shared by the acceptance checks A1..A7.
struct VerifyOptions {
  std::filesystem::path out = "out";
  std::uint64_t master_seed = kDefaultMasterSeed;
  bool quick = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Outcome of one acceptance check: the gates of every job it ran plus any
/// cross-job gates it evaluated itself.
struct CriterionResult {
  std::string id;     // "A1".."A7"
  std::string title;
  bool pass = false;
  std::vector<Gate> gates;
  std::vector<std::string> artifact_dirs;  // names under options.out
};

/// Runs acceptance check `index` in 1..7 with its canned full-scale
/// configuration (scaled down when options.quick).  Each underlying job
/// writes its artifacts under options.out; job seeds derive from
/// options.master_seed with fixed offsets, so a rerun reproduces every byte.
/// Throws std::invalid_argument for an index outside 1..7.
CriterionResult run_criterion(int index, const VerifyOptions& options);

/// Runs all seven checks in order and writes <out>/verdict.json recording
/// every gate; byte-identity of artifacts across reruns and worker counts
/// (the eighth check) is established externally by comparing two runs.
std::vector<CriterionResult> run_all_criteria(const VerifyOptions& options);

/// The document run_all_criteria writes as verdict.json.
nlohmann::ordered_json verdict_json(const std::vector<CriterionResult>& results,
                                    const VerifyOptions& options);

}  // namespace renewal

#endif  // RENEWALKIT_VERIFY_HPP_
