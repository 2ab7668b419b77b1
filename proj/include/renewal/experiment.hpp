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

#ifndef RENEWALKIT_EXPERIMENT_HPP_
#define RENEWALKIT_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "renewal/dist.hpp"

namespace renewal {

inline constexpr const char* kVersion = "0.1.0";

/// One pass/fail check a job evaluates; `criterion` names the acceptance
/// check (A1..A7) the gate implements.
struct Gate {
  std::string name;
  std::string criterion;
  double threshold = 0.0;
  double observed = 0.0;
  bool pass = false;
};

enum class JobKind { kRatioSim, kRenewalFn, kSolve, kDlCheck, kIdentities };

const char* job_name(JobKind kind);

/// Declarative description of one verification run.  Parsed from a JSON
/// document with per-job key allowlists (unknown keys are rejected); gates
/// are optional — a job only checks the gates its config carries.
struct ExperimentConfig {
  JobKind job = JobKind::kIdentities;
  std::string criterion;  // acceptance-check tag stamped on this job's gates

  // Monte Carlo jobs (ratio-sim, renewal-fn, dl-check).
  std::optional<InterArrivalLaw> law;
  double t = 0.0;
  std::vector<double> t_grid;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double delta = 1e-3;
  std::string reference = "auto";  // ratio-sim: auto | power | uniform
  std::optional<double> tail_x;    // ratio-sim: also report P(ratio > tail_x)

  // Solver jobs.
  std::string forcing = "b";  // "one" (renewal function) or "b" (ratio tail)
  double x = 0.5;
  double solve_T = 0.0;
  double solve_h = 0.0;
  bool compose_check = false;
  std::vector<double> report_t;  // grid times whose z values go in the summary

  // Quadrature grids (dl-check, identities).
  std::vector<double> alphas;
  std::vector<double> xs;

  // Gates; absent means "do not check".
  std::optional<double> ks_gate;
  std::optional<double> cycle_ks_gate;
  std::optional<double> erickson_gate;
  std::optional<double> limit_gate;
  std::optional<double> compose_gate;
  std::optional<double> residual_gate;
  std::optional<double> quad_gate;
  std::optional<double> product_gate;
  std::optional<double> beta_gate;

  // Artifact root; excluded from the config hash so a rerun elsewhere
  // produces identical artifact bytes.
  std::string out = "out";

  /// Parses and validates a config for the given job.  Throws
  /// std::invalid_argument on schema violations and out-of-range values.
  static ExperimentConfig from_json(JobKind job, const nlohmann::json& doc);

  /// Validates field ranges and cross-field rules (also called by from_json).
  void validate() const;

  /// Smoke-test scaling: divides n and every time value by 10 and loosens
  /// every gate by a factor of 3.
  void apply_quick();

  /// The effective config as canonical JSON (fixed key order, no out), the
  /// input to hash() and the "config" block of summaries.
  nlohmann::ordered_json canonical() const;

  /// FNV-1a hash of canonical(), as 16 hex digits; names the artifact dir.
  std::string hash() const;
};

struct JobResult {
  bool pass = false;
  std::vector<Gate> gates;
  nlohmann::ordered_json summary;
  std::filesystem::path dir;  // <out>/<job>-<hash> holding data.csv, summary.json
};

/// Executes the job: runs the simulation/solver/quadrature work, evaluates
/// gates, and writes <dir>/data.csv and <dir>/summary.json.  Deterministic:
/// identical configs produce byte-identical artifacts for any thread count.
JobResult run_job(const ExperimentConfig& config, unsigned threads);

}  // namespace renewal

#endif  // RENEWALKIT_EXPERIMENT_HPP_
