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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "renewal/experiment.hpp"

using nlohmann::json;
using renewal::ExperimentConfig;
using renewal::JobKind;
using renewal::JobResult;
using renewal::run_job;

namespace {

namespace fs = std::filesystem;

json ratio_doc() {
  return json::parse(R"json({
    "job": "ratio-sim",
    "law": "pareto(0.5,1)",
    "t": 100.0,
    "n": 50,
    "master_seed": 7,
    "ks_gate": 0.5
  })json");
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

fs::path scratch_dir(const char* leaf) {
  const fs::path dir = fs::temp_directory_path() / "renewalkit-unit" / leaf;
  fs::remove_all(dir);
  return dir;
}

bool throws_with(const std::function<void()>& body, const char* needle) {
  try {
    body();
  } catch (const std::exception& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("from_json populates a ratio-sim config") {
  const auto c = ExperimentConfig::from_json(JobKind::kRatioSim, ratio_doc());
  CHECK(c.job == JobKind::kRatioSim);
  REQUIRE(c.law.has_value());
  CHECK(c.law->to_string() == "pareto(0.5,1)");
  CHECK(c.t == 100.0);
  CHECK(c.n == 50);
  CHECK(c.seed == 7);
  REQUIRE(c.ks_gate.has_value());
  CHECK(*c.ks_gate == 0.5);
  CHECK_FALSE(c.cycle_ks_gate.has_value());
  CHECK(c.reference == "auto");
  CHECK(c.out == "out");
}

TEST_CASE("from_json rejects malformed configs") {
  CHECK(throws_with(
      [] {
        auto doc = ratio_doc();
        doc["typo_key"] = 1;
        ExperimentConfig::from_json(JobKind::kRatioSim, doc);
      },
      "unknown config key"));
  CHECK(throws_with(
      [] {
        auto doc = ratio_doc();
        doc["t"] = "soon";
        ExperimentConfig::from_json(JobKind::kRatioSim, doc);
      },
      "must be a number"));
  CHECK(throws_with(
      [] {
        auto doc = ratio_doc();
        doc.erase("law");
        ExperimentConfig::from_json(JobKind::kRatioSim, doc);
      },
      "missing required key"));
  CHECK(throws_with(
      [] {
        auto doc = ratio_doc();
        doc["master_seed"] = -4;
        ExperimentConfig::from_json(JobKind::kRatioSim, doc);
      },
      "non-negative integer"));
  CHECK(throws_with(
      [] {
        auto doc = ratio_doc();
        doc["delta"] = 1.5;
        ExperimentConfig::from_json(JobKind::kRatioSim, doc);
      },
      "delta"));
  CHECK(throws_with(
      [] {
        auto doc = ratio_doc();
        doc["job"] = "solve";
        ExperimentConfig::from_json(JobKind::kRatioSim, doc);
      },
      "does not match"));
  // The config document must be an object, not a scalar or array.
  CHECK(throws_with(
      [] { ExperimentConfig::from_json(JobKind::kRatioSim, json::parse("[1]")); },
      "must be a JSON object"));
}

TEST_CASE("infinite-mean references require a tail index in (0,1)") {
  // alpha = 1.5 has a finite mean: "auto" falls back to the uniform limit,
  // but asking for the power limit explicitly is an error.
  auto doc = ratio_doc();
  doc["law"] = "pareto(1.5,1)";
  CHECK_NOTHROW(ExperimentConfig::from_json(JobKind::kRatioSim, doc));
  doc["reference"] = "power";
  CHECK(throws_with(
      [&] { ExperimentConfig::from_json(JobKind::kRatioSim, doc); },
      "alpha outside (0,1)"));
  // alpha = 1 has an infinite mean but sits outside (0,1): even "auto" has
  // no valid reference.
  auto edge = ratio_doc();
  edge["law"] = "pareto(1,1)";
  CHECK(throws_with(
      [&] { ExperimentConfig::from_json(JobKind::kRatioSim, edge); },
      "alpha outside (0,1)"));
  // An exponential law under "auto" compares against the uniform limit.
  auto exp_doc = ratio_doc();
  exp_doc["law"] = "exp(1)";
  CHECK_NOTHROW(ExperimentConfig::from_json(JobKind::kRatioSim, exp_doc));
}

TEST_CASE("from_json validates job-specific rules") {
  CHECK(throws_with(
      [] {
        ExperimentConfig::from_json(
            JobKind::kRenewalFn,
            json::parse(
                R"json({"law":"pareto(0.5,1)","t_grid":[10,5],"n":100})json"));
      },
      "strictly increasing"));
  CHECK(throws_with(
      [] {
        ExperimentConfig::from_json(
            JobKind::kSolve,
            json::parse(
                R"json({"law":"exp(1)","forcing":"ramp","T":10,"h":0.1})json"));
      },
      "forcing"));
  CHECK(throws_with(
      [] {
        ExperimentConfig::from_json(
            JobKind::kSolve,
            json::parse(
                R"json({"law":"exp(1)","forcing":"b","x":1.0,"T":10,"h":0.1})json"));
      },
      "must lie in (0,1)"));
  CHECK(throws_with(
      [] {
        ExperimentConfig::from_json(
            JobKind::kSolve,
            json::parse(R"json({"law":"exp(1)","forcing":"b","T":10,"h":0.1,
                            "erickson_gate":0.1})json"));
      },
      "erickson_gate needs forcing"));
  CHECK(throws_with(
      [] {
        ExperimentConfig::from_json(
            JobKind::kSolve,
            json::parse(R"json({"law":"exp(1)","forcing":"one","T":10,"h":0.1,
                            "compose_gate":0.1})json"));
      },
      "compose_gate needs compose_check"));
  CHECK(throws_with(
      [] {
        ExperimentConfig::from_json(JobKind::kIdentities,
                                    json::parse(R"json({"alphas":[]})json"));
      },
      "non-empty"));
  CHECK(throws_with(
      [] {
        ExperimentConfig::from_json(JobKind::kIdentities,
                                    json::parse(R"json({"alphas":[0.5, 1.0]})json"));
      },
      "alpha outside (0,1)"));
  CHECK(throws_with(
      [] {
        ExperimentConfig::from_json(
            JobKind::kDlCheck,
            json::parse(R"json({"alphas":[0.5],"xs":[0.5],"ks_gate":0.1})json"));
      },
      "needs a law"));
  CHECK(throws_with(
      [] {
        ExperimentConfig::from_json(
            JobKind::kDlCheck, json::parse(R"json({"alphas":[0.5],"xs":[1.0]})json"));
      },
      "must lie in (0,1)"));
}

TEST_CASE("hash covers the experiment but not the artifact root") {
  const auto a = ExperimentConfig::from_json(JobKind::kRatioSim, ratio_doc());
  auto doc_b = ratio_doc();
  doc_b["out"] = "elsewhere";
  const auto b = ExperimentConfig::from_json(JobKind::kRatioSim, doc_b);
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  CHECK_FALSE(a.canonical().contains("out"));

  auto doc_c = ratio_doc();
  doc_c["master_seed"] = 8;
  const auto c = ExperimentConfig::from_json(JobKind::kRatioSim, doc_c);
  CHECK(a.hash() != c.hash());

  auto doc_d = ratio_doc();
  doc_d["n"] = 51;
  const auto d = ExperimentConfig::from_json(JobKind::kRatioSim, doc_d);
  CHECK(a.hash() != d.hash());
}

TEST_CASE("apply_quick scales sizes down and gates up") {
  auto doc = ratio_doc();
  doc["t"] = 1000.0;
  auto c = ExperimentConfig::from_json(JobKind::kRatioSim, doc);
  c.apply_quick();
  CHECK(c.t == 100.0);
  CHECK(c.n == 5);
  CHECK(*c.ks_gate == doctest::Approx(1.5).epsilon(1e-15));
  c.apply_quick();  // floors: n never drops below 1
  CHECK(c.n == 1);

  auto s = ExperimentConfig::from_json(
      JobKind::kSolve,
      json::parse(R"json({"law":"exp(1)","forcing":"one","T":50,"h":0.1,
                      "report_t":[10,50],"residual_gate":1e-12})json"));
  s.apply_quick();
  CHECK(s.solve_T == 5.0);
  CHECK(s.report_t[0] == 1.0);
  CHECK(s.report_t[1] == 5.0);
  CHECK(*s.residual_gate == doctest::Approx(3e-12).epsilon(1e-15));

  auto r = ExperimentConfig::from_json(
      JobKind::kRenewalFn,
      json::parse(R"json({"law":"pareto(0.5,1)","t_grid":[100],"n":15})json"));
  r.apply_quick();
  CHECK(r.t_grid[0] == 10.0);
  CHECK(r.n == 2);  // renewal-fn needs at least two paths for its se
}

TEST_CASE("run_job identities writes deterministic artifacts") {
  const fs::path root = scratch_dir("identities");
  auto doc = json::parse(
      R"json({"alphas":[0.25,0.5],"product_gate":1e-12,"beta_gate":1e-10,
          "criterion":"A4"})json");
  doc["out"] = root.string();
  const auto c = ExperimentConfig::from_json(JobKind::kIdentities, doc);

  const JobResult first = run_job(c, 1);
  CHECK(first.pass);
  REQUIRE(first.gates.size() == 2);
  CHECK(first.gates[0].pass);
  CHECK(first.gates[0].criterion == "A4");
  CHECK(first.dir == root / ("identities-" + c.hash()));
  REQUIRE(fs::exists(first.dir / "data.csv"));
  REQUIRE(fs::exists(first.dir / "summary.json"));

  const std::string csv = slurp(first.dir / "data.csv");
  CHECK(csv.rfind("# renewalkit 0.1.0\n", 0) == 0);
  const std::string summary_bytes = slurp(first.dir / "summary.json");
  const json summary = json::parse(summary_bytes);
  CHECK(summary.at("version") == "0.1.0");
  CHECK(summary.at("job") == "identities");
  CHECK(summary.at("pass") == true);
  CHECK(summary.at("config") == json(c.canonical()));
  CHECK(summary.at("gates").size() == 2);

  // A rerun reproduces both artifacts byte for byte.
  const JobResult second = run_job(c, 1);
  CHECK(second.dir == first.dir);
  CHECK(slurp(second.dir / "data.csv") == csv);
  CHECK(slurp(second.dir / "summary.json") == summary_bytes);
}

TEST_CASE("run_job ratio-sim artifacts are thread-count independent") {
  const fs::path root = scratch_dir("ratio");
  auto doc = ratio_doc();
  doc["t"] = 20.0;
  doc["n"] = 40;
  doc["tail_x"] = 0.5;
  doc["ks_gate"] = 1.0;  // sanity-only: any distance passes
  doc["out"] = root.string();
  const auto c = ExperimentConfig::from_json(JobKind::kRatioSim, doc);

  const JobResult serial = run_job(c, 1);
  const std::string csv1 = slurp(serial.dir / "data.csv");
  const std::string sum1 = slurp(serial.dir / "summary.json");
  const JobResult threaded = run_job(c, 3);
  CHECK(slurp(threaded.dir / "data.csv") == csv1);
  CHECK(slurp(threaded.dir / "summary.json") == sum1);

  // version line + column header + one row per replication
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 42);
  const json summary = json::parse(sum1);
  CHECK(summary.at("ks").is_number());
  CHECK(summary.at("dkw_epsilon").is_number());
  CHECK(summary.at("tail_x") == 0.5);
  CHECK(summary.at("tail_prob").is_number());
  CHECK(summary.at("tail_prob_se").is_number());
  CHECK(summary.at("reference").is_string());
}

TEST_CASE("run_job solve reports requested grid values and residual") {
  const fs::path root = scratch_dir("solve");
  auto doc = json::parse(
      R"json({"law":"exp(1)","forcing":"one","T":2.0,"h":0.5,
          "report_t":[1.0,2.0],"residual_gate":1e-9})json");
  doc["out"] = root.string();
  const auto c = ExperimentConfig::from_json(JobKind::kSolve, doc);
  const JobResult r = run_job(c, 1);
  CHECK(r.pass);
  REQUIRE(r.gates.size() == 1);
  CHECK(r.gates[0].name == "residual");
  const auto& s = r.summary;
  REQUIRE(s.contains("z_report"));
  REQUIRE(s.at("z_report").size() == 2);
  // The last reported point is the horizon value.
  CHECK(s.at("z_report")[1] == s.at("z_horizon"));
  CHECK(s.at("z_report")[0].get<double>() > 1.0);
}

TEST_CASE("run_job surfaces failing gates") {
  const fs::path root = scratch_dir("fail");
  auto doc = ratio_doc();
  doc["t"] = 20.0;
  doc["n"] = 30;
  doc["ks_gate"] = 1e-9;  // unattainably tight
  doc["out"] = root.string();
  const auto c = ExperimentConfig::from_json(JobKind::kRatioSim, doc);
  const JobResult r = run_job(c, 1);
  CHECK_FALSE(r.pass);
  REQUIRE(r.gates.size() == 1);
  CHECK_FALSE(r.gates[0].pass);
  CHECK(r.gates[0].observed > r.gates[0].threshold);
  // The artifact still records the failure.
  const json summary = json::parse(slurp(r.dir / "summary.json"));
  CHECK(summary.at("pass") == false);
}
