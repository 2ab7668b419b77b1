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

// renewalkit command-line front end.
//
// One job per invocation; exit 0 when every gate passes, 2 on a gate
// failure, 1 on usage/config errors.  Without --config each subcommand runs
// its flagship configuration (the same parameters verify-all uses).

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "renewal/experiment.hpp"
#include "renewal/verify.hpp"

namespace {

using renewal::ExperimentConfig;
using renewal::Gate;
using renewal::JobKind;
using renewal::JobResult;

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print_gate(const Gate& g, const char* indent) {
  std::cout << indent << (g.pass ? "[PASS] " : "[FAIL] ") << g.name
            << ": observed " << fmt(g.observed)
            << (g.pass ? " <= threshold " : " > threshold ") << fmt(g.threshold);
  if (!g.criterion.empty()) std::cout << " (" << g.criterion << ")";
  std::cout << "\n";
}

// The flagship run for each job — identical to the configuration verify-all
// uses for the matching acceptance check.
ExperimentConfig default_config(JobKind kind) {
  ExperimentConfig c;
  c.job = kind;
  switch (kind) {
    case JobKind::kRatioSim:
      c.criterion = "A1";
      c.law = renewal::InterArrivalLaw::pareto(0.5, 1.0);
      c.t = 1e6;
      c.n = 100000;
      c.seed = renewal::kDefaultMasterSeed + 102;
      c.ks_gate = 0.02;
      break;
    case JobKind::kRenewalFn:
      c.criterion = "A3";
      c.law = renewal::InterArrivalLaw::pareto(0.5, 1.0);
      c.t_grid = {1e2, 1e3, 1e4, 1e5, 1e6};
      c.n = 10000;
      c.seed = renewal::kDefaultMasterSeed + 301;
      c.erickson_gate = 0.1;
      break;
    case JobKind::kSolve:
      c.criterion = "A5";
      c.law = renewal::InterArrivalLaw::pareto(0.5, 1.0);
      c.forcing = "b";
      c.x = 0.5;
      c.solve_T = 1e4;
      c.solve_h = 0.05;
      c.limit_gate = 0.01;
      c.residual_gate = 1e-12;
      break;
    case JobKind::kDlCheck:
      c.criterion = "A7";
      c.alphas = {0.3, 0.5, 0.7};
      for (int i = 1; i <= 9; ++i) c.xs.push_back(i / 10.0);
      c.quad_gate = 1e-4;
      c.law = renewal::InterArrivalLaw::pareto(0.5, 1.0);
      c.t = 1e6;
      c.n = 100000;
      c.seed = renewal::kDefaultMasterSeed + 701;
      c.ks_gate = 0.02;
      break;
    case JobKind::kIdentities:
      c.criterion = "A4";
      for (int i = 1; i <= 19; ++i) c.alphas.push_back(i / 20.0);
      c.product_gate = 1e-12;
      c.beta_gate = 1e-10;
      break;
  }
  return c;
}

struct JobCli {
  JobKind kind = JobKind::kIdentities;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  bool quick = false;
  unsigned threads = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

int run_job_command(const JobCli& cli) {
  try {
    ExperimentConfig cfg;
    if (!cli.config_path.empty()) {
      std::ifstream is(cli.config_path);
      if (!is) {
        std::cerr << "error: cannot open config " << cli.config_path << "\n";
        return 1;
      }
      cfg = ExperimentConfig::from_json(cli.kind, nlohmann::json::parse(is));
    } else {
      cfg = default_config(cli.kind);
    }
    if (cli.seed_opt->count() > 0) cfg.seed = cli.seed;
    if (cli.out_opt->count() > 0) cfg.out = cli.out;
    if (cli.quick) cfg.apply_quick();

    const JobResult res = renewal::run_job(cfg, cli.threads);
    for (const Gate& g : res.gates) print_gate(g, "");
    std::cout << "artifacts: " << res.dir.string() << "\n";
    return res.pass ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

struct VerifyCli {
  int criterion = 0;  // 0 = all
  std::uint64_t seed = renewal::kDefaultMasterSeed;
  std::string out = "out";
  bool quick = false;
  unsigned threads = 0;
};

int run_verify_command(const VerifyCli& cli) {
  try {
    renewal::VerifyOptions options;
    options.out = cli.out;
    options.master_seed = cli.seed;
    options.quick = cli.quick;
    options.threads = cli.threads;

    std::vector<renewal::CriterionResult> results;
    if (cli.criterion != 0) {
      results.push_back(renewal::run_criterion(cli.criterion, options));
    } else {
      results = renewal::run_all_criteria(options);
    }

    bool all = true;
    for (const renewal::CriterionResult& r : results) {
      all = all && r.pass;
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title
                << "\n";
      for (const Gate& g : r.gates) print_gate(g, "  ");
    }
    if (cli.criterion == 0)
      std::cout << "verdict: " << (options.out / "verdict.json").string()
                << "\n";
    return all ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"renewalkit: renewal-process simulation and limit-law verification"};
  app.set_version_flag("--version", std::string("renewalkit ") + renewal::kVersion);
  app.require_subcommand(1);

  const std::pair<JobKind, const char*> kJobs[] = {
      {JobKind::kRatioSim, "age/cycle ratio Monte Carlo vs its limit law"},
      {JobKind::kRenewalFn, "Monte Carlo renewal-function estimates on a time grid"},
      {JobKind::kSolve, "renewal-equation solver with limit/residual/composition gates"},
      {JobKind::kDlCheck, "Dynkin-Lamperti cross-derivation grid and simulated age law"},
      {JobKind::kIdentities, "Erickson-constant and Beta-integral identity table"},
  };

  int exit_code = 0;
  std::vector<std::unique_ptr<JobCli>> job_clis;
  for (const auto& [kind, description] : kJobs) {
    CLI::App* sub = app.add_subcommand(renewal::job_name(kind), description);
    auto cli = std::make_unique<JobCli>();
    cli->kind = kind;
    sub->add_option("--config", cli->config_path,
                    "JSON config file (default: the flagship configuration)");
    cli->seed_opt = sub->add_option("--seed", cli->seed, "override master_seed");
    cli->out_opt = sub->add_option("--out", cli->out, "override the output root");
    sub->add_flag("--quick", cli->quick,
                  "divide n and time scales by 10, loosen gates 3x");
    sub->add_option("--threads", cli->threads, "worker threads (0 = hardware)");
    JobCli* raw = cli.get();
    sub->callback([raw, &exit_code] { exit_code = run_job_command(*raw); });
    job_clis.push_back(std::move(cli));
  }

  VerifyCli verify_cli;
  CLI::App* verify = app.add_subcommand(
      "verify-all", "run acceptance checks A1..A7 and write verdict.json");
  verify->add_option("--criterion", verify_cli.criterion,
                     "run a single check 1..7 instead of all")
      ->check(CLI::Range(1, 7));
  verify->add_option("--seed", verify_cli.seed, "master seed for all jobs");
  verify->add_option("--out", verify_cli.out, "output root directory");
  verify->add_flag("--quick", verify_cli.quick,
                   "divide n and time scales by 10, loosen gates 3x");
  verify->add_option("--threads", verify_cli.threads,
                     "worker threads (0 = hardware)");
  verify->callback(
      [&verify_cli, &exit_code] { exit_code = run_verify_command(verify_cli); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage errors are exit 1 regardless of CLI11's own codes
  }
  return exit_code;
}
