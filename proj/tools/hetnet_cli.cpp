// Copyright 2026 The HetNet Utility Authors
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

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hetnet/hetnet.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitInvariant = 4;

struct ConfigDeleter {
  void operator()(hetnet_config* p) const { hetnet_config_free(p); }
};
struct ScenarioDeleter {
  void operator()(hetnet_scenario* p) const { hetnet_scenario_free(p); }
};
struct ReportDeleter {
  void operator()(hetnet_report* p) const { hetnet_report_free(p); }
};
struct CampaignDeleter {
  void operator()(hetnet_campaign* p) const { hetnet_campaign_free(p); }
};
using ConfigPtr = std::unique_ptr<hetnet_config, ConfigDeleter>;
using ScenarioPtr = std::unique_ptr<hetnet_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<hetnet_report, ReportDeleter>;
using CampaignPtr = std::unique_ptr<hetnet_campaign, CampaignDeleter>;

struct Failure {
  hetnet_status status;
};

void check(hetnet_status status) {
  if (status != HETNET_OK) throw Failure{status};
}

int exit_code_for(hetnet_status status) {
  switch (status) {
    case HETNET_ERR_CONFIG:
    case HETNET_ERR_PARSE:
    case HETNET_ERR_IO:
    case HETNET_ERR_UNKNOWN_ALGORITHM:
    case HETNET_ERR_TOO_LARGE:
    case HETNET_ERR_INVALID_ARGUMENT:
      return kExitConfig;
    case HETNET_ERR_NON_CONVERGENCE:
      return kExitNonConvergence;
    case HETNET_ERR_INVARIANT:
      return kExitInvariant;
    default:
      return kExitError;
  }
}

struct Flags {
  std::string config;
  std::string scenario;
  std::string algo;
  int n = 20;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 0;
  bool quiet = false;
  hetnet_solver_options solver{};
};

ConfigPtr load_config(const Flags& f) {
  hetnet_config* raw = nullptr;
  check(f.config.empty() ? hetnet_config_default(&raw) : hetnet_config_load(f.config.c_str(), &raw));
  ConfigPtr config(raw);
  if (f.seed) check(hetnet_config_set_seed(config.get(), *f.seed));
  return config;
}

int run_command(const Flags& f) {
  hetnet_scenario* raw = nullptr;
  if (!f.scenario.empty()) {
    check(hetnet_scenario_load(f.scenario.c_str(), &raw));
  } else {
    check(hetnet_scenario_generate(load_config(f).get(), &raw));
  }
  ScenarioPtr scenario(raw);
  const std::string algo = f.algo.empty() ? "iulp" : f.algo;
  hetnet_report* rep = nullptr;
  check(hetnet_run(scenario.get(), algo.c_str(), &f.solver, &rep));
  ReportPtr report(rep);
  if (!f.out.empty()) check(hetnet_report_write(report.get(), f.out.c_str()));
  const unsigned flags = hetnet_report_flags(report.get());
  std::printf("%s utility %.6f outer %d flags 0x%02x time %.3fs\n", algo.c_str(),
              hetnet_report_utility(report.get()), hetnet_report_outer_iterations(report.get()),
              flags, hetnet_report_wall_clock(report.get()));
  if (flags & (HETNET_FLAG_MONOTONICITY_VIOLATION | HETNET_FLAG_BOUND_VIOLATION))
    return kExitInvariant;
  if (flags != 0) return kExitNonConvergence;
  return kExitOk;
}

void print_progress(int done, int total, void*) {
  std::fprintf(stderr, "\r%d/%d", done, total);
  if (done == total) std::fprintf(stderr, "\n");
}

int campaign_command(const Flags& f) {
  ConfigPtr config = load_config(f);
  const std::string algos = f.algo.empty() ? hetnet_algorithms() : f.algo;
  hetnet_campaign* raw = nullptr;
  check(hetnet_campaign_run(config.get(), algos.c_str(), f.n, hetnet_config_seed(config.get()),
                            &f.solver, f.threads, f.quiet ? nullptr : print_progress, nullptr,
                            &raw));
  CampaignPtr campaign(raw);
  check(hetnet_campaign_write(campaign.get(), f.out.c_str()));
  int nonconv = 0, invariant = 0;
  std::printf("%-16s %12s %10s %8s %8s\n", "algorithm", "mean", "std", "nonconv", "invariant");
  for (int k = 0; k < hetnet_campaign_algorithm_count(campaign.get()); ++k) {
    const int nc = hetnet_campaign_nonconvergence(campaign.get(), k);
    const int iv = hetnet_campaign_invariant_violations(campaign.get(), k);
    nonconv += nc;
    invariant += iv;
    std::printf("%-16s %12.4f %10.4f %8d %8d\n", hetnet_campaign_algorithm(campaign.get(), k),
                hetnet_campaign_mean_utility(campaign.get(), k),
                hetnet_campaign_std_utility(campaign.get(), k), nc, iv);
  }
  std::printf("wall clock %.2fs\n", hetnet_campaign_wall_clock(campaign.get()));
  if (invariant > 0) return kExitInvariant;
  if (nonconv > 0) return kExitNonConvergence;
  return kExitOk;
}

void print_suite(const char* suite, int passed, const char* detail, double seconds, void*) {
  std::printf("%-12s %s %8.2fs  %s\n", suite, passed ? "PASS" : "FAIL", seconds, detail);
  std::fflush(stdout);
}

int verify_command() {
  int failures = 0;
  check(hetnet_verify(print_suite, nullptr, &failures));
  return failures > 0 ? kExitInvariant : kExitOk;
}

int emit_command(const Flags& f) {
  check(hetnet_emit(f.out.c_str()));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Flags f;
  hetnet_solver_options_init(&f.solver);

  CLI::App app{"Utility-maximizing association, load and power control for HetNets"};
  app.require_subcommand(1);
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--xi", f.solver.xi, "relative outer tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--tmax", f.solver.t_max, "outer iteration cap")->check(CLI::PositiveNumber);
    cmd->add_option("--kkt-tol", f.solver.kkt_tol, "load/power KKT tolerance")
        ->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "solve one scenario with one algorithm");
  auto* src = run->add_option_group("source");
  src->add_option("--config", f.config, "generator config (JSON)");
  src->add_option("--scenario", f.scenario, "explicit scenario (JSON)");
  src->require_option(0, 1);
  run->add_option("--algo", f.algo, "algorithm id (default iulp)");
  run->add_option("--seed", f.seed, "overrides the config seed");
  run->add_option("--out", f.out, "directory for report.json, rates.csv, trace.csv");
  add_solver(run);

  auto* campaign = app.add_subcommand("campaign", "Monte-Carlo campaign over seeds");
  campaign->add_option("--config", f.config, "generator config (JSON)");
  campaign->add_option("--algo", f.algo, "comma separated algorithm ids (default all)");
  campaign->add_option("--n", f.n, "realizations")->check(CLI::PositiveNumber);
  campaign->add_option("--seed", f.seed, "base seed (default config seed)");
  campaign->add_option("--out", f.out, "output directory")->required();
  campaign->add_option("--threads", f.threads, "worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber);
  campaign->add_flag("--quiet", f.quiet, "no progress on stderr");
  add_solver(campaign);

  auto* verify = app.add_subcommand("verify", "run every oracle suite");
  auto* emit = app.add_subcommand("emit", "rebuild CSV files from summary.json");
  emit->add_option("--out", f.out, "campaign directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return run_command(f);
    if (*campaign) return campaign_command(f);
    if (*verify) return verify_command();
    if (*emit) return emit_command(f);
  } catch (const Failure& e) {
    std::fprintf(stderr, "error: %s\n", hetnet_last_error());
    return exit_code_for(e.status);
  }
  return kExitError;
}
