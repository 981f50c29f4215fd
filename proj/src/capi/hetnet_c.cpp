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

#include "hetnet/hetnet.h"

#include <chrono>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "hetnet/error.hpp"
#include "hetnet/oracles.hpp"
#include "hetnet/orchestrator.hpp"
#include "hetnet/report_io.hpp"
#include "hetnet/scenario.hpp"

struct hetnet_config {
  hetnet::ScenarioConfig value;
};
struct hetnet_scenario {
  hetnet::Scenario value;
};
struct hetnet_report {
  hetnet::RunReport value;
};
struct hetnet_campaign {
  hetnet::CampaignSummary value;
};

namespace {

thread_local std::string last_error;

hetnet_status status_of(hetnet::ErrorCode code) {
  return static_cast<hetnet_status>(static_cast<int>(code) + 1);
}

hetnet_status fail(hetnet_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
hetnet_status guarded(F&& body) {
  try {
    body();
    return HETNET_OK;
  } catch (const hetnet::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HETNET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HETNET_ERR_INTERNAL, e.what());
  }
}

hetnet::IulpOptions solver_options(const hetnet_solver_options* o) {
  hetnet::IulpOptions out;
  if (o != nullptr) {
    out.xi = o->xi;
    out.t_max = o->t_max;
    out.ldpc.kkt_tol = o->kkt_tol;
  }
  out.validate();
  return out;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define HETNET_REQUIRE(cond)                                              \
  do {                                                                    \
    if (!(cond)) return fail(HETNET_ERR_INVALID_ARGUMENT, "null argument"); \
  } while (0)

}  // namespace

extern "C" {

const char* hetnet_last_error(void) { return last_error.c_str(); }

const char* hetnet_status_name(hetnet_status status) {
  switch (status) {
    case HETNET_OK: return "Ok";
    case HETNET_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case HETNET_ERR_INTERNAL: return "InternalError";
    default: break;
  }
  if (status > HETNET_OK && status <= HETNET_ERR_INVARIANT) {
    return hetnet::error_code_name(static_cast<hetnet::ErrorCode>(status - 1)).data();
  }
  return "Unknown";
}

const char* hetnet_algorithms(void) {
  static const std::string list = [] {
    std::string s;
    for (const auto& a : hetnet::known_algorithms()) s += (s.empty() ? "" : ",") + a;
    return s;
  }();
  return list.c_str();
}

void hetnet_string_free(char* text) { delete[] text; }

void hetnet_solver_options_init(hetnet_solver_options* options) {
  if (options == nullptr) return;
  const hetnet::IulpOptions d;
  options->xi = d.xi;
  options->t_max = d.t_max;
  options->kkt_tol = d.ldpc.kkt_tol;
}

hetnet_status hetnet_config_default(hetnet_config** out) {
  HETNET_REQUIRE(out);
  return guarded([&] { *out = new hetnet_config{}; });
}

hetnet_status hetnet_config_load(const char* path, hetnet_config** out) {
  HETNET_REQUIRE(path && out);
  return guarded([&] { *out = new hetnet_config{hetnet::load_config(path)}; });
}

hetnet_status hetnet_config_set_seed(hetnet_config* config, uint64_t seed) {
  HETNET_REQUIRE(config);
  config->value.rng_seed = seed;
  return HETNET_OK;
}

uint64_t hetnet_config_seed(const hetnet_config* config) {
  return config != nullptr ? config->value.rng_seed : 0;
}

void hetnet_config_free(hetnet_config* config) { delete config; }

hetnet_status hetnet_scenario_generate(const hetnet_config* config, hetnet_scenario** out) {
  HETNET_REQUIRE(config && out);
  return guarded([&] { *out = new hetnet_scenario{hetnet::generate_scenario(config->value)}; });
}

hetnet_status hetnet_scenario_load(const char* path, hetnet_scenario** out) {
  HETNET_REQUIRE(path && out);
  return guarded([&] { *out = new hetnet_scenario{hetnet::load_scenario(path)}; });
}

hetnet_status hetnet_scenario_save(const hetnet_scenario* scenario, const char* path) {
  HETNET_REQUIRE(scenario && path);
  return guarded([&] { hetnet::save_scenario(path, scenario->value); });
}

int hetnet_scenario_num_bs(const hetnet_scenario* scenario) {
  return scenario != nullptr ? scenario->value.num_bs : 0;
}

int hetnet_scenario_num_users(const hetnet_scenario* scenario) {
  return scenario != nullptr ? scenario->value.num_users : 0;
}

void hetnet_scenario_free(hetnet_scenario* scenario) { delete scenario; }

hetnet_status hetnet_run(const hetnet_scenario* scenario, const char* algorithm,
                         const hetnet_solver_options* options, hetnet_report** out) {
  HETNET_REQUIRE(scenario && algorithm && out);
  return guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    auto report = hetnet::run_algorithm(scenario->value, algorithm, solver_options(options));
    report.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *out = new hetnet_report{std::move(report)};
  });
}

double hetnet_report_utility(const hetnet_report* report) {
  return report != nullptr ? report->value.utility : 0.0;
}

int hetnet_report_outer_iterations(const hetnet_report* report) {
  return report != nullptr ? report->value.iterations.outer : 0;
}

unsigned hetnet_report_flags(const hetnet_report* report) {
  if (report == nullptr) return 0;
  const auto& f = report->value.flags;
  unsigned bits = 0;
  if (f.dgp_nonconvergence) bits |= HETNET_FLAG_DGP_NONCONVERGENCE;
  if (f.ldpc_nonconvergence) bits |= HETNET_FLAG_LDPC_NONCONVERGENCE;
  if (f.icupa_nonconvergence) bits |= HETNET_FLAG_ICUPA_NONCONVERGENCE;
  if (f.iulp_max_iter) bits |= HETNET_FLAG_IULP_MAX_ITER;
  if (f.monotonicity_violation) bits |= HETNET_FLAG_MONOTONICITY_VIOLATION;
  if (f.bound_violation) bits |= HETNET_FLAG_BOUND_VIOLATION;
  return bits;
}

double hetnet_report_wall_clock(const hetnet_report* report) {
  return report != nullptr ? report->value.wall_clock_s : 0.0;
}

hetnet_status hetnet_report_json(const hetnet_report* report, char** json) {
  HETNET_REQUIRE(report && json);
  return guarded([&] { *json = copy_string(hetnet::report_to_json(report->value)); });
}

hetnet_status hetnet_report_write(const hetnet_report* report, const char* dir) {
  HETNET_REQUIRE(report && dir);
  return guarded([&] { hetnet::write_run(report->value, dir); });
}

void hetnet_report_free(hetnet_report* report) { delete report; }

hetnet_status hetnet_campaign_run(const hetnet_config* config, const char* algorithms,
                                  int realizations, uint64_t base_seed,
                                  const hetnet_solver_options* options, int threads,
                                  hetnet_progress_fn progress, void* user,
                                  hetnet_campaign** out) {
  HETNET_REQUIRE(config && algorithms && out);
  return guarded([&] {
    if (realizations < 1) throw hetnet::Error(hetnet::ErrorCode::kConfig, "realizations must be >= 1");
    const auto algos = hetnet::parse_algorithm_list(algorithms);
    hetnet::CampaignOptions opts;
    opts.solver = solver_options(options);
    opts.threads = threads;
    if (progress != nullptr) opts.progress = [=](int done, int total) { progress(done, total, user); };
    *out = new hetnet_campaign{
        hetnet::monte_carlo(config->value, algos, realizations, base_seed, opts)};
  });
}

int hetnet_campaign_algorithm_count(const hetnet_campaign* campaign) {
  return campaign != nullptr ? static_cast<int>(campaign->value.algorithms.size()) : 0;
}

namespace {
const hetnet::AlgorithmSummary* algo_at(const hetnet_campaign* c, int k) {
  if (c == nullptr || k < 0 || k >= static_cast<int>(c->value.algorithms.size())) return nullptr;
  return &c->value.algorithms[k];
}
}  // namespace

const char* hetnet_campaign_algorithm(const hetnet_campaign* campaign, int k) {
  const auto* a = algo_at(campaign, k);
  return a != nullptr ? a->algorithm.c_str() : "";
}

double hetnet_campaign_mean_utility(const hetnet_campaign* campaign, int k) {
  const auto* a = algo_at(campaign, k);
  return a != nullptr ? a->mean_utility : 0.0;
}

double hetnet_campaign_std_utility(const hetnet_campaign* campaign, int k) {
  const auto* a = algo_at(campaign, k);
  return a != nullptr ? a->std_utility : 0.0;
}

int hetnet_campaign_nonconvergence(const hetnet_campaign* campaign, int k) {
  const auto* a = algo_at(campaign, k);
  return a != nullptr ? a->nonconvergence_count : 0;
}

int hetnet_campaign_invariant_violations(const hetnet_campaign* campaign, int k) {
  const auto* a = algo_at(campaign, k);
  return a != nullptr ? a->invariant_count : 0;
}

double hetnet_campaign_wall_clock(const hetnet_campaign* campaign) {
  return campaign != nullptr ? campaign->value.wall_clock_s : 0.0;
}

hetnet_status hetnet_campaign_write(const hetnet_campaign* campaign, const char* dir) {
  HETNET_REQUIRE(campaign && dir);
  return guarded([&] { hetnet::write_campaign(campaign->value, dir); });
}

void hetnet_campaign_free(hetnet_campaign* campaign) { delete campaign; }

hetnet_status hetnet_emit(const char* dir) {
  HETNET_REQUIRE(dir);
  return guarded([&] { hetnet::emit_csv(dir); });
}

hetnet_status hetnet_verify(hetnet_verify_fn callback, void* user, int* failures) {
  return guarded([&] {
    int failed = 0;
    hetnet::oracles::run_all_suites([&](const hetnet::oracles::SuiteOutcome& o) {
      if (!o.passed) ++failed;
      if (callback != nullptr) callback(o.name.c_str(), o.passed ? 1 : 0, o.detail.c_str(), o.seconds, user);
    });
    if (failures != nullptr) *failures = failed;
  });
}

}  // extern "C"
