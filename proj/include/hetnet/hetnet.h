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

#ifndef HETNET_HETNET_H_
#define HETNET_HETNET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HETNET_API __declspec(dllexport)
#else
#define HETNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hetnet_status {
  HETNET_OK = 0,
  HETNET_ERR_CONFIG = 1,
  HETNET_ERR_PARSE = 2,
  HETNET_ERR_IO = 3,
  HETNET_ERR_NON_POSITIVE_RATE = 4,
  HETNET_ERR_NO_CANDIDATE = 5,
  HETNET_ERR_NON_CONVERGENCE = 6,
  HETNET_ERR_TOO_LARGE = 7,
  HETNET_ERR_BRACKET_FAILURE = 8,
  HETNET_ERR_DOMAIN = 9,
  HETNET_ERR_NO_ROOT = 10,
  HETNET_ERR_EMPTY_ACTIVE_SET = 11,
  HETNET_ERR_UNKNOWN_ALGORITHM = 12,
  HETNET_ERR_EMPTY_SAMPLES = 13,
  HETNET_ERR_DEGENERATE_QUANTILE = 14,
  HETNET_ERR_INVARIANT = 15,
  HETNET_ERR_INVALID_ARGUMENT = 16,
  HETNET_ERR_INTERNAL = 17
} hetnet_status;

/* Bits of hetnet_report_flags. */
enum {
  HETNET_FLAG_DGP_NONCONVERGENCE = 1u << 0,
  HETNET_FLAG_LDPC_NONCONVERGENCE = 1u << 1,
  HETNET_FLAG_ICUPA_NONCONVERGENCE = 1u << 2,
  HETNET_FLAG_IULP_MAX_ITER = 1u << 3,
  HETNET_FLAG_MONOTONICITY_VIOLATION = 1u << 4,
  HETNET_FLAG_BOUND_VIOLATION = 1u << 5
};

typedef struct hetnet_config hetnet_config;
typedef struct hetnet_scenario hetnet_scenario;
typedef struct hetnet_report hetnet_report;
typedef struct hetnet_campaign hetnet_campaign;

typedef struct hetnet_solver_options {
  double xi;       /* relative outer tolerance */
  int t_max;       /* outer iteration cap */
  double kkt_tol;  /* load/power KKT tolerance */
} hetnet_solver_options;

/* Message of the last failing call on this thread; never NULL. */
HETNET_API const char* hetnet_last_error(void);
HETNET_API const char* hetnet_status_name(hetnet_status status);
/* Comma separated algorithm ids. */
HETNET_API const char* hetnet_algorithms(void);
HETNET_API void hetnet_string_free(char* text);

HETNET_API void hetnet_solver_options_init(hetnet_solver_options* options);

HETNET_API hetnet_status hetnet_config_default(hetnet_config** out);
HETNET_API hetnet_status hetnet_config_load(const char* path, hetnet_config** out);
HETNET_API hetnet_status hetnet_config_set_seed(hetnet_config* config, uint64_t seed);
HETNET_API uint64_t hetnet_config_seed(const hetnet_config* config);
HETNET_API void hetnet_config_free(hetnet_config* config);

HETNET_API hetnet_status hetnet_scenario_generate(const hetnet_config* config,
                                                  hetnet_scenario** out);
HETNET_API hetnet_status hetnet_scenario_load(const char* path, hetnet_scenario** out);
HETNET_API hetnet_status hetnet_scenario_save(const hetnet_scenario* scenario, const char* path);
HETNET_API int hetnet_scenario_num_bs(const hetnet_scenario* scenario);
HETNET_API int hetnet_scenario_num_users(const hetnet_scenario* scenario);
HETNET_API void hetnet_scenario_free(hetnet_scenario* scenario);

/* options may be NULL for defaults. */
HETNET_API hetnet_status hetnet_run(const hetnet_scenario* scenario, const char* algorithm,
                                    const hetnet_solver_options* options, hetnet_report** out);
HETNET_API double hetnet_report_utility(const hetnet_report* report);
HETNET_API int hetnet_report_outer_iterations(const hetnet_report* report);
HETNET_API unsigned hetnet_report_flags(const hetnet_report* report);
HETNET_API double hetnet_report_wall_clock(const hetnet_report* report);
/* Caller releases *json with hetnet_string_free. */
HETNET_API hetnet_status hetnet_report_json(const hetnet_report* report, char** json);
HETNET_API hetnet_status hetnet_report_write(const hetnet_report* report, const char* dir);
HETNET_API void hetnet_report_free(hetnet_report* report);

typedef void (*hetnet_progress_fn)(int done, int total, void* user);

/* algorithms is a comma separated list; threads 0 uses every core. */
HETNET_API hetnet_status hetnet_campaign_run(const hetnet_config* config, const char* algorithms,
                                             int realizations, uint64_t base_seed,
                                             const hetnet_solver_options* options, int threads,
                                             hetnet_progress_fn progress, void* user,
                                             hetnet_campaign** out);
HETNET_API int hetnet_campaign_algorithm_count(const hetnet_campaign* campaign);
HETNET_API const char* hetnet_campaign_algorithm(const hetnet_campaign* campaign, int k);
HETNET_API double hetnet_campaign_mean_utility(const hetnet_campaign* campaign, int k);
HETNET_API double hetnet_campaign_std_utility(const hetnet_campaign* campaign, int k);
HETNET_API int hetnet_campaign_nonconvergence(const hetnet_campaign* campaign, int k);
HETNET_API int hetnet_campaign_invariant_violations(const hetnet_campaign* campaign, int k);
HETNET_API double hetnet_campaign_wall_clock(const hetnet_campaign* campaign);
HETNET_API hetnet_status hetnet_campaign_write(const hetnet_campaign* campaign, const char* dir);
HETNET_API void hetnet_campaign_free(hetnet_campaign* campaign);

/* Rebuilds CSV files from dir/summary.json. */
HETNET_API hetnet_status hetnet_emit(const char* dir);

typedef void (*hetnet_verify_fn)(const char* suite, int passed, const char* detail,
                                 double seconds, void* user);
/* Runs every oracle suite; *failures receives the failing count. */
HETNET_API hetnet_status hetnet_verify(hetnet_verify_fn callback, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif  // HETNET_HETNET_H_
