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

#ifndef HETNET_ORCHESTRATOR_HPP_
#define HETNET_ORCHESTRATOR_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetnet/association.hpp"
#include "hetnet/icupa.hpp"
#include "hetnet/loadpower.hpp"
#include "hetnet/model.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {

struct IulpOptions {
  double xi = 1e-3;
  int t_max = 20;
  DgpOptions dgp;
  LdpcOptions ldpc;
  IcupaOptions icupa;

  void validate() const;  // throws Error(kConfig)
};

struct IterationCounters {
  int outer = 0;
  int dgp = 0;
  int ldpc = 0;
  int icupa = 0;
};

struct RunFlags {
  bool dgp_nonconvergence = false;
  bool ldpc_nonconvergence = false;
  bool icupa_nonconvergence = false;
  bool iulp_max_iter = false;
  bool monotonicity_violation = false;
  bool bound_violation = false;

  bool nonconvergence() const {
    return dgp_nonconvergence || ldpc_nonconvergence || icupa_nonconvergence || iulp_max_iter;
  }
  bool invariant_violation() const { return monotonicity_violation || bound_violation; }
};

struct RunReport {
  std::string algorithm;
  std::vector<double> utility_trace;  // V(0), V(1), ...
  double utility = 0.0;
  double upper_bound = 0.0;
  std::vector<double> rates;          // bit/s
  Association association;
  NetworkState state;
  std::vector<Tier> bs_tiers;
  std::array<int, kNumTiers> tier_counts{};
  IterationCounters iterations;
  RunFlags flags;
  std::string stop_reason;
  double wall_clock_s = 0.0;  // not serialized
};

inline constexpr double kMonotoneSlack = 1e-9;

const std::vector<std::string>& known_algorithms();
// Splits "a,b,c" and checks every name. Throws Error(kUnknownAlgorithm).
std::vector<std::string> parse_algorithm_list(std::string_view list);

RunReport iulp(const Scenario& scenario, const IulpOptions& options = {});
RunReport run_algorithm(const Scenario& scenario, std::string_view algo,
                        const IulpOptions& options = {});
// Same as calling run_algorithm for each name, sharing common prefixes.
std::vector<RunReport> run_algorithms(const Scenario& scenario,
                                      std::span<const std::string> algos,
                                      const IulpOptions& options = {});

// Right-continuous fraction of samples <= each grid point.
std::vector<double> empirical_cdf(std::span<const double> samples, std::span<const double> grid);
// Linear interpolation between order statistics at position p (n - 1).
double empirical_quantile(std::span<const double> samples, double p);
double rate_gain(std::span<const double> samples, std::span<const double> base, double p);

struct TierStats {
  std::array<double, kNumTiers> mean_users{};
  std::array<double, kNumTiers> mean_power_w{};
};
TierStats per_tier_stats(std::span<const RunReport> reports);

struct AlgorithmSummary {
  std::string algorithm;
  double mean_utility = 0.0;
  double std_utility = 0.0;
  std::vector<double> utilities;     // per seed
  std::vector<int> outer_iterations;  // per seed
  std::vector<double> pooled_rates;  // seed-major, user-minor
  std::vector<std::vector<double>> traces;  // per seed
  TierStats tiers;
  int nonconvergence_count = 0;
  int invariant_count = 0;
};

struct CampaignSummary {
  int realizations = 0;
  std::uint64_t base_seed = 0;
  std::string config_json;
  std::vector<AlgorithmSummary> algorithms;
  double wall_clock_s = 0.0;  // not serialized

  const AlgorithmSummary* find(std::string_view algo) const;
};

struct CampaignOptions {
  IulpOptions solver;
  int threads = 0;  // 0 picks the hardware concurrency
  std::function<void(int done, int total)> progress;
};

// seed_k = base_seed + k; all algorithms see the same scenario per seed.
CampaignSummary monte_carlo(const ScenarioConfig& config, std::span<const std::string> algos,
                            int n_realizations, std::uint64_t base_seed,
                            const CampaignOptions& options = {});

inline constexpr std::string_view kBaselineAlgorithm = "msinr-mp";

}  // namespace hetnet

#endif  // HETNET_ORCHESTRATOR_HPP_
