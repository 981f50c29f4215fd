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

#ifndef HETNET_REPORT_IO_HPP_
#define HETNET_REPORT_IO_HPP_

#include <span>
#include <string>
#include <vector>

#include "hetnet/orchestrator.hpp"

namespace hetnet {

// Canonical JSON; wall-clock times are left out so equal inputs give equal bytes.
std::string report_to_json(const RunReport& report);
std::string summary_to_json(const CampaignSummary& summary);
std::string timing_to_json(const CampaignSummary& summary);
// Throws Error(kParse).
CampaignSummary summary_from_json(const std::string& text);

struct CsvFile {
  std::string name;
  std::string text;
};

inline constexpr int kCdfGridPoints = 200;

// Log-spaced grid spanning all positive samples.
std::vector<double> log_grid(std::span<const double> samples, int points);

// utilities.csv    algorithm,mean_utility,std_utility,nonconvergence,invariant_violations
// per_seed.csv     seed,<algo>...
// cdf_<algo>.csv   rate_bps,fraction
// gains_<algo>.csv p,gain          (vs msinr-mp, when present)
// tiers.csv        algorithm,tier,mean_users,mean_power_w
// convergence.csv  algorithm,t,mean_utility,mean_diff_vs_baseline
std::vector<CsvFile> campaign_csv(const CampaignSummary& summary);

// report.json, rates.csv (user,serving_bs,tier,rate_bps), trace.csv (t,utility)
std::vector<CsvFile> run_files(const RunReport& report);

// Creates dir if needed. summary.json, timing.json and the CSV set.
void write_campaign(const CampaignSummary& summary, const std::string& dir);
void write_run(const RunReport& report, const std::string& dir);
// Rebuilds the CSV set from dir/summary.json.
void emit_csv(const std::string& dir);

std::string csv_file_stem(std::string_view algorithm);

}  // namespace hetnet

#endif  // HETNET_REPORT_IO_HPP_
