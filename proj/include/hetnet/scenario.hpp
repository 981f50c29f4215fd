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

#ifndef HETNET_SCENARIO_HPP_
#define HETNET_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

struct ScenarioConfig {
  int macro_count = 1;
  int pico_count = 2;
  int femto_count = 2;
  std::array<double, kNumTiers> tier_power_dbm{46.0, 38.0, 30.0};
  // Explicit BS coordinates, macros first, then picos, then femtos.
  std::optional<std::vector<Point>> bs_positions;
  double cell_radius_m = 100.0;
  int user_count = 50;
  int high_priority_count = 20;
  double priority_high = 2.0;
  double priority_low = 1.0;
  double shadow_std_db = 8.0;
  double noise_dbm = -104.0;
  int rb_count = 55;
  double rb_bandwidth_hz = 180e3;
  std::uint64_t rng_seed = 1;

  // Throws Error(kConfig).
  void validate() const;
  int num_bs() const { return macro_count + pico_count + femto_count; }
};

inline constexpr double kMinLinkDistanceM = 1.0;

// Distance is clamped to kMinLinkDistanceM.
double pathloss_db(Tier tier, double distance_m);
double dbm_to_watt(double x_dbm);

// BS coordinates used when the config gives none.
std::vector<Point> default_layout(const ScenarioConfig& config);

// Pure function of the config, seed included.
Scenario generate_scenario(const ScenarioConfig& config);

// Config documents. Unknown keys are rejected. Throws Error(kConfig).
ScenarioConfig parse_config_json(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string config_to_json(const ScenarioConfig& config);

// Scenario documents. Throws Error(kParse) with the offending field.
Scenario parse_scenario_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::string& path);
void save_scenario(const std::string& path, const Scenario& scenario);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hetnet

#endif  // HETNET_SCENARIO_HPP_
