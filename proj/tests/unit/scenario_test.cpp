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

#include <cmath>
#include <filesystem>
#include <numeric>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hetnet/error.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {
namespace {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

TEST(Pathloss, Examples) {
  EXPECT_NEAR(pathloss_db(Tier::kMacro, 100.0), 114.0, 1e-12);
  EXPECT_NEAR(pathloss_db(Tier::kPico, 100.0), 114.0, 1e-12);
  EXPECT_NEAR(pathloss_db(Tier::kFemto, 100.0), 97.0, 1e-12);
  EXPECT_NEAR(pathloss_db(Tier::kMacro, 1.0), 34.0, 1e-12);
  EXPECT_NEAR(pathloss_db(Tier::kMacro, 0.01), 34.0, 1e-12);
}

TEST(DbmToWatt, Examples) {
  EXPECT_NEAR(dbm_to_watt(30.0), 1.0, 1e-15);
  EXPECT_NEAR(dbm_to_watt(46.0), 39.81, 0.01);
  EXPECT_NEAR(dbm_to_watt(-104.0), 3.981e-14, 1e-17);
}

TEST(Generate, DeterministicPerSeed) {
  ScenarioConfig c;
  c.rng_seed = 77;
  EXPECT_EQ(generate_scenario(c), generate_scenario(c));
  ScenarioConfig d = c;
  d.rng_seed = 78;
  EXPECT_NE(generate_scenario(c).gains, generate_scenario(d).gains);
}

TEST(Generate, DefaultShape) {
  const Scenario s = generate_scenario(ScenarioConfig{});
  EXPECT_EQ(s.num_bs, 5);
  EXPECT_EQ(s.num_users, 50);
  EXPECT_EQ(s.tiers, (std::vector<Tier>{Tier::kMacro, Tier::kPico, Tier::kPico, Tier::kFemto,
                                        Tier::kFemto}));
  EXPECT_EQ(std::count(s.priorities.begin(), s.priorities.end(), 2.0), 20);
  EXPECT_EQ(std::count(s.priorities.begin(), s.priorities.end(), 1.0), 30);
  EXPECT_NEAR(s.noise, dbm_to_watt(-104.0), 1e-25);
  EXPECT_EQ(s.rb_count, 55);
  EXPECT_DOUBLE_EQ(s.rb_bandwidth_hz, 180e3);
  for (const auto& p : s.placement.user_xy) EXPECT_LE(std::hypot(p.x, p.y), 100.0 + 1e-9);
}

TEST(Generate, NoShadowingGivesPathloss) {
  ScenarioConfig c;
  c.shadow_std_db = 0.0;
  const Scenario s = generate_scenario(c);
  for (int i = 0; i < s.num_bs; ++i) {
    for (int j = 0; j < s.num_users; ++j) {
      const double d = distance(s.placement.bs_xy[i], s.placement.user_xy[j]);
      const double expected = std::pow(10.0, -pathloss_db(s.tiers[i], d) / 10.0);
      EXPECT_NEAR(s.gain(i, j), expected, 1e-12 * expected);
    }
  }
}

TEST(Generate, UserAt100mFromMacro) {
  std::string text = R"({"K": 1, "B_hz": 1, "noise_dbm": -104,
    "bs": [{"tier": "macro", "power_dbm": 46, "xy": [0, 0]}],
    "users": [{"xy": [60, 80], "priority": 1}]})";
  const Scenario s = parse_scenario_json(text);
  EXPECT_NEAR(s.gain(0, 0), std::pow(10.0, -11.4), 1e-24);
}

TEST(Generate, ShadowingMeanMatchesLognormal) {
  ScenarioConfig c = testing::small_config(1, 1, 1, 100000, 9);
  c.high_priority_count = 0;
  const Scenario s = generate_scenario(c);
  double sum = 0.0;
  for (int i = 0; i < s.num_bs; ++i) {
    for (int j = 0; j < s.num_users; ++j) {
      const double d = distance(s.placement.bs_xy[i], s.placement.user_xy[j]);
      sum += s.gain(i, j) / std::pow(10.0, -pathloss_db(s.tiers[i], d) / 10.0);
    }
  }
  const double mean = sum / (static_cast<double>(s.num_bs) * s.num_users);
  const double sigma = 8.0 * std::log(10.0) / 10.0;
  EXPECT_NEAR(mean / std::exp(sigma * sigma / 2.0), 1.0, 0.02);
}

TEST(Generate, RejectsInconsistentCounts) {
  ScenarioConfig c;
  c.high_priority_count = 60;
  EXPECT_THROW(generate_scenario(c), Error);
  c = ScenarioConfig{};
  c.cell_radius_m = 0.0;
  EXPECT_THROW(generate_scenario(c), Error);
  c = ScenarioConfig{};
  c.bs_positions = std::vector<Point>{{0, 0}};
  EXPECT_THROW(generate_scenario(c), Error);
}

TEST(Config, ParsesAndRoundTrips) {
  const auto c = parse_config_json(R"({"macro_count": 1, "pico_count": 1, "femto_count": 0,
      "tier_power_dbm": {"pico": 35}, "user_count": 10, "high_priority_count": 3,
      "priority_values": {"high": 4, "low": 1}, "rng_seed": 12})");
  EXPECT_EQ(c.pico_count, 1);
  EXPECT_EQ(c.femto_count, 0);
  EXPECT_DOUBLE_EQ(c.tier_power_dbm[1], 35.0);
  EXPECT_DOUBLE_EQ(c.priority_high, 4.0);
  EXPECT_EQ(c.rng_seed, 12u);
  const auto again = parse_config_json(config_to_json(c));
  EXPECT_EQ(generate_scenario(c), generate_scenario(again));
}

TEST(Config, RejectsUnknownKeys) {
  try {
    parse_config_json(R"({"users": 5})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(ScenarioFile, SaveLoadRoundTrip) {
  const Scenario s = generate_scenario(testing::small_config(1, 1, 1, 7, 4));
  const auto path = std::filesystem::temp_directory_path() / "hetnet_roundtrip.json";
  save_scenario(path.string(), s);
  EXPECT_EQ(load_scenario(path.string()), s);
  std::filesystem::remove(path);
}

TEST(ScenarioFile, MissingPriorityNamesField) {
  const std::string text = R"({"K": 55, "B_hz": 180000, "noise_dbm": -104,
    "bs": [{"tier": "macro", "power_dbm": 46}],
    "users": [{"priority": 1}, {}],
    "gains": [[1e-9, 1e-9]]})";
  try {
    parse_scenario_json(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("priorities"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("users[1]"), std::string::npos);
  }
}

TEST(ScenarioFile, HandWrittenTwoByTwo) {
  const std::string text = R"({"K": 55, "B_hz": 180000, "noise_dbm": -104,
    "bs": [{"tier": "macro", "power_dbm": 46}, {"tier": "femto", "power_dbm": 30}],
    "users": [{"priority": 2}, {"priority": 1}],
    "gains": [[1e-9, 2e-10], [3e-11, 4e-8]]})";
  const Scenario s = parse_scenario_json(text);
  EXPECT_EQ(s.num_bs, 2);
  EXPECT_EQ(s.num_users, 2);
  EXPECT_DOUBLE_EQ(s.gain(0, 1), 2e-10);
  EXPECT_DOUBLE_EQ(s.gain(1, 0), 3e-11);
  EXPECT_EQ(s.tiers[1], Tier::kFemto);
  EXPECT_DOUBLE_EQ(s.priorities[0], 2.0);
}

TEST(ScenarioFile, MalformedJson) {
  try {
    parse_scenario_json("{");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), Error);
}

}  // namespace
}  // namespace hetnet
