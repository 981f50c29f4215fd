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

#include <cstring>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "hetnet/hetnet.h"

namespace {

TEST(CApi, RunRoundTrip) {
  hetnet_config* config = nullptr;
  ASSERT_EQ(hetnet_config_default(&config), HETNET_OK);
  ASSERT_EQ(hetnet_config_set_seed(config, 4), HETNET_OK);
  EXPECT_EQ(hetnet_config_seed(config), 4u);
  hetnet_scenario* scenario = nullptr;
  ASSERT_EQ(hetnet_scenario_generate(config, &scenario), HETNET_OK);
  EXPECT_EQ(hetnet_scenario_num_bs(scenario), 5);
  EXPECT_EQ(hetnet_scenario_num_users(scenario), 50);

  hetnet_solver_options options;
  hetnet_solver_options_init(&options);
  EXPECT_DOUBLE_EQ(options.xi, 1e-3);
  EXPECT_EQ(options.t_max, 20);

  hetnet_report* report = nullptr;
  ASSERT_EQ(hetnet_run(scenario, "iulp", &options, &report), HETNET_OK);
  EXPECT_GT(hetnet_report_utility(report), 0.0);
  EXPECT_GE(hetnet_report_outer_iterations(report), 1);
  EXPECT_EQ(hetnet_report_flags(report), 0u);
  char* json = nullptr;
  ASSERT_EQ(hetnet_report_json(report, &json), HETNET_OK);
  EXPECT_NE(std::strstr(json, "\"utility_trace\""), nullptr);
  hetnet_string_free(json);

  hetnet_report_free(report);
  hetnet_scenario_free(scenario);
  hetnet_config_free(config);
}

TEST(CApi, ErrorsCarryStatusAndMessage) {
  hetnet_config* config = nullptr;
  EXPECT_EQ(hetnet_config_load("/nonexistent.json", &config), HETNET_ERR_CONFIG);
  EXPECT_NE(std::string(hetnet_last_error()).find("ConfigError"), std::string::npos);
  EXPECT_STREQ(hetnet_status_name(HETNET_ERR_CONFIG), "ConfigError");

  ASSERT_EQ(hetnet_config_default(&config), HETNET_OK);
  hetnet_scenario* scenario = nullptr;
  ASSERT_EQ(hetnet_scenario_generate(config, &scenario), HETNET_OK);
  hetnet_report* report = nullptr;
  EXPECT_EQ(hetnet_run(scenario, "ddo", nullptr, &report), HETNET_ERR_UNKNOWN_ALGORITHM);
  EXPECT_EQ(report, nullptr);
  hetnet_solver_options bad;
  hetnet_solver_options_init(&bad);
  bad.xi = -1.0;
  EXPECT_EQ(hetnet_run(scenario, "iulp", &bad, &report), HETNET_ERR_CONFIG);
  EXPECT_EQ(hetnet_run(nullptr, "iulp", nullptr, &report), HETNET_ERR_INVALID_ARGUMENT);
  hetnet_scenario_free(scenario);
  hetnet_config_free(config);

  EXPECT_EQ(hetnet_scenario_load("/nonexistent.json", &scenario), HETNET_ERR_IO);
}

TEST(CApi, CampaignWriteAndEmit) {
  hetnet_config* config = nullptr;
  ASSERT_EQ(hetnet_config_default(&config), HETNET_OK);
  hetnet_campaign* campaign = nullptr;
  int calls = 0;
  auto progress = [](int, int, void* user) { ++*static_cast<int*>(user); };
  ASSERT_EQ(hetnet_campaign_run(config, "msinr-mp,iulp", 2, 1, nullptr, 1, progress, &calls,
                                &campaign),
            HETNET_OK);
  EXPECT_EQ(calls, 2);
  ASSERT_EQ(hetnet_campaign_algorithm_count(campaign), 2);
  EXPECT_STREQ(hetnet_campaign_algorithm(campaign, 1), "iulp");
  EXPECT_GT(hetnet_campaign_mean_utility(campaign, 1), hetnet_campaign_mean_utility(campaign, 0));
  EXPECT_EQ(hetnet_campaign_invariant_violations(campaign, 1), 0);

  const auto dir = std::filesystem::temp_directory_path() / "hetnet_capi_campaign";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(hetnet_campaign_write(campaign, dir.c_str()), HETNET_OK);
  std::filesystem::remove(dir / "cdf_iulp.csv");
  ASSERT_EQ(hetnet_emit(dir.c_str()), HETNET_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "cdf_iulp.csv"));
  std::filesystem::remove_all(dir);
  EXPECT_EQ(hetnet_emit(dir.c_str()), HETNET_ERR_IO);

  EXPECT_EQ(hetnet_campaign_run(config, "iulp", 0, 1, nullptr, 1, nullptr, nullptr, &campaign),
            HETNET_ERR_CONFIG);
  hetnet_campaign_free(campaign);
  hetnet_config_free(config);
}

TEST(CApi, AlgorithmList) {
  EXPECT_STREQ(hetnet_algorithms(), "msinr-mp,dgp-mp,iulp,msinr-mp+icupa,iulp+icupa");
}

}  // namespace
