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
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hetnet/error.hpp"
#include "hetnet/oracles.hpp"
#include "hetnet/orchestrator.hpp"

namespace hetnet {
namespace {

TEST(Iulp, SingleBsConvergesImmediately) {
  const Scenario s = generate_scenario(testing::small_config(1, 0, 0, 6, 2));
  const auto r = iulp(s);
  EXPECT_EQ(r.iterations.outer, 1);
  EXPECT_NEAR(r.state.power[0], s.max_power[0], 1e-9 * s.max_power[0]);
  EXPECT_FALSE(r.flags.nonconvergence());
}

TEST(Iulp, MonotoneAndBoundedTrace) {
  for (int t = 0; t < 30; ++t) {
    const Scenario s = generate_scenario(testing::small_config(1, 1, 1, 10, 900 + t));
    const auto r = iulp(s);
    const double bound = utility_upper_bound(s);
    for (size_t k = 1; k < r.utility_trace.size(); ++k)
      EXPECT_GE(r.utility_trace[k], r.utility_trace[k - 1] - kMonotoneSlack) << "seed " << t;
    for (double v : r.utility_trace) EXPECT_LE(v, bound);
    EXPECT_FALSE(r.flags.invariant_violation());
    EXPECT_LE(r.iterations.outer, 20);
    EXPECT_NEAR(r.utility, r.utility_trace.back(), 1e-12);
  }
}

TEST(RunAlgorithm, SingleBsAlgorithmsAgree) {
  const Scenario s = generate_scenario(testing::small_config(1, 0, 0, 5, 6));
  const auto a = run_algorithm(s, "msinr-mp");
  const auto b = run_algorithm(s, "dgp-mp");
  EXPECT_EQ(a.association, b.association);
  EXPECT_NEAR(a.utility, b.utility, 1e-12);
}

TEST(RunAlgorithm, PipelineDominance) {
  for (int t = 0; t < 5; ++t) {
    ScenarioConfig c;
    c.rng_seed = 300 + t;
    const Scenario s = generate_scenario(c);
    const auto reports = run_algorithms(s, known_algorithms());
    ASSERT_EQ(reports.size(), 5u);
    const double msinr = reports[0].utility, dgp = reports[1].utility, iu = reports[2].utility;
    const double msinr_icupa = reports[3].utility, iu_icupa = reports[4].utility;
    EXPECT_GE(dgp, msinr - 1e-9);
    EXPECT_GE(iu, dgp - 1e-9);
    EXPECT_GE(msinr_icupa, msinr - 1e-9);
    EXPECT_GE(iu_icupa, iu - 1e-9);
    for (const auto& r : reports) {
      int total = 0;
      for (int n : r.tier_counts) total += n;
      EXPECT_EQ(total, s.num_users);
      EXPECT_NEAR(r.utility, utility_of_rates(r.rates, s.priorities), 1e-9);
    }
  }
}

TEST(RunAlgorithm, SharedPrefixesMatchIndividualRuns) {
  ScenarioConfig c;
  c.rng_seed = 17;
  const Scenario s = generate_scenario(c);
  const auto all = run_algorithms(s, known_algorithms());
  for (size_t k = 0; k < all.size(); ++k) {
    const auto one = run_algorithm(s, known_algorithms()[k]);
    EXPECT_EQ(one.utility, all[k].utility) << one.algorithm;
    EXPECT_EQ(one.association, all[k].association);
  }
}

TEST(RunAlgorithm, UnknownAlgorithm) {
  const Scenario s = generate_scenario(testing::small_config(1, 0, 0, 2, 1));
  try {
    run_algorithm(s, "ibapc");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownAlgorithm);
  }
  EXPECT_THROW(parse_algorithm_list("iulp,nope"), Error);
  EXPECT_EQ(parse_algorithm_list("iulp,dgp-mp"), (std::vector<std::string>{"iulp", "dgp-mp"}));
}

TEST(IulpOptions, Validation) {
  IulpOptions o;
  o.xi = 0.0;
  EXPECT_THROW(o.validate(), Error);
  o = IulpOptions{};
  o.t_max = 0;
  EXPECT_THROW(o.validate(), Error);
}

TEST(Cdf, Examples) {
  const std::vector<double> s{1.0, 2.0, 3.0};
  const auto f = empirical_cdf(s, std::vector<double>{0.5, 2.0, 2.5, 3.0, 10.0});
  EXPECT_DOUBLE_EQ(f[0], 0.0);
  EXPECT_DOUBLE_EQ(f[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(f[2], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(f[3], 1.0);
  EXPECT_DOUBLE_EQ(f[4], 1.0);
  try {
    empirical_cdf(std::vector<double>{}, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySamples);
  }
}

TEST(Cdf, MatchesSortingImplementation) {
  std::mt19937_64 rng(33);
  std::exponential_distribution<double> e(1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> samples(1 + t * 13), grid(100);
    for (double& v : samples) v = std::round(e(rng) * 20) / 20;
    for (double& v : grid) v = std::round(e(rng) * 20) / 20;
    EXPECT_EQ(empirical_cdf(samples, grid), oracles::sorted_cdf(samples, grid));
  }
}

TEST(Quantile, LinearInterpolation) {
  const std::vector<double> s{4.0, 1.0, 3.0, 2.0};
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.1), 1.3);
}

TEST(RateGain, Examples) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(1.0, 5.0);
  std::vector<double> base(200), twice(200);
  for (size_t k = 0; k < base.size(); ++k) {
    base[k] = u(rng);
    twice[k] = 2.0 * base[k];
  }
  for (double p : {0.05, 0.1, 0.5, 0.9}) {
    EXPECT_DOUBLE_EQ(rate_gain(base, base, p), 1.0);
    EXPECT_NEAR(rate_gain(twice, base, p), 2.0, 1e-12);
  }
  try {
    rate_gain(base, std::vector<double>{0.0, 0.0, 1.0}, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateQuantile);
  }
}

TEST(TierStats, SingleMacro) {
  const Scenario s = generate_scenario(testing::small_config(1, 0, 0, 4, 3));
  const std::vector<RunReport> reports{run_algorithm(s, "msinr-mp")};
  const auto t = per_tier_stats(reports);
  EXPECT_DOUBLE_EQ(t.mean_users[0], 4.0);
  EXPECT_DOUBLE_EQ(t.mean_users[1], 0.0);
  EXPECT_NEAR(t.mean_power_w[0], s.max_power[0], 1e-9);
}

TEST(MonteCarlo, SingleRealizationMatchesRun) {
  ScenarioConfig c = testing::small_config(1, 1, 1, 8, 40);
  const std::vector<std::string> algos{"msinr-mp", "iulp"};
  const auto summary = monte_carlo(c, algos, 1, 40);
  const Scenario s = generate_scenario(c);
  for (size_t k = 0; k < algos.size(); ++k) {
    const auto r = run_algorithm(s, algos[k]);
    EXPECT_DOUBLE_EQ(summary.algorithms[k].mean_utility, r.utility);
    EXPECT_DOUBLE_EQ(summary.algorithms[k].std_utility, 0.0);
    EXPECT_EQ(summary.algorithms[k].pooled_rates, r.rates);
  }
}

TEST(MonteCarlo, PrefixStableAndThreadIndependent) {
  ScenarioConfig c = testing::small_config(1, 1, 1, 8, 0);
  const std::vector<std::string> algos{"dgp-mp", "iulp+icupa"};
  CampaignOptions one, two;
  one.threads = 1;
  two.threads = 2;
  const auto small = monte_carlo(c, algos, 3, 60, one);
  const auto large = monte_carlo(c, algos, 6, 60, two);
  for (size_t k = 0; k < algos.size(); ++k) {
    for (int t = 0; t < 3; ++t)
      EXPECT_EQ(small.algorithms[k].utilities[t], large.algorithms[k].utilities[t]);
  }
  const auto again = monte_carlo(c, algos, 6, 60, one);
  EXPECT_EQ(again.algorithms[1].pooled_rates, large.algorithms[1].pooled_rates);
  EXPECT_NE(small.find("dgp-mp"), nullptr);
  EXPECT_EQ(small.find("iulp"), nullptr);
}

}  // namespace
}  // namespace hetnet
