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
#include "hetnet/model.hpp"
#include "hetnet/oracles.hpp"

namespace hetnet {
namespace {

using testing::make_scenario;

TEST(Sinr, OneInterferer) {
  // BS 0 serves user 0; BS 1 interferes.
  const Scenario s = make_scenario(2, 1, {0.5, 0.5}, {2.0, 1.0}, 0.5, {1.0});
  const std::vector<double> load{1.0, 1.0};
  const std::vector<double> power{2.0, 1.0};
  EXPECT_DOUBLE_EQ(sinr(s, load, power, 0, 0), 1.0);
}

TEST(Sinr, IdleInterferersDropOut) {
  const Scenario s = make_scenario(3, 1, {1.0, 7.0, 9.0}, {1.0, 1.0, 1.0}, 1.0, {1.0});
  const std::vector<double> load{1.0, 0.0, 0.0};
  const std::vector<double> power{1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(sinr(s, load, power, 0, 0), 1.0);
}

TEST(Sinr, MatchesReverseOrderSum) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<double> gains(3 * 4);
  for (double& g : gains) g = u(rng) * 1e-9;
  const Scenario s = make_scenario(3, 4, gains, {u(rng), u(rng), u(rng)}, 1e-12, {1, 1, 1, 1});
  std::vector<double> load{u(rng) / 2, u(rng) / 2, u(rng) / 2};
  std::vector<double> power{u(rng), u(rng), u(rng)};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      double denom = s.noise;
      for (int k = 2; k >= 0; --k)
        if (k != i) denom += load[k] * power[k] * s.gain(k, j);
      EXPECT_NEAR(sinr(s, load, power, i, j), power[i] * s.gain(i, j) / denom,
                  1e-12 * power[i] * s.gain(i, j) / denom);
    }
  }
}

TEST(UserRate, Examples) {
  const Scenario s = make_scenario(1, 1, {1.0}, {1.0}, 1.0, {1.0});
  const Association x(1, {0});
  NetworkState st{{1.0}, {1.0}, {1.0}, {}};
  EXPECT_DOUBLE_EQ(user_rate(s, st, x, 0), 1.0);
  st.fractions = {0.0};
  EXPECT_DOUBLE_EQ(user_rate(s, st, x, 0), 0.0);

  const Scenario six = make_scenario(1, 1, {3.0}, {1.0}, 1.0, {1.0}, 55, 180e3);
  NetworkState st6{{1.0}, {1.0}, {0.1}, {}};
  EXPECT_NEAR(user_rate(six, st6, x, 0), 1.98e6, 1e-6);
}

TEST(NetworkUtility, Examples) {
  EXPECT_DOUBLE_EQ(utility_of_rates(std::vector<double>{2e6}, std::vector<double>{3.0}), 3.0);
  EXPECT_DOUBLE_EQ(
      utility_of_rates(std::vector<double>{1e6, 1e6}, std::vector<double>{1.0, 1.0}), 0.0);
}

TEST(NetworkUtility, ZeroRateThrows) {
  const Scenario s = make_scenario(1, 2, {1.0, 1.0}, {1.0}, 1.0, {1.0, 1.0});
  const Association x(1, {0, 0});
  NetworkState st{{1.0}, {1.0}, {1.0, 0.0}, {}};
  try {
    network_utility(s, st, x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveRate);
  }
}

TEST(ResourceAllocation, WeightedShares) {
  const Association x(1, {0, 0, 0});
  const auto y = opt_resource_allocation(x, std::vector<double>{1.0}, std::vector<double>{2, 1, 1});
  EXPECT_DOUBLE_EQ(y[0], 0.5);
  EXPECT_DOUBLE_EQ(y[1], 0.25);
  EXPECT_DOUBLE_EQ(y[2], 0.25);
}

TEST(ResourceAllocation, EqualPriorities) {
  const Association x(2, {1, 1, 1, 1, 1});
  const auto y = opt_resource_allocation(x, std::vector<double>{1.0, 1.0},
                                         std::vector<double>(5, 1.0));
  for (int j = 0; j < 5; ++j) {
    EXPECT_DOUBLE_EQ(y[j], 0.0);
    EXPECT_DOUBLE_EQ(y[5 + j], 0.2);
  }
}

TEST(ResourceAllocation, ScalesWithLoad) {
  const Association x(1, {0, 0});
  const auto y = opt_resource_allocation(x, std::vector<double>{0.6}, std::vector<double>{1, 2});
  EXPECT_DOUBLE_EQ(y[0], 0.2);
  EXPECT_DOUBLE_EQ(y[1], 0.4);
}

TEST(ResourceAllocation, MatchesGridArgmax) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> weight(0.5, 3.0);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> w(4);
    for (double& v : w) v = weight(rng);
    const auto y = opt_resource_allocation(Association(1, {0, 0, 0, 0}), std::vector<double>{1.0}, w);
    const auto grid = oracles::simplex_grid_argmax(w, 1e-3);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(y[j], grid[j], 2e-3);
  }
}

TEST(DeriveLoad, BinaryLoads) {
  EXPECT_EQ(derive_load_from_association(Association(2, {0, 0, 0})),
            (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(derive_load_from_association(Association(3, {2, 0, 1, 0})),
            (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(WeightedUtility, MatchesNetworkUtility) {
  const Scenario s = make_scenario(2, 3, {1e-9, 2e-9, 5e-10, 3e-10, 1e-9, 2e-9}, {10.0, 1.0},
                                   1e-12, {2.0, 1.0, 1.0}, 55, 180e3);
  const Association x(2, {0, 0, 1});
  const std::vector<double> load{1.0, 1.0};
  const std::vector<double> power{10.0, 1.0};
  const auto st = make_state(s, x, load, power);
  EXPECT_NEAR(weighted_utility(s, x, load, power), network_utility(s, st, x).value, 1e-9);
}

TEST(WeightedUtility, ZeroLoadIsMinusInfinity) {
  const Scenario s = make_scenario(2, 2, {1, 1, 1, 1}, {1.0, 1.0}, 1.0, {1.0, 1.0});
  const Association x(2, {0, 1});
  EXPECT_EQ(weighted_utility(s, x, std::vector<double>{1.0, 0.0}, std::vector<double>{1.0, 1.0}),
            -std::numeric_limits<double>::infinity());
}

TEST(UpperBound, DominatesRandomStates) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Scenario s = make_scenario(2, 3, {1e-9, 2e-9, 5e-10, 3e-10, 1e-9, 2e-9}, {10.0, 1.0},
                                   1e-12, {2.0, 1.0, 1.0}, 55, 180e3);
  const double bound = utility_upper_bound(s);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> serving(3);
    for (int& b : serving) b = u(rng) < 0.5 ? 0 : 1;
    const Association x(2, serving);
    const std::vector<double> load{0.05 + 0.95 * u(rng), 0.05 + 0.95 * u(rng)};
    const std::vector<double> power{10.0 * (0.01 + u(rng)), 0.01 + u(rng)};
    const double v = weighted_utility(s, x, load, power);
    if (std::isfinite(v)) {
      EXPECT_LE(v, bound);
    }
  }
}

TEST(TierCounts, SumToUsers) {
  Scenario s = make_scenario(2, 3, {1, 1, 1, 1, 1, 1}, {1.0, 1.0}, 1.0, {1, 1, 1});
  const auto counts = tier_user_counts(s, Association(2, {0, 1, 1}));
  EXPECT_EQ(counts[0], 1);
  EXPECT_EQ(counts[1], 2);
  EXPECT_EQ(counts[2], 0);
}

TEST(Tiers, NamesRoundTrip) {
  for (Tier t : {Tier::kMacro, Tier::kPico, Tier::kFemto}) EXPECT_EQ(parse_tier(tier_name(t)), t);
}

TEST(ScenarioValidate, RejectsBadShapes) {
  Scenario s = make_scenario(1, 2, {1.0, 1.0}, {1.0}, 1.0, {1.0, 1.0});
  EXPECT_NO_THROW(s.validate());
  s.gains.pop_back();
  EXPECT_THROW(s.validate(), Error);
}

TEST(AssociationType, RejectsOutOfRange) {
  EXPECT_THROW(Association(2, {0, 2}), Error);
  const Association x(3, {2, 0, 2});
  EXPECT_EQ(x.users_per_bs(), (std::vector<int>{1, 0, 2}));
  EXPECT_TRUE(x.x(2, 0));
  EXPECT_FALSE(x.x(1, 0));
}

}  // namespace
}  // namespace hetnet
