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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hetnet/association.hpp"
#include "hetnet/error.hpp"
#include "hetnet/icupa.hpp"
#include "hetnet/oracles.hpp"

namespace hetnet {
namespace {

CellProblem make_cell(std::vector<double> w, std::vector<double> g, std::vector<double> interference,
                      double budget) {
  CellProblem c;
  c.priorities = std::move(w);
  c.gains = std::move(g);
  c.interference = std::move(interference);
  c.budget = budget;
  return c;
}

double h_of(const CellProblem& c, int j, double psi, double phi, double y) {
  const double w = c.priorities[j];
  return 1.0 - psi * y / w - fbar_of(c.gains[j] / (c.interference[j] * phi) * (w / y - psi));
}

TEST(Fbar, Values) {
  EXPECT_NEAR(fbar_of(std::numbers::e - 1.0), (std::numbers::e - 1.0) / std::numbers::e, 1e-14);
  EXPECT_NEAR(fbar_of(std::numbers::e - 1.0), 0.63212, 1e-5);
  EXPECT_NEAR(fbar_of(1e-9), 1.0 - 5e-10, 1e-15);
  EXPECT_THROW(fbar_of(0.0), Error);
  EXPECT_THROW(fbar_of(-1.0), Error);
}

TEST(Fbar, Decreasing) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int t = 0; t < 10000; ++t) {
    double a = std::pow(10.0, u(rng)), b = std::pow(10.0, u(rng));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    EXPECT_GT(fbar_of(a), fbar_of(b));
  }
}

TEST(Fbar, DerivativeMatchesDifference) {
  for (double x : {1e-4, 0.1, 1.0, 7.0, 300.0}) {
    const double h = x * 1e-4;
    EXPECT_NEAR(fbar_prime(x), (fbar_of(x + h) - fbar_of(x - h)) / (2 * h),
                1e-6 * std::abs(fbar_prime(x)));
  }
}

TEST(Bisection, SymmetricCellSplitsEvenly) {
  const auto cell = make_cell({1.0, 1.0}, {1e-9, 1e-9}, {1e-12, 1e-12}, 2.0);
  const auto r = icupa_solve_cell(cell);
  const double psi = r.solution.psi, phi = r.solution.phi;
  EXPECT_NEAR(solve_y_bisection(cell, 0, psi, phi, 1e-13), 0.5, 1e-9);
  EXPECT_NEAR(solve_y_bisection(cell, 1, psi, phi, 1e-13), 0.5, 1e-9);
}

TEST(Bisection, RootContractAndScan) {
  const auto cell = make_cell({2.0, 1.0, 1.0}, {3e-9, 1e-10, 8e-10}, {1e-12, 5e-13, 2e-12}, 1.5);
  const auto r = icupa_solve_cell(cell);
  const double psi = r.solution.psi, phi = r.solution.phi;
  for (int j = 0; j < 3; ++j) {
    const double y = solve_y_bisection(cell, j, psi, phi, 1e-13);
    EXPECT_LT(std::abs(h_of(cell, j, psi, phi, y)), 1e-8);
    const double hi = cell.priorities[j] / psi;
    double crossing = -1.0;
    double prev = h_of(cell, j, psi, phi, 1e-6);
    for (double t = 2e-6; t < hi; t += 1e-6) {
      const double cur = h_of(cell, j, psi, phi, t);
      if ((prev < 0) != (cur < 0)) {
        crossing = t;
        break;
      }
      prev = cur;
    }
    ASSERT_GT(crossing, 0.0);
    EXPECT_NEAR(y, crossing, 2e-6);
  }
}

TEST(Bisection, NoRootOutsideStationaryRegion) {
  const auto cell = make_cell({1.0}, {1e-9}, {1e-12}, 1.0);
  try {
    solve_y_bisection(cell, 0, 1.0, 1e30);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoRoot);
  }
}

TEST(CellSolve, SingleUser) {
  const auto cell = make_cell({2.0}, {1e-9}, {1e-12}, 3.0);
  const auto r = icupa_solve_cell(cell);
  EXPECT_DOUBLE_EQ(r.solution.fractions[0], 1.0);
  EXPECT_DOUBLE_EQ(r.solution.shares[0], 3.0);
  EXPECT_DOUBLE_EQ(r.solution.power[0], 3.0);
}

TEST(CellSolve, IdenticalUsers) {
  const auto cell = make_cell({1.0, 1.0}, {2e-10, 2e-10}, {1e-12, 1e-12}, 4.0);
  const auto r = icupa_solve_cell(cell);
  EXPECT_NEAR(r.solution.fractions[0], 0.5, 1e-9);
  EXPECT_NEAR(r.solution.fractions[1], 0.5, 1e-9);
  EXPECT_NEAR(r.solution.power[0], 4.0, 1e-8);
  EXPECT_NEAR(r.solution.power[1], 4.0, 1e-8);
}

TEST(CellSolve, FourUsersMatchGrid) {
  const auto cell = make_cell({2.0, 1.0, 1.0, 2.0}, {5e-9, 1e-10, 7e-10, 2e-11},
                              {1e-12, 3e-12, 2e-12, 4e-13}, 2.5);
  const auto r = icupa_solve_cell(cell);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.kkt.max(), 1e-6);
  EXPECT_GT(r.utility, r.equal_utility);
  const auto grid = oracles::cell_grid_oracle(cell);
  EXPECT_NEAR(r.utility, grid.utility, 1e-3);
  EXPECT_NEAR(r.utility, cell_utility(cell, r.solution.fractions, r.solution.shares), 1e-12);
}

TEST(CellSolve, GradientModeAgrees) {
  const auto cell = make_cell({2.0, 1.0, 1.0}, {3e-9, 1e-10, 8e-10}, {1e-12, 5e-13, 2e-12}, 1.5);
  IcupaOptions g;
  g.step = IcupaStep::kGradient;
  g.max_iter = 200000;
  g.tol = 1e-7;
  const auto a = icupa_solve_cell(cell);
  const auto b = icupa_solve_cell(cell, g);
  EXPECT_NEAR(a.utility, b.utility, 1e-5);
}

TEST(IcupaAll, SingleUserCellsUnchanged) {
  const Scenario s = generate_scenario(testing::small_config(1, 1, 1, 3, 5));
  const Association x(3, {0, 1, 2});
  const auto state = make_state(s, x, {1.0, 1.0, 1.0}, s.max_power);
  const auto r = icupa_all(s, x, state);
  EXPECT_NEAR(r.utility, r.pre_utility, 1e-12);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(r.state.power[i], state.power[i]);
}

TEST(IcupaAll, ImprovesMaxSinr) {
  const Scenario s = generate_scenario(ScenarioConfig{});
  const auto x = max_sinr_associate(s, std::vector<double>(s.num_bs, 1.0), s.max_power);
  const auto state = make_state(s, x, derive_load_from_association(x), s.max_power);
  const auto r = icupa_all(s, x, state);
  EXPECT_GE(r.utility, r.pre_utility);
  EXPECT_NEAR(r.pre_utility, network_utility(s, state, x).value, 1e-9);
  EXPECT_NEAR(r.utility, network_utility(s, r.state, x).value, 1e-9);
  EXPECT_TRUE(r.state.has_user_power());
}

}  // namespace
}  // namespace hetnet
