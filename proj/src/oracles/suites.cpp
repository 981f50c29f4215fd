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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "hetnet/association.hpp"
#include "hetnet/loadpower.hpp"
#include "hetnet/oracles.hpp"
#include "hetnet/orchestrator.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet::oracles {
namespace {

template <typename... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ScenarioConfig small_config(int macro, int pico, int femto, int users, std::uint64_t seed) {
  ScenarioConfig c;
  c.macro_count = macro;
  c.pico_count = pico;
  c.femto_count = femto;
  c.user_count = users;
  c.high_priority_count = users / 3;
  c.rng_seed = seed;
  return c;
}

// Two BSs, the two users leaning most to BS 0 go there.
Association split_association(const Scenario& sc) {
  std::vector<int> order(sc.num_users);
  for (int j = 0; j < sc.num_users; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return sc.gain(0, x) / sc.gain(1, x) > sc.gain(0, y) / sc.gain(1, y);
  });
  std::vector<int> serving(sc.num_users, 1);
  for (int k = 0; k < sc.num_users / 2; ++k) serving[order[k]] = 0;
  return Association(2, serving);
}

Scenario two_bs_scenario(std::uint64_t seed) {
  const bool femto = seed % 2 == 1;
  return generate_scenario(small_config(femto ? 0 : 1, 1, femto ? 1 : 0, 4, seed));
}

}  // namespace

SuiteOutcome allocation_suite(int draws, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.5, 3.0);
  double worst = 0.0;
  for (int t = 0; t < draws; ++t) {
    std::vector<double> w(4);
    for (double& v : w) v = weight(rng);
    const Association x(1, {0, 0, 0, 0});
    const auto closed = opt_resource_allocation(x, std::vector<double>{1.0}, w);
    const auto grid = simplex_grid_argmax(w, 1e-3);
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(closed[j] - grid[j]));
  }
  SuiteOutcome out{"allocation", worst <= 2e-3, format("max |y - y_grid| = %.2e", worst)};
  out.seconds = timer.seconds();
  return out;
}

SuiteOutcome association_suite(int instances, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_diff = 0.0;
  double worst_gap = 0.0;
  int gap_misses = 0;
  bool binary = true;
  for (int t = 0; t < instances; ++t) {
    const Scenario sc = generate_scenario(small_config(1, 1, 1, 6, seed * 1000 + t));
    std::vector<double> load(3), power(3);
    for (int i = 0; i < 3; ++i) {
      load[i] = 0.2 + 0.8 * unit(rng);
      power[i] = sc.max_power[i] * (0.3 + 0.7 * unit(rng));
    }
    const auto coeff = compute_coefficients(sc, load, power);
    const auto dgp = dgp_associate(coeff, sc.priorities);
    const auto best = exhaustive_associate(coeff, sc.priorities);
    for (int j = 0; j < sc.num_users; ++j) {
      int served = 0;
      for (int i = 0; i < 3; ++i) served += dgp.association.x(i, j) ? 1 : 0;
      binary = binary && served == 1;
    }
    worst_diff = std::max(worst_diff, best.utility - dgp.primal);
    worst_gap = std::max(worst_gap, dgp.gap);
    if (dgp.gap > 1e-5) ++gap_misses;
  }
  SuiteOutcome out{"association", worst_diff <= 1e-4 && binary && gap_misses == 0,
                   format("max shortfall %.2e, binary %s, max gap %.2e (%d/%d above 1e-5)",
                          worst_diff, binary ? "yes" : "no", worst_gap, gap_misses, instances)};
  out.seconds = timer.seconds();
  return out;
}

SuiteOutcome binary_load_suite(int instances, std::uint64_t seed) {
  Timer timer;
  double worst = -1e300;
  for (int t = 0; t < instances; ++t) {
    const Scenario sc = two_bs_scenario(seed * 1000 + t);
    const Association x = split_association(sc);
    const auto ldpc = ldpc_solve(sc, x);
    const auto grid = binary_load_grid_oracle(sc, x, 0.1, 50);
    worst = std::max(worst, grid.utility - ldpc.utility);
  }
  SuiteOutcome out{"binary-load", worst <= 1e-2,
                   format("max grid excess over binary-load solution %.2e", worst)};
  out.seconds = timer.seconds();
  return out;
}

SuiteOutcome power_grid_suite(int instances, std::uint64_t seed) {
  Timer timer;
  double worst_grid = -1e300;
  double worst_kkt = 0.0;
  double worst_pg = 0.0;
  for (int t = 0; t < instances; ++t) {
    const Scenario sc = two_bs_scenario(seed * 1000 + t);
    const Association x = split_association(sc);
    const auto ldpc = ldpc_solve(sc, x);
    const auto grid = binary_load_grid_oracle(sc, x, 1.0, 200);
    const auto pg = ldpc_projected_gradient(sc, x);
    worst_grid = std::max(worst_grid, grid.utility - ldpc.utility);
    worst_kkt = std::max(worst_kkt, ldpc.kkt.max());
    worst_pg = std::max(worst_pg, std::abs(pg.utility - ldpc.utility));
  }
  SuiteOutcome out{"power-grid", worst_grid <= 1e-2 && worst_kkt <= 1e-6 && worst_pg <= 1e-3,
                   format("grid excess %.2e, kkt %.2e, |dual - gradient| %.2e", worst_grid,
                          worst_kkt, worst_pg)};
  out.seconds = timer.seconds();
  return out;
}

SuiteOutcome icupa_suite(int cells, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> size(2, 8);
  double worst_constraint = 0.0;
  double worst_kkt = 0.0;
  double worst_drop = 0.0;
  double worst_oracle = 0.0;
  int improved = 0;
  int oracle_cells = 0;
  for (int t = 0; t < cells; ++t) {
    CellProblem cell;
    const int n = t % 5 == 0 ? 4 : size(rng);
    for (int j = 0; j < n; ++j) {
      cell.priorities.push_back(unit(rng) < 0.4 ? 2.0 : 1.0);
      cell.gains.push_back(std::pow(10.0, -12.0 + 4.0 * unit(rng)));
      cell.interference.push_back(std::pow(10.0, -13.0 + 3.0 * unit(rng)));
    }
    cell.budget = 0.1 + 5.9 * unit(rng);
    const auto res = icupa_solve_cell(cell);
    worst_constraint = std::max({worst_constraint, res.kkt.simplex, res.kkt.budget});
    worst_kkt = std::max(worst_kkt, res.kkt.max());
    worst_drop = std::max(worst_drop, res.equal_utility - res.utility);
    if (res.utility > res.equal_utility + 1e-9) ++improved;
    if (n == 4) {
      const auto grid = cell_grid_oracle(cell);
      worst_oracle = std::max(worst_oracle, std::abs(grid.utility - res.utility));
      ++oracle_cells;
    }
  }
  const bool pass = worst_constraint <= 1e-6 && worst_kkt <= 1e-6 && worst_drop <= 0.0 &&
                    improved >= 0.9 * cells && worst_oracle <= 1e-3;
  SuiteOutcome out{"icupa", pass,
                   format("constraints %.2e, kkt %.2e, improved %d/%d, |grid - icupa| %.2e over "
                          "%d cells",
                          worst_constraint, worst_kkt, improved, cells, worst_oracle,
                          oracle_cells)};
  out.seconds = timer.seconds();
  return out;
}

SuiteOutcome cdf_suite(int trials, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, 500);
  std::lognormal_distribution<double> rate(15.0, 1.5);
  int mismatches = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> samples(count(rng));
    for (double& v : samples) v = rate(rng);
    std::vector<double> grid(samples.begin(), samples.begin() + samples.size() / 2);
    for (int k = 0; k < 50; ++k) grid.push_back(rate(rng));
    grid.push_back(0.0);
    grid.push_back(1e300);
    if (empirical_cdf(samples, grid) != sorted_cdf(samples, grid)) ++mismatches;
  }
  SuiteOutcome out{"cdf", mismatches == 0, format("%d/%d mismatching trials", mismatches, trials)};
  out.seconds = timer.seconds();
  return out;
}

std::vector<SuiteOutcome> run_all_suites(const std::function<void(const SuiteOutcome&)>& on_done) {
  std::vector<SuiteOutcome> out;
  auto record = [&](SuiteOutcome o) {
    if (on_done) on_done(o);
    out.push_back(std::move(o));
  };
  record(allocation_suite());
  record(association_suite());
  record(binary_load_suite());
  record(power_grid_suite());
  record(icupa_suite());
  record(cdf_suite());
  return out;
}

}  // namespace hetnet::oracles
