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

#ifndef HETNET_ORACLES_HPP_
#define HETNET_ORACLES_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hetnet/icupa.hpp"
#include "hetnet/model.hpp"

namespace hetnet::oracles {

// argmax of sum w_j ln y_j over the simplex grid {step, 2 step, ...}, by
// dynamic programming over the remaining budget.
std::vector<double> simplex_grid_argmax(std::span<const double> priorities, double step);

struct CellGridOptimum {
  std::vector<double> fractions;
  std::vector<double> shares;
  double utility = 0.0;
};

// Grid search over (y, q / p*) on two simplices, 1e-2 then 1e-3 around the
// coarse optimum. Four users at most.
CellGridOptimum cell_grid_oracle(const CellProblem& cell);

// Counts samples <= r after sorting both sides.
std::vector<double> sorted_cdf(std::span<const double> samples, std::span<const double> grid);

struct SuiteOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

SuiteOutcome allocation_suite(int draws = 50, std::uint64_t seed = 11);
SuiteOutcome association_suite(int instances = 20, std::uint64_t seed = 12);
SuiteOutcome binary_load_suite(int instances = 10, std::uint64_t seed = 13);
SuiteOutcome power_grid_suite(int instances = 10, std::uint64_t seed = 14);
SuiteOutcome icupa_suite(int cells = 50, std::uint64_t seed = 15);
SuiteOutcome cdf_suite(int trials = 20, std::uint64_t seed = 16);

std::vector<SuiteOutcome> run_all_suites(
    const std::function<void(const SuiteOutcome&)>& on_done = {});

}  // namespace hetnet::oracles

#endif  // HETNET_ORACLES_HPP_
