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

#ifndef HETNET_ICUPA_HPP_
#define HETNET_ICUPA_HPP_

#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

// x / ((1 + x) ln(1 + x)) for x > 0. Throws Error(kDomain) otherwise.
double fbar_of(double x);
double fbar_prime(double x);

// One BS with frozen interference.
struct CellProblem {
  std::vector<double> priorities;
  std::vector<double> gains;         // direct gains
  std::vector<double> interference;  // I_j, watts
  double budget = 0.0;               // average power p*, watts

  int size() const { return static_cast<int>(priorities.size()); }
  void validate() const;
};

struct CellSolution {
  std::vector<double> fractions;  // y_j
  std::vector<double> shares;     // q_j = y_j p_j
  std::vector<double> power;      // p_j
  double psi = 0.0;
  double phi = 0.0;
};

struct CellKkt {
  double stationarity = 0.0;  // both stationarity conditions, divided through by w_j
  double simplex = 0.0;       // |sum y - 1|
  double budget = 0.0;        // |sum q / p* - 1|
  double max() const;
};

enum class IcupaStep {
  kNewton,    // Newton step on the two multipliers
  kGradient,  // kappa0 / sqrt(t) dual gradient
};

struct IcupaOptions {
  IcupaStep step = IcupaStep::kNewton;
  double kappa0 = 0.1;
  double bisection_tol = 1e-13;
  double tol = 1e-10;
  int max_iter = 5000;
};

struct CellResult {
  CellSolution solution;
  CellKkt kkt;
  double utility = 0.0;        // sum w ln(y ln(1 + q g / (I y)))
  double equal_utility = 0.0;  // y = 1/n, p_j = p*
  int iterations = 0;
  bool converged = false;
  bool kept_equal = false;
};

// Root of h(y) = 1 - psi y / w - fbar(g/(I phi) (w / y - psi)) on
// (eps, w / psi - eps). Throws Error(kNoRoot) if h keeps one sign.
double solve_y_bisection(const CellProblem& cell, int j, double psi, double phi,
                         double tol = 1e-10);

double cell_utility(const CellProblem& cell, std::span<const double> fractions,
                    std::span<const double> shares);
CellKkt cell_kkt(const CellProblem& cell, const CellSolution& solution);

CellResult icupa_solve_cell(const CellProblem& cell, const IcupaOptions& options = {});

struct IcupaResult {
  NetworkState state;
  double utility = 0.0;
  double pre_utility = 0.0;
  int iterations = 0;
  bool converged = true;
  bool rejected = false;
  std::vector<CellResult> cells;  // per BS; empty for idle BSs
};

// Cell problems of every loaded BS under `state` (binary loads).
std::vector<CellProblem> build_cells(const Scenario& scenario, const Association& association,
                                     const NetworkState& state);

IcupaResult icupa_all(const Scenario& scenario, const Association& association,
                      const NetworkState& state, const IcupaOptions& options = {});

}  // namespace hetnet

#endif  // HETNET_ICUPA_HPP_
