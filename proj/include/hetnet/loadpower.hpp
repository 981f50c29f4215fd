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

#ifndef HETNET_LOADPOWER_HPP_
#define HETNET_LOADPOWER_HPP_

#include <optional>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

// e^x / ((1 + e^x) ln(1 + e^x)); derivative of ln ln(1 + e^x).
double f_of(double x);
double f_prime(double x);
// Bisection inverse. y is clamped into (1e-9, 1 - 1e-9) and the bracket
// [-50, 50] grows as needed. Throws Error(kBracketFailure) on NaN input.
double f_inverse(double y, double tol = 1e-10);

// Active set and the constants of the exponential change of variables.
// BSs are addressed by their slot in `active`; pair m is (interferer slot
// pair_bs[m], user pair_user[m]).
struct FullLoadStructure {
  std::vector<int> active;
  std::vector<int> slot_of_bs;    // -1 for BSs outside the active set
  std::vector<int> serving_slot;  // per user
  std::vector<double> b;          // ln(noise / g_serving)
  std::vector<int> pair_bs;
  std::vector<int> pair_user;
  std::vector<double> a;          // ln(g_interferer / g_serving)
  std::vector<std::vector<int>> user_pairs;
  std::vector<double> ln_max_power;  // per slot

  int num_slots() const { return static_cast<int>(active.size()); }
  int num_users() const { return static_cast<int>(serving_slot.size()); }
  int num_pairs() const { return static_cast<int>(pair_bs.size()); }
};

// Throws Error(kEmptyActiveSet) when no BS serves a user.
FullLoadStructure build_structure(const Scenario& scenario, const Association& association);

struct LdpcPrimals {
  std::vector<double> u;  // log-SINR per user
  std::vector<double> v;  // log-power per slot
  std::vector<double> w;  // per user
  std::vector<double> s;  // per pair
};

struct LdpcDuals {
  std::vector<double> alpha;   // per user, >= 0
  std::vector<double> beta;    // per user, <= 0 at the optimum
  std::vector<double> lambda;  // per pair, <= 0 at the optimum
  std::vector<double> zeta;    // per slot, >= 0
  double step = 0.0;
};

struct KktResiduals {
  double stationarity = 0.0;
  double feasibility = 0.0;
  double complementarity = 0.0;
  double dual_feasibility = 0.0;
  double max() const;
};

enum class LdpcStep {
  kNewton,    // damped Newton step on the dual with T continuation
  kGradient,  // plain projected dual gradient, delta0 / sqrt(t)
};

struct LdpcOptions {
  double T = 1e-3;
  double kkt_tol = 1e-6;
  int max_iter = 20000;
  LdpcStep step = LdpcStep::kNewton;
  bool continuation = true;
  // First regularization weight of the continuation schedule.
  double continuation_start = 1.0;
  double delta0 = 0.1;
  double inverse_tol = 1e-13;
  // Starting powers in watts, one per BS. Defaults to the maximum powers.
  std::optional<std::vector<double>> warm_power;
};

struct LdpcResult {
  NetworkState state;
  LdpcPrimals primals;
  LdpcDuals duals;
  KktResiduals kkt;
  double utility = 0.0;
  double warm_utility = 0.0;
  int iterations = 0;
  bool converged = false;
  // True when the solver point lost utility and the warm start was returned.
  bool rejected = false;
  std::vector<double> residual_trace;
};

LdpcResult ldpc_solve(const Scenario& scenario, const Association& association,
                      const LdpcOptions& options = {});

// Residuals of the regularized convex problem at (primals, duals).
KktResiduals ldpc_kkt_residuals(const FullLoadStructure& structure,
                                std::span<const double> priorities,
                                const LdpcPrimals& primals, const LdpcDuals& duals, double T);

// Objective of the convex problem: sum_j w_j ln ln(1 + e^u_j) + T sum ln(1 + lnP - v).
double ldpc_objective(const FullLoadStructure& structure, std::span<const double> priorities,
                      const LdpcPrimals& primals, double T);

struct PowerSolution {
  std::vector<double> power;  // per BS, watts
  double utility = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Projected gradient ascent on the log-powers of the same regularized
// problem. Used as an independent cross-check.
PowerSolution ldpc_projected_gradient(const Scenario& scenario, const Association& association,
                                      const LdpcOptions& options = {});

struct GridOptimum {
  std::vector<double> load;
  std::vector<double> power;
  double utility = 0.0;
};

// Exhaustive search over loads {0, step, ..., 1}^I and powers
// P_i * {1, ..., power_points} / power_points. Needs I <= 3 and J <= 6.
GridOptimum binary_load_grid_oracle(const Scenario& scenario, const Association& association,
                                    double grid_step, int power_points = 50);

}  // namespace hetnet

#endif  // HETNET_LOADPOWER_HPP_
