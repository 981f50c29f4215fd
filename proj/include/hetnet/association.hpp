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

#ifndef HETNET_ASSOCIATION_HPP_
#define HETNET_ASSOCIATION_HPP_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

// c[i][j] in utility units; -inf marks a BS that cannot serve the user.
struct UtilityCoefficients {
  int num_bs = 0;
  int num_users = 0;
  std::vector<double> c;  // row-major I x J

  double at(int i, int j) const { return c[static_cast<size_t>(i) * num_users + j]; }
  double& at(int i, int j) { return c[static_cast<size_t>(i) * num_users + j]; }
};

UtilityCoefficients compute_coefficients(const Scenario& scenario,
                                         std::span<const double> load,
                                         std::span<const double> power);

struct AssociationDuals {
  std::vector<double> mu;
  std::vector<double> n;  // N_i at the last iterate
  double theta = 1.0;     // current base step
  int iteration = 0;
};

enum class DgpStop { kFeasible, kGapClosed, kStalled, kMaxIter };
std::string_view dgp_stop_name(DgpStop stop);

struct DgpOptions {
  double theta0 = 1.0;
  double eps = 1e-6;
  int max_iter = 5000;
  // Stop once the best dual value has not improved by eps over this window.
  int stall_window = 200;
  // A known association the result must not fall below.
  std::optional<Association> incumbent;
  bool record_trace = false;
};

struct DgpResult {
  Association association;
  AssociationDuals duals;
  double primal = 0.0;      // association_objective of the returned x
  double dual_bound = 0.0;  // smallest dual value visited
  double gap = 0.0;         // dual_bound - primal
  DgpStop stop = DgpStop::kMaxIter;
  bool converged = false;
  int iterations = 0;
  std::vector<double> dual_trace;  // accepted dual values when recorded
};

// Throws Error(kNoCandidate) when a user has no finite coefficient.
DgpResult dgp_associate(const UtilityCoefficients& coefficients,
                        std::span<const double> priorities,
                        const DgpOptions& options = {});

// argmax over N > 0 of mu N - N log2 N.
double optimal_mass(double mu);

double dual_objective(const UtilityCoefficients& coefficients,
                      std::span<const double> priorities, std::span<const double> mu);

// sum_j c[b(j)][j] - sum_i N_i log2 N_i with N_i the priority mass of BS i.
double association_objective(const UtilityCoefficients& coefficients,
                             std::span<const double> priorities,
                             const Association& association);

// Ties go to the lowest BS index.
Association max_sinr_associate(const Scenario& scenario, std::span<const double> load,
                               std::span<const double> power);

struct ExhaustiveResult {
  Association association;
  double utility = 0.0;
};

inline constexpr double kExhaustiveLimit = 1e6;

// Maximizes association_objective over all I^J associations.
ExhaustiveResult exhaustive_associate(const UtilityCoefficients& coefficients,
                                      std::span<const double> priorities);
// Maximizes the network utility with closed-form fractions and loads derived
// from each candidate association, powers fixed.
ExhaustiveResult exhaustive_associate(const Scenario& scenario,
                                      std::span<const double> power);

}  // namespace hetnet

#endif  // HETNET_ASSOCIATION_HPP_
