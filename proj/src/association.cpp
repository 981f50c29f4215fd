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

#include "hetnet/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hetnet/error.hpp"

namespace hetnet {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> priority_mass(const Association& a, std::span<const double> w) {
  std::vector<double> mass(a.num_bs(), 0.0);
  for (int j = 0; j < a.num_users(); ++j) mass[a.serving(j)] += w[j];
  return mass;
}

// argmax_i (c_ij - w_j mu_i) for every user.
std::vector<int> best_response(const UtilityCoefficients& c, std::span<const double> w,
                               std::span<const double> mu) {
  std::vector<int> x(c.num_users, -1);
  for (int j = 0; j < c.num_users; ++j) {
    double best = kNegInf;
    for (int i = 0; i < c.num_bs; ++i) {
      const double cij = c.at(i, j);
      if (cij == kNegInf) continue;
      const double v = cij - w[j] * mu[i];
      if (x[j] < 0 || v > best) {
        best = v;
        x[j] = i;
      }
    }
  }
  return x;
}

void check_candidates(const UtilityCoefficients& c) {
  for (int j = 0; j < c.num_users; ++j) {
    bool any = false;
    for (int i = 0; i < c.num_bs; ++i) any = any || c.at(i, j) != kNegInf;
    if (!any)
      throw Error(ErrorCode::kNoCandidate, "user " + std::to_string(j) + " has no serving candidate");
  }
}

bool next_assignment(std::vector<int>& x, int num_bs) {
  for (size_t j = 0; j < x.size(); ++j) {
    if (++x[j] < num_bs) return true;
    x[j] = 0;
  }
  return false;
}

void check_enumeration_size(int num_bs, int num_users) {
  if (std::pow(static_cast<double>(num_bs), num_users) > kExhaustiveLimit)
    throw Error(ErrorCode::kTooLarge, "I^J exceeds the enumeration limit");
}

}  // namespace

std::string_view dgp_stop_name(DgpStop stop) {
  switch (stop) {
    case DgpStop::kFeasible: return "feasible";
    case DgpStop::kGapClosed: return "gap-closed";
    case DgpStop::kStalled: return "stalled";
    case DgpStop::kMaxIter: return "max-iter";
  }
  return "max-iter";
}

UtilityCoefficients compute_coefficients(const Scenario& scenario,
                                         std::span<const double> load,
                                         std::span<const double> power) {
  UtilityCoefficients out{scenario.num_bs, scenario.num_users,
                          std::vector<double>(static_cast<size_t>(scenario.num_bs) * scenario.num_users)};
  const double kb = scenario.bandwidth() / kRateUnitBps;
  for (int i = 0; i < scenario.num_bs; ++i) {
    for (int j = 0; j < scenario.num_users; ++j) {
      if (load[i] == 0.0 || power[i] == 0.0) {
        out.at(i, j) = kNegInf;
        continue;
      }
      const double w = scenario.priorities[j];
      const double se = std::log2(1.0 + sinr(scenario, load, power, i, j));
      const double arg = kb * w * load[i] * se;
      out.at(i, j) = arg > 0.0 ? w * std::log2(arg) : kNegInf;
    }
  }
  return out;
}

double optimal_mass(double mu) { return std::exp(std::numbers::ln2 * mu - 1.0); }

double dual_objective(const UtilityCoefficients& c, std::span<const double> w,
                      std::span<const double> mu) {
  double fx = 0.0;
  for (int j = 0; j < c.num_users; ++j) {
    double best = kNegInf;
    for (int i = 0; i < c.num_bs; ++i)
      if (c.at(i, j) != kNegInf) best = std::max(best, c.at(i, j) - w[j] * mu[i]);
    fx += best;
  }
  // N* (mu - log2 N*) with N* = exp(mu ln2 - 1) simplifies to N* / ln2.
  double gn = 0.0;
  for (double m : mu) gn += optimal_mass(m) / std::numbers::ln2;
  return fx + gn;
}

double association_objective(const UtilityCoefficients& c, std::span<const double> w,
                             const Association& a) {
  double total = 0.0;
  for (int j = 0; j < c.num_users; ++j) total += c.at(a.serving(j), j);
  for (double n : priority_mass(a, w))
    if (n > 0.0) total -= n * std::log2(n);
  return total;
}

DgpResult dgp_associate(const UtilityCoefficients& c, std::span<const double> w,
                        const DgpOptions& options) {
  check_candidates(c);
  const int ni = c.num_bs;
  std::vector<double> mu(ni, 0.0);
  std::vector<double> n(ni, 0.0);
  std::vector<double> mass(ni, 0.0);
  std::vector<double> trial(ni, 0.0);

  DgpResult result;
  double best_primal = kNegInf;
  std::vector<int> best_x;
  auto consider = [&](const std::vector<int>& x) {
    const double v = association_objective(c, w, Association(ni, x));
    if (v > best_primal) {
      best_primal = v;
      best_x = x;
    }
  };
  if (options.incumbent) {
    if (options.incumbent->num_users() != c.num_users || options.incumbent->num_bs() != ni)
      throw Error(ErrorCode::kInvariant, "incumbent association has the wrong shape");
    bool usable = true;
    for (int j = 0; j < c.num_users; ++j)
      usable = usable && c.at(options.incumbent->serving(j), j) != kNegInf;
    if (usable) consider(options.incumbent->serving_bs());
  }

  double dual = dual_objective(c, w, mu);
  double best_dual = dual;
  int best_dual_iter = 0;
  double theta = options.theta0;
  if (options.record_trace) result.dual_trace.push_back(dual);

  int t = 1;
  for (; t <= options.max_iter; ++t) {
    const auto x = best_response(c, w, mu);
    consider(x);
    std::fill(mass.begin(), mass.end(), 0.0);
    for (int j = 0; j < c.num_users; ++j) mass[x[j]] += w[j];
    double infeas = 0.0;
    for (int i = 0; i < ni; ++i) {
      n[i] = optimal_mass(mu[i]);
      infeas = std::max(infeas, std::abs(n[i] - mass[i]));
    }
    if (best_dual - best_primal <= options.eps) {
      result.stop = DgpStop::kGapClosed;
      break;
    }
    // Step on the dual; halve the base step until the dual does not increase.
    double trial_dual = dual;
    const double root_t = std::sqrt(static_cast<double>(t));
    bool accepted = false;
    while (theta > 1e-14) {
      for (int i = 0; i < ni; ++i) trial[i] = mu[i] - theta / root_t * (n[i] - mass[i]);
      trial_dual = dual_objective(c, w, trial);
      if (trial_dual <= dual) {
        accepted = true;
        break;
      }
      theta *= 0.5;
    }
    if (!accepted) {
      result.stop = DgpStop::kStalled;
      break;
    }
    const double change = dual - trial_dual;
    mu.swap(trial);
    dual = trial_dual;
    if (options.record_trace) result.dual_trace.push_back(dual);
    if (dual < best_dual - options.eps) best_dual_iter = t;
    best_dual = std::min(best_dual, dual);
    if (infeas < options.eps && change < options.eps) {
      result.stop = DgpStop::kFeasible;
      break;
    }
    if (t - best_dual_iter >= options.stall_window) {
      result.stop = DgpStop::kStalled;
      break;
    }
  }
  consider(best_response(c, w, mu));

  result.association = Association(ni, best_x);
  result.primal = best_primal;
  result.dual_bound = best_dual;
  result.gap = best_dual - best_primal;
  result.iterations = std::min(t, options.max_iter);
  result.converged = t <= options.max_iter;
  if (!result.converged) result.stop = DgpStop::kMaxIter;
  for (int i = 0; i < ni; ++i) n[i] = optimal_mass(mu[i]);
  result.duals = AssociationDuals{mu, n, theta, result.iterations};
  return result;
}

Association max_sinr_associate(const Scenario& scenario, std::span<const double> load,
                               std::span<const double> power) {
  std::vector<int> x(scenario.num_users, 0);
  for (int j = 0; j < scenario.num_users; ++j) {
    double best = -1.0;
    for (int i = 0; i < scenario.num_bs; ++i) {
      const double eta = sinr(scenario, load, power, i, j);
      if (eta > best) {
        best = eta;
        x[j] = i;
      }
    }
  }
  return Association(scenario.num_bs, std::move(x));
}

ExhaustiveResult exhaustive_associate(const UtilityCoefficients& c,
                                      std::span<const double> w) {
  check_enumeration_size(c.num_bs, c.num_users);
  check_candidates(c);
  std::vector<int> x(c.num_users, 0);
  ExhaustiveResult best{Association(c.num_bs, x), kNegInf};
  do {
    bool finite = true;
    for (int j = 0; j < c.num_users && finite; ++j) finite = c.at(x[j], j) != kNegInf;
    if (!finite) continue;
    Association a(c.num_bs, x);
    const double v = association_objective(c, w, a);
    if (v > best.utility) best = {std::move(a), v};
  } while (next_assignment(x, c.num_bs));
  return best;
}

ExhaustiveResult exhaustive_associate(const Scenario& scenario, std::span<const double> power) {
  check_enumeration_size(scenario.num_bs, scenario.num_users);
  std::vector<int> x(scenario.num_users, 0);
  ExhaustiveResult best{Association(scenario.num_bs, x), kNegInf};
  do {
    Association a(scenario.num_bs, x);
    const auto d = derive_load_from_association(a);
    std::vector<double> p(power.begin(), power.end());
    for (int i = 0; i < scenario.num_bs; ++i) p[i] *= d[i];
    const double v = weighted_utility(scenario, a, d, p);
    if (v > best.utility) best = {std::move(a), v};
  } while (next_assignment(x, scenario.num_bs));
  return best;
}

}  // namespace hetnet
