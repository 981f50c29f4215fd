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

#include "hetnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hetnet/error.hpp"

namespace hetnet {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kNonPositiveRate: return "NonPositiveRate";
    case ErrorCode::kNoCandidate: return "NoCandidate";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kBracketFailure: return "BracketFailure";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kNoRoot: return "NoRoot";
    case ErrorCode::kEmptyActiveSet: return "EmptyActiveSet";
    case ErrorCode::kUnknownAlgorithm: return "UnknownAlgorithm";
    case ErrorCode::kEmptySamples: return "EmptySamples";
    case ErrorCode::kDegenerateQuantile: return "DegenerateQuantile";
    case ErrorCode::kInvariant: return "InvariantViolation";
  }
  return "Error";
}

std::string_view tier_name(Tier tier) {
  switch (tier) {
    case Tier::kMacro: return "macro";
    case Tier::kPico: return "pico";
    case Tier::kFemto: return "femto";
  }
  return "macro";
}

Tier parse_tier(std::string_view name) {
  if (name == "macro") return Tier::kMacro;
  if (name == "pico") return Tier::kPico;
  if (name == "femto") return Tier::kFemto;
  throw Error(ErrorCode::kParse, "unknown tier '" + std::string(name) + "'");
}

void Scenario::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kConfig, what); };
  if (num_bs <= 0) fail("num_bs must be positive");
  if (num_users <= 0) fail("num_users must be positive");
  const auto ni = static_cast<size_t>(num_bs);
  const auto nj = static_cast<size_t>(num_users);
  if (tiers.size() != ni || max_power.size() != ni || max_power_dbm.size() != ni)
    fail("per-BS arrays must have num_bs entries");
  if (priorities.size() != nj) fail("priorities must have num_users entries");
  if (gains.size() != ni * nj) fail("gains must be num_bs x num_users");
  for (double g : gains)
    if (!(std::isfinite(g) && g > 0.0)) fail("gains must be finite and positive");
  for (double p : max_power)
    if (!(std::isfinite(p) && p > 0.0)) fail("max power must be positive");
  for (double w : priorities)
    if (!(std::isfinite(w) && w > 0.0)) fail("priorities must be positive");
  if (!(std::isfinite(noise) && noise > 0.0)) fail("noise must be positive");
  if (rb_count <= 0) fail("K must be positive");
  if (!(rb_bandwidth_hz > 0.0)) fail("B must be positive");
}

Association::Association(int num_bs, std::vector<int> serving)
    : num_bs_(num_bs), serving_(std::move(serving)) {
  if (num_bs_ <= 0) throw Error(ErrorCode::kInvariant, "association needs a BS");
  for (int b : serving_)
    if (b < 0 || b >= num_bs_)
      throw Error(ErrorCode::kInvariant, "serving BS index out of range");
}

std::vector<std::vector<int>> Association::serving_sets() const {
  std::vector<std::vector<int>> sets(num_bs_);
  for (int j = 0; j < num_users(); ++j) sets[serving_[j]].push_back(j);
  return sets;
}

std::vector<int> Association::users_per_bs() const {
  std::vector<int> counts(num_bs_, 0);
  for (int b : serving_) ++counts[b];
  return counts;
}

double sinr(const Scenario& scenario, std::span<const double> load,
            std::span<const double> power, int i, int j) {
  double interference = scenario.noise;
  for (int k = 0; k < scenario.num_bs; ++k) {
    if (k == i) continue;
    interference += load[k] * power[k] * scenario.gain(k, j);
  }
  return power[i] * scenario.gain(i, j) / interference;
}

double sinr(const Scenario& scenario, const NetworkState& state, int i, int j) {
  if (!state.has_user_power()) return sinr(scenario, state.load, state.power, i, j);
  double interference = scenario.noise;
  for (int k = 0; k < scenario.num_bs; ++k) {
    if (k == i) continue;
    interference += state.load[k] * state.power[k] * scenario.gain(k, j);
  }
  const double p = state.user_power[static_cast<size_t>(i) * scenario.num_users + j];
  return p * scenario.gain(i, j) / interference;
}

double user_rate(const Scenario& scenario, const NetworkState& state,
                 const Association& association, int j) {
  const int i = association.serving(j);
  const double y = state.fractions[static_cast<size_t>(i) * scenario.num_users + j];
  if (y <= 0.0) return 0.0;
  return scenario.bandwidth() * y * std::log2(1.0 + sinr(scenario, state, i, j));
}

std::vector<double> user_rates(const Scenario& scenario, const NetworkState& state,
                               const Association& association) {
  std::vector<double> rates(scenario.num_users);
  for (int j = 0; j < scenario.num_users; ++j)
    rates[j] = user_rate(scenario, state, association, j);
  return rates;
}

double utility_of_rates(std::span<const double> rates_bps,
                        std::span<const double> priorities) {
  double total = 0.0;
  for (size_t j = 0; j < rates_bps.size(); ++j) {
    if (!(rates_bps[j] > 0.0))
      throw Error(ErrorCode::kNonPositiveRate,
                  "user " + std::to_string(j) + " has zero rate");
    total += priorities[j] * std::log2(rates_bps[j] / kRateUnitBps);
  }
  return total;
}

UtilityValue network_utility(const Scenario& scenario, const NetworkState& state,
                             const Association& association) {
  const auto rates = user_rates(scenario, state, association);
  return UtilityValue{utility_of_rates(rates, scenario.priorities)};
}

std::vector<double> opt_resource_allocation(const Association& association,
                                            std::span<const double> loads,
                                            std::span<const double> priorities) {
  const int num_bs = association.num_bs();
  const int num_users = association.num_users();
  std::vector<double> mass(num_bs, 0.0);
  for (int j = 0; j < num_users; ++j) mass[association.serving(j)] += priorities[j];
  std::vector<double> y(static_cast<size_t>(num_bs) * num_users, 0.0);
  for (int j = 0; j < num_users; ++j) {
    const int i = association.serving(j);
    if (loads[i] == 0.0) continue;  // 0 * log(0/0) := 0
    y[static_cast<size_t>(i) * num_users + j] = priorities[j] * loads[i] / mass[i];
  }
  return y;
}

std::vector<double> derive_load_from_association(const Association& association) {
  std::vector<double> d(association.num_bs(), 0.0);
  for (int b : association.serving_bs()) d[b] = 1.0;
  return d;
}

NetworkState make_state(const Scenario& scenario, const Association& association,
                        std::vector<double> load, std::vector<double> power) {
  NetworkState state;
  state.fractions = opt_resource_allocation(association, load, scenario.priorities);
  state.load = std::move(load);
  state.power = std::move(power);
  return state;
}

double weighted_utility(const Scenario& scenario, const Association& association,
                        std::span<const double> load, std::span<const double> power) {
  const int num_bs = scenario.num_bs;
  std::vector<double> mass(num_bs, 0.0);
  for (int j = 0; j < scenario.num_users; ++j)
    mass[association.serving(j)] += scenario.priorities[j];
  const double kb = scenario.bandwidth() / kRateUnitBps;
  double total = 0.0;
  for (int j = 0; j < scenario.num_users; ++j) {
    const int i = association.serving(j);
    const double w = scenario.priorities[j];
    const double se = std::log2(1.0 + sinr(scenario, load, power, i, j));
    const double arg = kb * w * load[i] * se / mass[i];
    if (!(arg > 0.0)) return -std::numeric_limits<double>::infinity();
    total += w * std::log2(arg);
  }
  return total;
}

double utility_upper_bound(const Scenario& scenario) {
  const double w_min = *std::min_element(scenario.priorities.begin(), scenario.priorities.end());
  const double kb = scenario.bandwidth() / kRateUnitBps;
  double total = 0.0;
  for (int j = 0; j < scenario.num_users; ++j) {
    const double w = scenario.priorities[j];
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < scenario.num_bs; ++i) {
      const double se = std::log2(1.0 + scenario.max_power[i] * scenario.gain(i, j) / scenario.noise);
      best = std::max(best, w * std::log2(kb * w / w_min * se));
    }
    total += best;
  }
  return total;
}

std::array<int, kNumTiers> tier_user_counts(const Scenario& scenario,
                                            const Association& association) {
  std::array<int, kNumTiers> counts{};
  for (int b : association.serving_bs()) ++counts[static_cast<int>(scenario.tiers[b])];
  return counts;
}

}  // namespace hetnet
