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

#ifndef HETNET_MODEL_HPP_
#define HETNET_MODEL_HPP_

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hetnet {

// Utility is measured on rates in Mbit/s.
inline constexpr double kRateUnitBps = 1e6;

enum class Tier { kMacro = 0, kPico = 1, kFemto = 2 };
inline constexpr int kNumTiers = 3;

std::string_view tier_name(Tier tier);
// Throws Error(kParse) on an unknown name.
Tier parse_tier(std::string_view name);

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// Geometry that produced a scenario. Empty when gains were given explicitly.
struct Placement {
  std::vector<Point> bs_xy;
  std::vector<Point> user_xy;
  bool operator==(const Placement&) const = default;
};

// Immutable network snapshot. Powers and noise are kept in watts; the dBm
// values are retained so files round-trip exactly.
struct Scenario {
  int num_bs = 0;
  int num_users = 0;
  std::vector<Tier> tiers;                // [I]
  std::vector<double> max_power_dbm;      // [I]
  std::vector<double> max_power;          // [I], watts
  std::vector<double> priorities;         // [J]
  std::vector<double> gains;              // [I * J], row-major
  double noise_dbm = 0.0;
  double noise = 0.0;                     // watts
  int rb_count = 0;
  double rb_bandwidth_hz = 0.0;
  Placement placement;

  double gain(int i, int j) const { return gains[static_cast<size_t>(i) * num_users + j]; }
  // K * B in bit/s per unit spectral efficiency.
  double bandwidth() const { return rb_count * rb_bandwidth_hz; }

  // Throws Error(kConfig) when an invariant is broken.
  void validate() const;
  bool operator==(const Scenario&) const = default;
};

// One serving BS per user.
class Association {
 public:
  Association() = default;
  Association(int num_bs, std::vector<int> serving);

  int num_bs() const { return num_bs_; }
  int num_users() const { return static_cast<int>(serving_.size()); }
  int serving(int j) const { return serving_[j]; }
  const std::vector<int>& serving_bs() const { return serving_; }
  bool x(int i, int j) const { return serving_[j] == i; }
  std::vector<std::vector<int>> serving_sets() const;
  std::vector<int> users_per_bs() const;

  bool operator==(const Association&) const = default;

 private:
  int num_bs_ = 0;
  std::vector<int> serving_;
};

struct NetworkState {
  std::vector<double> load;        // d[I]
  std::vector<double> power;       // p[I], watts
  std::vector<double> fractions;   // y[I * J]
  std::vector<double> user_power;  // p_user[I * J], empty unless set per user

  bool has_user_power() const { return !user_power.empty(); }
};

struct UtilityValue {
  static constexpr std::string_view kRateUnit = "Mbit/s";
  double value = 0.0;
};

// Load-coupled SINR of user j from BS i. Uses per-user power when present.
double sinr(const Scenario& scenario, const NetworkState& state, int i, int j);
double sinr(const Scenario& scenario, std::span<const double> load,
            std::span<const double> power, int i, int j);

// bit/s
double user_rate(const Scenario& scenario, const NetworkState& state,
                 const Association& association, int j);
std::vector<double> user_rates(const Scenario& scenario, const NetworkState& state,
                               const Association& association);

// Throws Error(kNonPositiveRate) if a user has zero rate.
UtilityValue network_utility(const Scenario& scenario, const NetworkState& state,
                             const Association& association);
double utility_of_rates(std::span<const double> rates_bps,
                        std::span<const double> priorities);

// Priority-proportional split of each BS load. Row-major I x J.
std::vector<double> opt_resource_allocation(const Association& association,
                                            std::span<const double> loads,
                                            std::span<const double> priorities);

std::vector<double> derive_load_from_association(const Association& association);

// Builds the state for (x, d, p) with the closed-form fractions.
NetworkState make_state(const Scenario& scenario, const Association& association,
                        std::vector<double> load, std::vector<double> power);

// Weighted form of the utility for (x, d, p) under closed-form fractions.
// Returns -inf when some user gets no rate.
double weighted_utility(const Scenario& scenario, const Association& association,
                        std::span<const double> load, std::span<const double> power);

// Closed-form bound on any achievable utility. Per user it takes the best BS
// at full power, no interference and the largest possible resource share.
double utility_upper_bound(const Scenario& scenario);

std::array<int, kNumTiers> tier_user_counts(const Scenario& scenario,
                                            const Association& association);

}  // namespace hetnet

#endif  // HETNET_MODEL_HPP_
