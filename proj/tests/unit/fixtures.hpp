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

#ifndef HETNET_TESTS_FIXTURES_HPP_
#define HETNET_TESTS_FIXTURES_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet::testing {

// Hand-built scenario; gains are row-major I x J, powers and noise in watts.
inline Scenario make_scenario(int num_bs, int num_users, std::vector<double> gains,
                              std::vector<double> power, double noise,
                              std::vector<double> priorities, int rb_count = 1,
                              double rb_bandwidth_hz = 1.0) {
  Scenario s;
  s.num_bs = num_bs;
  s.num_users = num_users;
  s.tiers.assign(num_bs, Tier::kMacro);
  for (int i = 1; i < num_bs; ++i) s.tiers[i] = Tier::kPico;
  s.max_power = std::move(power);
  for (double p : s.max_power) s.max_power_dbm.push_back(10.0 * std::log10(p) + 30.0);
  s.priorities = std::move(priorities);
  s.gains = std::move(gains);
  s.noise = noise;
  s.noise_dbm = 10.0 * std::log10(noise) + 30.0;
  s.rb_count = rb_count;
  s.rb_bandwidth_hz = rb_bandwidth_hz;
  return s;
}

inline ScenarioConfig small_config(int macro, int pico, int femto, int users,
                                   std::uint64_t seed) {
  ScenarioConfig c;
  c.macro_count = macro;
  c.pico_count = pico;
  c.femto_count = femto;
  c.user_count = users;
  c.high_priority_count = users / 3;
  c.rng_seed = seed;
  return c;
}

}  // namespace hetnet::testing

#endif  // HETNET_TESTS_FIXTURES_HPP_
