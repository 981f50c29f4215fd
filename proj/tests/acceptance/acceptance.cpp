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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "hetnet/oracles.hpp"
#include "hetnet/orchestrator.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {
namespace {

int hard_failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail) {
  std::printf("AC%-2d %s  %s: %s\n", id, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++hard_failures;
}

void soft(int id, const char* label, double value, double target) {
  const bool in = std::abs(value - target) <= 0.25 * target;
  std::printf("AC%-2d SOFT  %s mean %.3f %s %.2f +/- 25%%\n", id, label, value,
              in ? "within" : "outside", target);
}

template <typename... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

void suite_criterion(int id, const std::string& title, const oracles::SuiteOutcome& o,
                     double limit_s) {
  const bool fast = o.seconds < limit_s;
  report(id, o.passed && fast, title,
         o.detail + format("; %.1fs (limit %.0fs)", o.seconds, limit_s));
}

void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr int kSeeds = 100;
  int violations = 0, unfinished = 0, quick = 0;
  for (int k = 0; k < kSeeds; ++k) {
    ScenarioConfig c;
    c.rng_seed = 1000 + static_cast<std::uint64_t>(k);
    const auto r = run_algorithm(generate_scenario(c), "iulp");
    for (size_t t = 1; t < r.utility_trace.size(); ++t)
      if (r.utility_trace[t] < r.utility_trace[t - 1] - kMonotoneSlack) ++violations;
    if (r.flags.iulp_max_iter) ++unfinished;
    if (r.iterations.outer <= 5) ++quick;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(6, violations == 0 && unfinished == 0 && quick >= 80 && secs < 600.0, "IULP convergence",
         format("%d monotonicity violations, %d/%d hit T_max, %d/%d within 5 outer "
                "iterations; %.1fs (limit 600s)",
                violations, unfinished, kSeeds, quick, kSeeds, secs));
}

void campaign_criteria(const std::set<int>& wanted) {
  CampaignOptions opts;
  opts.progress = [](int done, int total) {
    if (done % 20 == 0 || done == total) std::fprintf(stderr, "campaign %d/%d\n", done, total);
  };
  const auto s = monte_carlo(ScenarioConfig{}, known_algorithms(), 200, 1, opts);
  const auto& msinr = *s.find("msinr-mp");
  const auto& dgp = *s.find("dgp-mp");
  const auto& iu = *s.find("iulp");
  const auto& msinr_icupa = *s.find("msinr-mp+icupa");
  const auto& iu_icupa = *s.find("iulp+icupa");
  const double secs = s.wall_clock_s;

  if (wanted.contains(7)) {
    report(7, dgp.mean_utility > msinr.mean_utility && secs < 900.0, "DGP-MP above MSINR-MP",
           format("mean DGP-MP %.3f vs MSINR-MP %.3f over %d seeds; %.1fs (limit 900s)",
                  dgp.mean_utility, msinr.mean_utility, s.realizations, secs));
    soft(7, "MSINR-MP", msinr.mean_utility, 26.02);
    soft(7, "DGP-MP", dgp.mean_utility, 40.43);
  }
  if (wanted.contains(8)) {
    int bad_iu = 0, bad_iu_icupa = 0, bad_msinr_icupa = 0;
    for (int k = 0; k < s.realizations; ++k) {
      if (iu.utilities[k] < dgp.utilities[k] - kMonotoneSlack) ++bad_iu;
      if (iu_icupa.utilities[k] < iu.utilities[k] - kMonotoneSlack) ++bad_iu_icupa;
      if (msinr_icupa.utilities[k] < msinr.utilities[k] - kMonotoneSlack) ++bad_msinr_icupa;
    }
    report(8, bad_iu + bad_iu_icupa + bad_msinr_icupa == 0 && secs < 1800.0,
           "per-seed orderings",
           format("seeds breaking IULP>=DGP-MP %d, IULP+ICUPA>=IULP %d, "
                  "MSINR-MP+ICUPA>=MSINR-MP %d; %.1fs (limit 1800s)",
                  bad_iu, bad_iu_icupa, bad_msinr_icupa, secs));
    soft(8, "IULP", iu.mean_utility, 105.05);
    soft(8, "IULP+ICUPA", iu_icupa.mean_utility, 109.67);
    soft(8, "MSINR-MP+ICUPA", msinr_icupa.mean_utility, 30.63);
  }
  if (wanted.contains(9)) {
    const double g = rate_gain(iu.pooled_rates, msinr.pooled_rates, 0.1);
    report(9, g >= 1.5 && g <= 3.5, "rate gain at p=0.1",
           format("IULP vs MSINR-MP gain %.3f, band [1.5, 3.5]; gain at p=0.05 %.3f, p=0.5 %.3f",
                  g, rate_gain(iu.pooled_rates, msinr.pooled_rates, 0.05),
                  rate_gain(iu.pooled_rates, msinr.pooled_rates, 0.5)));
  }
  if (wanted.contains(10)) {
    const double m = msinr.tiers.mean_users[0];
    const double d = dgp.tiers.mean_users[0];
    const double i = iu.tiers.mean_users[0];
    report(10, m > d && m > i, "macro offload",
           format("mean macro users MSINR-MP %.2f, DGP-MP %.2f, IULP %.2f", m, d, i));
  }
}

}  // namespace
}  // namespace hetnet

int main(int argc, char** argv) {
  using namespace hetnet;
  std::set<int> wanted;
  for (int k = 1; k < argc; ++k) wanted.insert(std::atoi(argv[k]));
  if (wanted.empty())
    for (int k = 1; k <= 10; ++k) wanted.insert(k);

  if (wanted.contains(1))
    suite_criterion(1, "resource allocation vs simplex grid", oracles::allocation_suite(), 5.0);
  if (wanted.contains(2))
    suite_criterion(2, "DGP vs exhaustive association", oracles::association_suite(), 10.0);
  if (wanted.contains(3))
    suite_criterion(3, "binary loads vs load/power grid", oracles::binary_load_suite(), 60.0);
  if (wanted.contains(4))
    suite_criterion(4, "load/power solver vs power grid", oracles::power_grid_suite(), 120.0);
  if (wanted.contains(5)) suite_criterion(5, "ICUPA cells", oracles::icupa_suite(), 60.0);
  if (wanted.contains(6)) criterion6();
  if (wanted.contains(7) || wanted.contains(8) || wanted.contains(9) || wanted.contains(10))
    campaign_criteria(wanted);
  return hard_failures == 0 ? 0 : 1;
}
