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

#include "hetnet/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "hetnet/error.hpp"

namespace hetnet {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  Association association;
  NetworkState state;
  std::vector<double> trace;
  IterationCounters iterations;
  RunFlags flags;
  std::string stop_reason;
};

double elapsed(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Max-SINR association at full power with loads from the association.
Outcome max_sinr_outcome(const Scenario& sc) {
  const std::vector<double> ones(sc.num_bs, 1.0);
  Outcome out;
  out.association = max_sinr_associate(sc, ones, sc.max_power);
  auto load = derive_load_from_association(out.association);
  std::vector<double> power(sc.num_bs);
  for (int i = 0; i < sc.num_bs; ++i) power[i] = sc.max_power[i] * load[i];
  out.trace.push_back(weighted_utility(sc, out.association, load, power));
  out.state = make_state(sc, out.association, std::move(load), std::move(power));
  out.stop_reason = "closed-form";
  return out;
}

void check_trace(Outcome& out) {
  for (size_t t = 1; t < out.trace.size(); ++t)
    if (out.trace[t] < out.trace[t - 1] - kMonotoneSlack) out.flags.monotonicity_violation = true;
}

// One DGP pass at the current loads and powers; the result never scores below
// the incumbent association.
DgpResult association_step(const Scenario& sc, const Outcome& from, const DgpOptions& base) {
  DgpOptions opt = base;
  opt.incumbent = from.association;
  const auto coeffs = compute_coefficients(sc, from.state.load, from.state.power);
  return dgp_associate(coeffs, sc.priorities, opt);
}

Outcome dgp_mp_outcome(const Scenario& sc, const Outcome& base, const IulpOptions& opt) {
  Outcome out = base;
  const auto dr = association_step(sc, base, opt.dgp);
  out.iterations.dgp = dr.iterations;
  out.flags.dgp_nonconvergence = !dr.converged;
  out.association = dr.association;
  auto load = derive_load_from_association(out.association);
  std::vector<double> power(sc.num_bs);
  for (int i = 0; i < sc.num_bs; ++i) power[i] = sc.max_power[i] * load[i];
  out.trace.push_back(weighted_utility(sc, out.association, load, power));
  out.state = make_state(sc, out.association, std::move(load), std::move(power));
  out.iterations.outer = 1;
  out.stop_reason = std::string("dgp-") + std::string(dgp_stop_name(dr.stop));
  check_trace(out);
  return out;
}

Outcome iulp_outcome(const Scenario& sc, const Outcome& base, const IulpOptions& opt) {
  Outcome out = base;
  double prev = out.trace.back();
  out.stop_reason = "t-max";
  out.flags.iulp_max_iter = true;
  for (int t = 1; t <= opt.t_max; ++t) {
    const auto dr = association_step(sc, out, opt.dgp);
    out.iterations.dgp += dr.iterations;
    out.flags.dgp_nonconvergence = out.flags.dgp_nonconvergence || !dr.converged;
    LdpcOptions lopt = opt.ldpc;
    lopt.warm_power = out.state.power;
    const auto lr = ldpc_solve(sc, dr.association, lopt);
    out.iterations.ldpc += lr.iterations;
    out.flags.ldpc_nonconvergence = out.flags.ldpc_nonconvergence || !lr.converged;
    out.association = dr.association;
    out.state = lr.state;
    out.trace.push_back(lr.utility);
    out.iterations.outer = t;
    const double value = lr.utility;
    const double rel = std::abs(value - prev) / std::max(std::abs(prev), 1e-12);
    prev = value;
    if (rel < opt.xi) {
      out.stop_reason = "converged";
      out.flags.iulp_max_iter = false;
      break;
    }
  }
  check_trace(out);
  return out;
}

Outcome icupa_outcome(const Scenario& sc, const Outcome& base, const IulpOptions& opt) {
  Outcome out = base;
  const auto ir = icupa_all(sc, base.association, base.state, opt.icupa);
  out.state = ir.state;
  out.iterations.icupa = ir.iterations;
  out.flags.icupa_nonconvergence = !ir.converged;
  out.stop_reason = base.stop_reason + "+icupa";
  return out;
}

RunReport make_report(const Scenario& sc, std::string_view algo, const Outcome& out,
                      double seconds) {
  RunReport r;
  r.algorithm = std::string(algo);
  r.utility_trace = out.trace;
  r.association = out.association;
  r.state = out.state;
  r.rates = user_rates(sc, out.state, out.association);
  r.utility = utility_of_rates(r.rates, sc.priorities);
  r.upper_bound = utility_upper_bound(sc);
  r.bs_tiers = sc.tiers;
  r.tier_counts = tier_user_counts(sc, out.association);
  r.iterations = out.iterations;
  r.flags = out.flags;
  r.stop_reason = out.stop_reason;
  r.wall_clock_s = seconds;
  if (r.utility > r.upper_bound + kMonotoneSlack) r.flags.bound_violation = true;
  for (double v : r.utility_trace)
    if (v > r.upper_bound + kMonotoneSlack) r.flags.bound_violation = true;
  return r;
}

}  // namespace

void IulpOptions::validate() const {
  if (!(xi > 0.0)) throw Error(ErrorCode::kConfig, "xi must be positive");
  if (t_max < 1) throw Error(ErrorCode::kConfig, "tmax must be at least 1");
  if (!(ldpc.kkt_tol > 0.0)) throw Error(ErrorCode::kConfig, "kkt tolerance must be positive");
  if (!(ldpc.T > 0.0)) throw Error(ErrorCode::kConfig, "T must be positive");
}

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names = {"msinr-mp", "dgp-mp", "iulp", "msinr-mp+icupa",
                                                 "iulp+icupa"};
  return names;
}

std::vector<std::string> parse_algorithm_list(std::string_view list) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= list.size()) {
    const size_t comma = list.find(',', start);
    const size_t end = comma == std::string_view::npos ? list.size() : comma;
    std::string name(list.substr(start, end - start));
    const auto& known = known_algorithms();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw Error(ErrorCode::kUnknownAlgorithm, "unknown algorithm '" + name + "'");
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

RunReport iulp(const Scenario& scenario, const IulpOptions& options) {
  return run_algorithm(scenario, "iulp", options);
}

RunReport run_algorithm(const Scenario& scenario, std::string_view algo,
                        const IulpOptions& options) {
  const std::vector<std::string> one = parse_algorithm_list(algo);
  return run_algorithms(scenario, one, options).front();
}

std::vector<RunReport> run_algorithms(const Scenario& sc, std::span<const std::string> algos,
                                      const IulpOptions& options) {
  options.validate();
  sc.validate();
  for (const auto& a : algos) parse_algorithm_list(a);
  auto want = [&](std::string_view name) {
    return std::find(algos.begin(), algos.end(), name) != algos.end();
  };
  std::vector<RunReport> reports;

  const auto t0 = Clock::now();
  const Outcome msinr = max_sinr_outcome(sc);
  const double msinr_s = elapsed(t0);
  std::optional<Outcome> iulp_out;
  double iulp_s = 0.0;
  if (want("iulp") || want("iulp+icupa")) {
    const auto t1 = Clock::now();
    iulp_out = iulp_outcome(sc, msinr, options);
    iulp_s = elapsed(t1);
  }
  for (const auto& name : algos) {
    const auto t1 = Clock::now();
    if (name == "msinr-mp") {
      reports.push_back(make_report(sc, name, msinr, msinr_s));
    } else if (name == "dgp-mp") {
      const Outcome o = dgp_mp_outcome(sc, msinr, options);
      reports.push_back(make_report(sc, name, o, msinr_s + elapsed(t1)));
    } else if (name == "iulp") {
      reports.push_back(make_report(sc, name, *iulp_out, msinr_s + iulp_s));
    } else if (name == "msinr-mp+icupa") {
      const Outcome o = icupa_outcome(sc, msinr, options);
      reports.push_back(make_report(sc, name, o, msinr_s + elapsed(t1)));
    } else if (name == "iulp+icupa") {
      const Outcome o = icupa_outcome(sc, *iulp_out, options);
      reports.push_back(make_report(sc, name, o, msinr_s + iulp_s + elapsed(t1)));
    }
  }
  return reports;
}

std::vector<double> empirical_cdf(std::span<const double> samples, std::span<const double> grid) {
  if (samples.empty()) throw Error(ErrorCode::kEmptySamples, "CDF of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(grid.size());
  const double n = static_cast<double>(sorted.size());
  for (double r : grid) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), r);
    out.push_back(static_cast<double>(it - sorted.begin()) / n);
  }
  return out;
}

double empirical_quantile(std::span<const double> samples, double p) {
  if (samples.empty()) throw Error(ErrorCode::kEmptySamples, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kDomain, "quantile level outside [0, 1]");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double rate_gain(std::span<const double> samples, std::span<const double> base, double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::kDomain, "rate gain level outside (0, 1)");
  const double qb = empirical_quantile(base, p);
  if (qb == 0.0) throw Error(ErrorCode::kDegenerateQuantile, "baseline quantile is zero");
  return empirical_quantile(samples, p) / qb;
}

TierStats per_tier_stats(std::span<const RunReport> reports) {
  TierStats s;
  if (reports.empty()) return s;
  for (const auto& r : reports) {
    std::array<double, kNumTiers> power{};
    std::array<int, kNumTiers> count{};
    for (size_t i = 0; i < r.bs_tiers.size(); ++i) {
      const int t = static_cast<int>(r.bs_tiers[i]);
      power[t] += r.state.power[i];
      ++count[t];
    }
    for (int t = 0; t < kNumTiers; ++t) {
      s.mean_users[t] += r.tier_counts[t];
      if (count[t] > 0) s.mean_power_w[t] += power[t] / count[t];
    }
  }
  const double n = static_cast<double>(reports.size());
  for (int t = 0; t < kNumTiers; ++t) {
    s.mean_users[t] /= n;
    s.mean_power_w[t] /= n;
  }
  return s;
}

const AlgorithmSummary* CampaignSummary::find(std::string_view algo) const {
  for (const auto& a : algorithms)
    if (a.algorithm == algo) return &a;
  return nullptr;
}

CampaignSummary monte_carlo(const ScenarioConfig& config, std::span<const std::string> algos,
                            int n, std::uint64_t base_seed, const CampaignOptions& options) {
  if (n < 1) throw Error(ErrorCode::kConfig, "campaign needs at least one realization");
  config.validate();
  options.solver.validate();
  for (const auto& a : algos) parse_algorithm_list(a);
  const auto t0 = Clock::now();

  // Per seed, per algorithm.
  std::vector<std::vector<RunReport>> results(n);
  std::atomic<int> next{0};
  std::atomic<int> finished{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const int k = next.fetch_add(1);
      if (k >= n) return;
      try {
        ScenarioConfig c = config;
        c.rng_seed = base_seed + static_cast<std::uint64_t>(k);
        const Scenario sc = generate_scenario(c);
        auto reports = run_algorithms(sc, algos, options.solver);
        for (auto& r : reports) {
          // Keep what the summary needs.
          r.state.fractions.clear();
          r.state.user_power.clear();
        }
        results[k] = std::move(reports);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
      const int d = finished.fetch_add(1) + 1;
      if (options.progress) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        options.progress(d, n);
      }
    }
  };
  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  CampaignSummary summary;
  summary.realizations = n;
  summary.base_seed = base_seed;
  summary.config_json = config_to_json(config);
  for (size_t a = 0; a < algos.size(); ++a) {
    AlgorithmSummary s;
    s.algorithm = algos[a];
    std::vector<RunReport> column;
    column.reserve(n);
    for (int k = 0; k < n; ++k) {
      const RunReport& r = results[k][a];
      s.utilities.push_back(r.utility);
      s.outer_iterations.push_back(r.iterations.outer);
      s.pooled_rates.insert(s.pooled_rates.end(), r.rates.begin(), r.rates.end());
      s.traces.push_back(r.utility_trace);
      s.nonconvergence_count += r.flags.nonconvergence() ? 1 : 0;
      s.invariant_count += r.flags.invariant_violation() ? 1 : 0;
      column.push_back(r);
    }
    s.tiers = per_tier_stats(column);
    s.mean_utility = std::accumulate(s.utilities.begin(), s.utilities.end(), 0.0) / n;
    double ss = 0.0;
    for (double u : s.utilities) ss += (u - s.mean_utility) * (u - s.mean_utility);
    s.std_utility = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    summary.algorithms.push_back(std::move(s));
  }
  summary.wall_clock_s = elapsed(t0);
  return summary;
}

}  // namespace hetnet
