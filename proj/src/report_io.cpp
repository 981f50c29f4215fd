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

#include "hetnet/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>

#include <json.hpp>

#include "hetnet/error.hpp"

namespace hetnet {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ordered_json tiers_json(const TierStats& t) {
  ordered_json out = ordered_json::object();
  for (int k = 0; k < kNumTiers; ++k) {
    out[std::string(tier_name(static_cast<Tier>(k)))] = {{"mean_users", t.mean_users[k]},
                                                         {"mean_power_w", t.mean_power_w[k]}};
  }
  return out;
}

TierStats tiers_from(const ordered_json& node) {
  TierStats t;
  for (int k = 0; k < kNumTiers; ++k) {
    const auto& e = node.at(std::string(tier_name(static_cast<Tier>(k))));
    t.mean_users[k] = e.at("mean_users").get<double>();
    t.mean_power_w[k] = e.at("mean_power_w").get<double>();
  }
  return t;
}

std::vector<double> mean_trace(const AlgorithmSummary& a) {
  size_t len = 0;
  for (const auto& t : a.traces) len = std::max(len, t.size());
  std::vector<double> out(len, 0.0);
  if (a.traces.empty()) return out;
  for (const auto& t : a.traces) {
    for (size_t k = 0; k < len; ++k) out[k] += t.empty() ? 0.0 : t[std::min(k, t.size() - 1)];
  }
  for (double& v : out) v /= static_cast<double>(a.traces.size());
  return out;
}

}  // namespace

std::string csv_file_stem(std::string_view algorithm) {
  std::string s(algorithm);
  std::replace(s.begin(), s.end(), '+', '_');
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

std::string report_to_json(const RunReport& r) {
  ordered_json doc;
  doc["algorithm"] = r.algorithm;
  doc["utility"] = r.utility;
  doc["upper_bound"] = r.upper_bound;
  doc["utility_trace"] = r.utility_trace;
  doc["stop_reason"] = r.stop_reason;
  doc["iterations"] = {{"outer", r.iterations.outer},
                       {"dgp", r.iterations.dgp},
                       {"ldpc", r.iterations.ldpc},
                       {"icupa", r.iterations.icupa}};
  doc["flags"] = {{"dgp_nonconvergence", r.flags.dgp_nonconvergence},
                  {"ldpc_nonconvergence", r.flags.ldpc_nonconvergence},
                  {"icupa_nonconvergence", r.flags.icupa_nonconvergence},
                  {"iulp_max_iter", r.flags.iulp_max_iter},
                  {"monotonicity_violation", r.flags.monotonicity_violation},
                  {"bound_violation", r.flags.bound_violation}};
  ordered_json counts = ordered_json::object();
  for (int k = 0; k < kNumTiers; ++k)
    counts[std::string(tier_name(static_cast<Tier>(k)))] = r.tier_counts[k];
  doc["tier_counts"] = counts;
  ordered_json bs = ordered_json::array();
  for (size_t i = 0; i < r.state.load.size(); ++i) {
    ordered_json b;
    if (i < r.bs_tiers.size()) b["tier"] = tier_name(r.bs_tiers[i]);
    b["load"] = r.state.load[i];
    b["power_w"] = r.state.power[i];
    bs.push_back(std::move(b));
  }
  doc["bs"] = std::move(bs);
  ordered_json users = ordered_json::array();
  const int nu = r.association.num_users();
  const int nb = r.association.num_bs();
  for (int j = 0; j < nu; ++j) {
    const int i = r.association.serving(j);
    const size_t idx = static_cast<size_t>(i) * nu + j;
    ordered_json u;
    u["serving_bs"] = i;
    u["rate_bps"] = j < static_cast<int>(r.rates.size()) ? r.rates[j] : 0.0;
    if (idx < r.state.fractions.size() && i < nb) u["fraction"] = r.state.fractions[idx];
    if (r.state.has_user_power()) u["power_w"] = r.state.user_power[idx];
    users.push_back(std::move(u));
  }
  doc["users"] = std::move(users);
  return doc.dump(1) + "\n";
}

std::string summary_to_json(const CampaignSummary& s) {
  ordered_json doc;
  doc["realizations"] = s.realizations;
  doc["base_seed"] = s.base_seed;
  doc["config"] = s.config_json.empty() ? ordered_json::object()
                                        : ordered_json::parse(s.config_json);
  ordered_json algos = ordered_json::array();
  for (const auto& a : s.algorithms) {
    ordered_json e;
    e["algorithm"] = a.algorithm;
    e["mean_utility"] = a.mean_utility;
    e["std_utility"] = a.std_utility;
    e["nonconvergence_count"] = a.nonconvergence_count;
    e["invariant_count"] = a.invariant_count;
    e["tiers"] = tiers_json(a.tiers);
    e["utilities"] = a.utilities;
    e["outer_iterations"] = a.outer_iterations;
    e["traces"] = a.traces;
    e["pooled_rates"] = a.pooled_rates;
    algos.push_back(std::move(e));
  }
  doc["algorithms"] = std::move(algos);
  return doc.dump(1) + "\n";
}

std::string timing_to_json(const CampaignSummary& s) {
  ordered_json doc;
  doc["realizations"] = s.realizations;
  doc["wall_clock_s"] = s.wall_clock_s;
  return doc.dump(1) + "\n";
}

CampaignSummary summary_from_json(const std::string& text) {
  CampaignSummary s;
  try {
    const auto doc = ordered_json::parse(text);
    s.realizations = doc.at("realizations").get<int>();
    s.base_seed = doc.at("base_seed").get<std::uint64_t>();
    if (doc.contains("config")) s.config_json = doc["config"].dump();
    for (const auto& e : doc.at("algorithms")) {
      AlgorithmSummary a;
      a.algorithm = e.at("algorithm").get<std::string>();
      a.mean_utility = e.at("mean_utility").get<double>();
      a.std_utility = e.at("std_utility").get<double>();
      a.nonconvergence_count = e.at("nonconvergence_count").get<int>();
      a.invariant_count = e.at("invariant_count").get<int>();
      a.tiers = tiers_from(e.at("tiers"));
      a.utilities = e.at("utilities").get<std::vector<double>>();
      a.outer_iterations = e.at("outer_iterations").get<std::vector<int>>();
      a.traces = e.at("traces").get<std::vector<std::vector<double>>>();
      a.pooled_rates = e.at("pooled_rates").get<std::vector<double>>();
      s.algorithms.push_back(std::move(a));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("summary: ") + e.what());
  }
  return s;
}

std::vector<double> log_grid(std::span<const double> samples, int points) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : samples) {
    if (v > 0.0) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(hi > 0.0)) throw Error(ErrorCode::kEmptySamples, "no positive samples for grid");
  std::vector<double> grid(points);
  if (points == 1 || lo == hi) {
    std::fill(grid.begin(), grid.end(), hi);
    return grid;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < points; ++k) grid[k] = std::exp(a + (b - a) * k / (points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<CsvFile> campaign_csv(const CampaignSummary& s) {
  std::vector<CsvFile> files;

  std::string util = "algorithm,mean_utility,std_utility,nonconvergence,invariant_violations\n";
  for (const auto& a : s.algorithms) {
    util += a.algorithm + "," + num(a.mean_utility) + "," + num(a.std_utility) + "," +
            std::to_string(a.nonconvergence_count) + "," + std::to_string(a.invariant_count) + "\n";
  }
  files.push_back({"utilities.csv", std::move(util)});

  std::string seeds = "seed";
  for (const auto& a : s.algorithms) seeds += "," + a.algorithm;
  seeds += "\n";
  for (int k = 0; k < s.realizations; ++k) {
    seeds += std::to_string(s.base_seed + static_cast<std::uint64_t>(k));
    for (const auto& a : s.algorithms)
      seeds += "," + (k < static_cast<int>(a.utilities.size()) ? num(a.utilities[k]) : "");
    seeds += "\n";
  }
  files.push_back({"per_seed.csv", std::move(seeds)});

  std::vector<double> all;
  for (const auto& a : s.algorithms) all.insert(all.end(), a.pooled_rates.begin(), a.pooled_rates.end());
  if (!all.empty()) {
    const auto grid = log_grid(all, kCdfGridPoints);
    for (const auto& a : s.algorithms) {
      if (a.pooled_rates.empty()) continue;
      const auto cdf = empirical_cdf(a.pooled_rates, grid);
      std::string text = "rate_bps,fraction\n";
      for (size_t k = 0; k < grid.size(); ++k) text += num(grid[k]) + "," + num(cdf[k]) + "\n";
      files.push_back({"cdf_" + csv_file_stem(a.algorithm) + ".csv", std::move(text)});
    }
  }

  const AlgorithmSummary* base = s.find(kBaselineAlgorithm);
  if (base != nullptr && !base->pooled_rates.empty()) {
    for (const auto& a : s.algorithms) {
      if (&a == base || a.pooled_rates.empty()) continue;
      std::string text = "p,gain\n";
      for (int k = 1; k < 100; ++k) {
        const double p = k / 100.0;
        text += num(p) + "," + num(rate_gain(a.pooled_rates, base->pooled_rates, p)) + "\n";
      }
      files.push_back({"gains_" + csv_file_stem(a.algorithm) + ".csv", std::move(text)});
    }
  }

  std::string tiers = "algorithm,tier,mean_users,mean_power_w\n";
  for (const auto& a : s.algorithms) {
    for (int k = 0; k < kNumTiers; ++k) {
      tiers += a.algorithm + "," + std::string(tier_name(static_cast<Tier>(k))) + "," +
               num(a.tiers.mean_users[k]) + "," + num(a.tiers.mean_power_w[k]) + "\n";
    }
  }
  files.push_back({"tiers.csv", std::move(tiers)});

  const double base_mean = base != nullptr ? base->mean_utility : 0.0;
  std::string conv = "algorithm,t,mean_utility,mean_diff_vs_baseline\n";
  for (const auto& a : s.algorithms) {
    const auto trace = mean_trace(a);
    for (size_t t = 0; t < trace.size(); ++t) {
      conv += a.algorithm + "," + std::to_string(t) + "," + num(trace[t]) + "," +
              (base != nullptr ? num(trace[t] - base_mean) : "") + "\n";
    }
  }
  files.push_back({"convergence.csv", std::move(conv)});
  return files;
}

std::vector<CsvFile> run_files(const RunReport& r) {
  std::vector<CsvFile> files;
  files.push_back({"report.json", report_to_json(r)});
  std::string rates = "user,serving_bs,tier,rate_bps\n";
  for (int j = 0; j < r.association.num_users(); ++j) {
    const int i = r.association.serving(j);
    rates += std::to_string(j) + "," + std::to_string(i) + "," +
             (i < static_cast<int>(r.bs_tiers.size()) ? std::string(tier_name(r.bs_tiers[i])) : "") +
             "," + num(j < static_cast<int>(r.rates.size()) ? r.rates[j] : 0.0) + "\n";
  }
  files.push_back({"rates.csv", std::move(rates)});
  std::string trace = "t,utility\n";
  for (size_t t = 0; t < r.utility_trace.size(); ++t)
    trace += std::to_string(t) + "," + num(r.utility_trace[t]) + "\n";
  files.push_back({"trace.csv", std::move(trace)});
  return files;
}

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

void write_campaign(const CampaignSummary& summary, const std::string& dir) {
  ensure_dir(dir);
  write_text_file(join(dir, "summary.json"), summary_to_json(summary));
  write_text_file(join(dir, "timing.json"), timing_to_json(summary));
  for (const auto& f : campaign_csv(summary)) write_text_file(join(dir, f.name), f.text);
}

void write_run(const RunReport& report, const std::string& dir) {
  ensure_dir(dir);
  for (const auto& f : run_files(report)) write_text_file(join(dir, f.name), f.text);
}

void emit_csv(const std::string& dir) {
  const auto summary = summary_from_json(read_text_file(join(dir, "summary.json")));
  for (const auto& f : campaign_csv(summary)) write_text_file(join(dir, f.name), f.text);
}

}  // namespace hetnet
