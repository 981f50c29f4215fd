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

#include "hetnet/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "hetnet/error.hpp"

namespace hetnet {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kConfigKeys[] = {
    "macro_count", "pico_count",          "femto_count",     "tier_power_dbm",
    "bs_positions", "cell_radius_m",      "user_count",      "high_priority_count",
    "priority_values", "shadow_std_db",   "noise_dbm",       "K",
    "B_hz",         "rng_seed"};

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::kConfig, what);
}

[[noreturn]] void parse_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, where + ": " + what);
}

template <typename T>
T config_value(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("config field '") + key + "': " + e.what());
  }
}

Point parse_point(const nlohmann::json& node, const std::string& where, bool config) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
    if (config) config_error(where + ": expected [x, y]");
    parse_error(where, "expected [x, y] in meters");
  }
  return {node[0].get<double>(), node[1].get<double>()};
}

double number_field(const nlohmann::json& node, const char* key, const std::string& where,
                    const char* meaning) {
  if (!node.contains(key))
    parse_error(where + "." + key, std::string("missing field (") + meaning + ")");
  const auto& v = node.at(key);
  if (!v.is_number())
    parse_error(where + "." + key, std::string("expected a number (") + meaning + ")");
  return v.get<double>();
}

std::vector<double> gains_from_geometry(const std::vector<Tier>& tiers,
                                        const Placement& placement) {
  const size_t ni = placement.bs_xy.size();
  const size_t nj = placement.user_xy.size();
  std::vector<double> gains(ni * nj);
  for (size_t i = 0; i < ni; ++i)
    for (size_t j = 0; j < nj; ++j) {
      const double dist = std::hypot(placement.bs_xy[i].x - placement.user_xy[j].x,
                                     placement.bs_xy[i].y - placement.user_xy[j].y);
      gains[i * nj + j] = std::pow(10.0, -pathloss_db(tiers[i], dist) / 10.0);
    }
  return gains;
}

std::vector<Point> ring(int count, double radius, double phase) {
  std::vector<Point> pts;
  for (int k = 0; k < count; ++k) {
    const double a = phase + 2.0 * std::numbers::pi * k / count;
    pts.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return pts;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (macro_count < 0 || pico_count < 0 || femto_count < 0)
    config_error("BS counts must be nonnegative");
  if (num_bs() == 0) config_error("at least one BS is required");
  if (user_count <= 0) config_error("user_count must be positive");
  if (high_priority_count < 0 || high_priority_count > user_count)
    config_error("high_priority_count must lie in [0, user_count]");
  if (!(cell_radius_m > 0.0)) config_error("cell_radius_m must be positive");
  if (!(shadow_std_db >= 0.0)) config_error("shadow_std_db must be nonnegative");
  if (!(priority_high > 0.0 && priority_low > 0.0)) config_error("priorities must be positive");
  if (rb_count <= 0) config_error("K must be positive");
  if (!(rb_bandwidth_hz > 0.0)) config_error("B_hz must be positive");
  for (double p : tier_power_dbm)
    if (!std::isfinite(p)) config_error("tier powers must be finite");
  if (!std::isfinite(noise_dbm)) config_error("noise_dbm must be finite");
  if (bs_positions && static_cast<int>(bs_positions->size()) != num_bs())
    config_error("bs_positions must list one point per BS");
}

double pathloss_db(Tier tier, double distance_m) {
  const double d = std::max(distance_m, kMinLinkDistanceM);
  if (tier == Tier::kFemto) return 37.0 + 30.0 * std::log10(d);
  return 34.0 + 40.0 * std::log10(d);
}

double dbm_to_watt(double x_dbm) { return std::pow(10.0, (x_dbm - 30.0) / 10.0); }

std::vector<Point> default_layout(const ScenarioConfig& config) {
  const double r = config.cell_radius_m;
  std::vector<Point> pts;
  if (config.macro_count > 0) {
    pts.push_back({0.0, 0.0});
    for (const auto& p : ring(config.macro_count - 1, r, 0.0)) pts.push_back(p);
  }
  for (const auto& p : ring(config.pico_count, r / 2.0, 0.0)) pts.push_back(p);
  for (const auto& p : ring(config.femto_count, r / 2.0, std::numbers::pi / 2.0))
    pts.push_back(p);
  return pts;
}

Scenario generate_scenario(const ScenarioConfig& config) {
  config.validate();
  Scenario s;
  s.num_bs = config.num_bs();
  s.num_users = config.user_count;
  for (int k = 0; k < config.macro_count; ++k) s.tiers.push_back(Tier::kMacro);
  for (int k = 0; k < config.pico_count; ++k) s.tiers.push_back(Tier::kPico);
  for (int k = 0; k < config.femto_count; ++k) s.tiers.push_back(Tier::kFemto);
  for (Tier t : s.tiers) {
    s.max_power_dbm.push_back(config.tier_power_dbm[static_cast<int>(t)]);
    s.max_power.push_back(dbm_to_watt(s.max_power_dbm.back()));
  }
  s.noise_dbm = config.noise_dbm;
  s.noise = dbm_to_watt(config.noise_dbm);
  s.rb_count = config.rb_count;
  s.rb_bandwidth_hz = config.rb_bandwidth_hz;
  s.placement.bs_xy = config.bs_positions ? *config.bs_positions : default_layout(config);

  std::mt19937_64 rng(config.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int j = 0; j < s.num_users; ++j) {
    const double rad = config.cell_radius_m * std::sqrt(unit(rng));
    const double ang = 2.0 * std::numbers::pi * unit(rng);
    s.placement.user_xy.push_back({rad * std::cos(ang), rad * std::sin(ang)});
  }
  s.gains = gains_from_geometry(s.tiers, s.placement);
  if (config.shadow_std_db > 0.0) {
    std::normal_distribution<double> shadow(0.0, config.shadow_std_db);
    for (double& g : s.gains) g *= std::pow(10.0, -shadow(rng) / 10.0);
  }
  std::vector<int> order(s.num_users);
  for (int j = 0; j < s.num_users; ++j) order[j] = j;
  // Partial Fisher-Yates: the first high_priority_count slots form the subset.
  for (int k = 0; k < config.high_priority_count; ++k) {
    std::uniform_int_distribution<int> pick(k, s.num_users - 1);
    std::swap(order[k], order[pick(rng)]);
  }
  s.priorities.assign(s.num_users, config.priority_low);
  for (int k = 0; k < config.high_priority_count; ++k) s.priorities[order[k]] = config.priority_high;
  s.validate();
  return s;
}

ScenarioConfig parse_config_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) config_error("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* k : kConfigKeys) known = known || key == k;
    if (!known) config_error("unknown config key '" + key + "'");
  }
  ScenarioConfig c;
  c.macro_count = config_value(doc, "macro_count", c.macro_count);
  c.pico_count = config_value(doc, "pico_count", c.pico_count);
  c.femto_count = config_value(doc, "femto_count", c.femto_count);
  if (doc.contains("tier_power_dbm")) {
    const auto& t = doc.at("tier_power_dbm");
    if (!t.is_object()) config_error("tier_power_dbm must map tier names to dBm");
    for (const auto& [key, value] : t.items()) {
      Tier tier;
      try {
        tier = parse_tier(key);
      } catch (const Error&) {
        config_error("tier_power_dbm: unknown tier '" + key + "'");
      }
      if (!value.is_number()) config_error("tier_power_dbm." + key + " must be a number");
      c.tier_power_dbm[static_cast<int>(tier)] = value.get<double>();
    }
  }
  if (doc.contains("bs_positions")) {
    const auto& arr = doc.at("bs_positions");
    if (!arr.is_array()) config_error("bs_positions must be an array");
    std::vector<Point> pts;
    for (size_t k = 0; k < arr.size(); ++k)
      pts.push_back(parse_point(arr[k], "bs_positions[" + std::to_string(k) + "]", true));
    c.bs_positions = std::move(pts);
  }
  c.cell_radius_m = config_value(doc, "cell_radius_m", c.cell_radius_m);
  c.user_count = config_value(doc, "user_count", c.user_count);
  c.high_priority_count = config_value(doc, "high_priority_count", c.high_priority_count);
  if (doc.contains("priority_values")) {
    const auto& pv = doc.at("priority_values");
    c.priority_high = config_value(pv, "high", c.priority_high);
    c.priority_low = config_value(pv, "low", c.priority_low);
  }
  c.shadow_std_db = config_value(doc, "shadow_std_db", c.shadow_std_db);
  c.noise_dbm = config_value(doc, "noise_dbm", c.noise_dbm);
  c.rb_count = config_value(doc, "K", c.rb_count);
  c.rb_bandwidth_hz = config_value(doc, "B_hz", c.rb_bandwidth_hz);
  c.rng_seed = config_value(doc, "rng_seed", c.rng_seed);
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  try {
    return parse_config_json(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) config_error("cannot read config '" + path + "'");
    throw;
  }
}

std::string config_to_json(const ScenarioConfig& c) {
  ordered_json doc;
  doc["macro_count"] = c.macro_count;
  doc["pico_count"] = c.pico_count;
  doc["femto_count"] = c.femto_count;
  doc["tier_power_dbm"] = {{"macro", c.tier_power_dbm[0]},
                           {"pico", c.tier_power_dbm[1]},
                           {"femto", c.tier_power_dbm[2]}};
  if (c.bs_positions) {
    doc["bs_positions"] = ordered_json::array();
    for (const auto& p : *c.bs_positions) doc["bs_positions"].push_back({p.x, p.y});
  }
  doc["cell_radius_m"] = c.cell_radius_m;
  doc["user_count"] = c.user_count;
  doc["high_priority_count"] = c.high_priority_count;
  doc["priority_values"] = {{"high", c.priority_high}, {"low", c.priority_low}};
  doc["shadow_std_db"] = c.shadow_std_db;
  doc["noise_dbm"] = c.noise_dbm;
  doc["K"] = c.rb_count;
  doc["B_hz"] = c.rb_bandwidth_hz;
  doc["rng_seed"] = c.rng_seed;
  return doc.dump(2) + "\n";
}

Scenario parse_scenario_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error("document", e.what());
  }
  if (!doc.is_object()) parse_error("document", "expected a JSON object");
  Scenario s;
  if (!doc.contains("bs") || !doc.at("bs").is_array() || doc.at("bs").empty())
    parse_error("bs", "missing or empty base-station array");
  if (!doc.contains("users") || !doc.at("users").is_array() || doc.at("users").empty())
    parse_error("users", "missing or empty user array");
  const auto& bs = doc.at("bs");
  const auto& users = doc.at("users");
  const bool has_gains = doc.contains("gains");
  bool has_geometry = true;
  s.num_bs = static_cast<int>(bs.size());
  s.num_users = static_cast<int>(users.size());
  for (size_t i = 0; i < bs.size(); ++i) {
    const std::string where = "bs[" + std::to_string(i) + "]";
    const auto& node = bs[i];
    if (!node.is_object()) parse_error(where, "expected an object");
    if (!node.contains("tier") || !node.at("tier").is_string())
      parse_error(where + ".tier", "missing tier name (tiers)");
    try {
      s.tiers.push_back(parse_tier(node.at("tier").get<std::string>()));
    } catch (const Error&) {
      parse_error(where + ".tier", "unknown tier (tiers)");
    }
    s.max_power_dbm.push_back(number_field(node, "power_dbm", where, "max powers"));
    s.max_power.push_back(dbm_to_watt(s.max_power_dbm.back()));
    if (node.contains("xy"))
      s.placement.bs_xy.push_back(parse_point(node.at("xy"), where + ".xy", false));
    else
      has_geometry = false;
  }
  for (size_t j = 0; j < users.size(); ++j) {
    const std::string where = "users[" + std::to_string(j) + "]";
    const auto& node = users[j];
    if (!node.is_object()) parse_error(where, "expected an object");
    s.priorities.push_back(number_field(node, "priority", where, "priorities"));
    if (node.contains("xy"))
      s.placement.user_xy.push_back(parse_point(node.at("xy"), where + ".xy", false));
    else
      has_geometry = false;
  }
  s.noise_dbm = number_field(doc, "noise_dbm", "document", "noise power");
  s.noise = dbm_to_watt(s.noise_dbm);
  const double k = number_field(doc, "K", "document", "resource-block count");
  if (k != std::floor(k)) parse_error("K", "expected an integer");
  s.rb_count = static_cast<int>(k);
  s.rb_bandwidth_hz = number_field(doc, "B_hz", "document", "resource-block bandwidth");
  if (has_gains) {
    const auto& rows = doc.at("gains");
    if (!rows.is_array() || rows.size() != bs.size())
      parse_error("gains", "expected one row per BS");
    for (size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != users.size())
        parse_error("gains[" + std::to_string(i) + "]", "expected one entry per user");
      for (size_t j = 0; j < users.size(); ++j) {
        if (!rows[i][j].is_number())
          parse_error("gains[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                      "expected a number");
        s.gains.push_back(rows[i][j].get<double>());
      }
    }
  } else if (has_geometry) {
    s.gains = gains_from_geometry(s.tiers, s.placement);
  } else {
    parse_error("gains", "required when coordinates are absent");
  }
  if (!has_geometry) s.placement = {};
  try {
    s.validate();
  } catch (const Error& e) {
    parse_error("document", e.what());
  }
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  const bool geometry = s.placement.bs_xy.size() == static_cast<size_t>(s.num_bs) &&
                        s.placement.user_xy.size() == static_cast<size_t>(s.num_users);
  ordered_json doc;
  doc["K"] = s.rb_count;
  doc["B_hz"] = s.rb_bandwidth_hz;
  doc["noise_dbm"] = s.noise_dbm;
  doc["bs"] = ordered_json::array();
  for (int i = 0; i < s.num_bs; ++i) {
    ordered_json node;
    node["tier"] = std::string(tier_name(s.tiers[i]));
    node["power_dbm"] = s.max_power_dbm[i];
    if (geometry) node["xy"] = {s.placement.bs_xy[i].x, s.placement.bs_xy[i].y};
    doc["bs"].push_back(node);
  }
  doc["users"] = ordered_json::array();
  for (int j = 0; j < s.num_users; ++j) {
    ordered_json node;
    if (geometry) node["xy"] = {s.placement.user_xy[j].x, s.placement.user_xy[j].y};
    node["priority"] = s.priorities[j];
    doc["users"].push_back(node);
  }
  doc["gains"] = ordered_json::array();
  for (int i = 0; i < s.num_bs; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < s.num_users; ++j) row.push_back(s.gain(i, j));
    doc["gains"].push_back(row);
  }
  return doc.dump(1) + "\n";
}

Scenario load_scenario(const std::string& path) {
  return parse_scenario_json(read_text_file(path));
}

void save_scenario(const std::string& path, const Scenario& scenario) {
  write_text_file(path, scenario_to_json(scenario));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

}  // namespace hetnet
