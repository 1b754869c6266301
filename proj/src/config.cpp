// SPDX-License-Identifier: Apache-2.0

#include "hetnet/config.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "json.hpp"

namespace hetnet {

using nlohmann::json;

std::string_view to_string(CeeMode mode) {
  return mode == CeeMode::relative ? "relative" : "absolute";
}

std::string_view to_string(SplitMode mode) {
  return mode == SplitMode::linear_split ? "linear_split" : "noise_scaled";
}

std::string_view to_string(ChannelProfile profile) {
  return profile == ChannelProfile::table1 ? "table1" : "powerlaw";
}

CeeMode parse_cee_mode(std::string_view text) {
  if (text == "relative") return CeeMode::relative;
  if (text == "absolute") return CeeMode::absolute;
  throw ConfigError(ConfigError::Kind::validation, "cee_mode",
                    "must be 'relative' or 'absolute', got '" + std::string(text) + "'");
}

SplitMode parse_split_mode(std::string_view text) {
  if (text == "linear_split") return SplitMode::linear_split;
  if (text == "noise_scaled") return SplitMode::noise_scaled;
  throw ConfigError(ConfigError::Kind::validation, "bandwidth_split_mode",
                    "must be 'linear_split' or 'noise_scaled', got '" + std::string(text) + "'");
}

ChannelProfile parse_channel_profile(std::string_view text) {
  if (text == "table1") return ChannelProfile::table1;
  if (text == "powerlaw") return ChannelProfile::powerlaw;
  throw ConfigError(ConfigError::Kind::validation, "channel_profile",
                    "must be 'table1' or 'powerlaw', got '" + std::string(text) + "'");
}

ConfigError::ConfigError(Kind kind, std::string field, const std::string& message)
    : std::runtime_error((kind == Kind::parse ? "config parse error at '" : "config validation error at '") +
                         field + "': " + message),
      kind_(kind),
      field_(std::move(field)) {}

namespace {

[[noreturn]] void parse_fail(const std::string& key, const std::string& what) {
  throw ConfigError(ConfigError::Kind::parse, key, what);
}

double read_real(const json& value, const std::string& key) {
  if (!value.is_number()) parse_fail(key, "expected a number");
  return value.get<double>();
}

int read_int(const json& value, const std::string& key) {
  if (!value.is_number_integer()) parse_fail(key, "expected an integer");
  const auto v = value.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    parse_fail(key, "integer out of range");
  }
  return static_cast<int>(v);
}

std::string read_string(const json& value, const std::string& key) {
  if (!value.is_string()) parse_fail(key, "expected a string");
  return value.get<std::string>();
}

using Setter = std::function<void(SimulationConfig&, const json&, const std::string&)>;

template <typename Member>
Setter real_field(Member member) {
  return [member](SimulationConfig& c, const json& v, const std::string& k) { c.*member = read_real(v, k); };
}

template <typename Member>
Setter int_field(Member member) {
  return [member](SimulationConfig& c, const json& v, const std::string& k) { c.*member = read_int(v, k); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid_dim", int_field(&SimulationConfig::grid_dim)},
      {"site_distance_m", real_field(&SimulationConfig::site_distance_m)},
      {"n_bs_antennas", int_field(&SimulationConfig::n_bs_antennas)},
      {"n_sc_antennas", int_field(&SimulationConfig::n_sc_antennas)},
      {"k_mcu_per_cell", int_field(&SimulationConfig::k_mcu_per_cell)},
      {"s_sc_per_cell", int_field(&SimulationConfig::s_sc_per_cell)},
      {"p_mcu_dbm", real_field(&SimulationConfig::p_mcu_dbm)},
      {"p_scu_dbm", real_field(&SimulationConfig::p_scu_dbm)},
      {"p_bs_dbm", real_field(&SimulationConfig::p_bs_dbm)},
      {"p_sc_dbm", real_field(&SimulationConfig::p_sc_dbm)},
      {"carrier_frequency_hz", real_field(&SimulationConfig::carrier_frequency_hz)},
      {"noise_psd_dbm_hz", real_field(&SimulationConfig::noise_psd_dbm_hz)},
      {"bandwidth_hz", real_field(&SimulationConfig::bandwidth_hz)},
      {"tdd_ul_fraction", real_field(&SimulationConfig::tdd_ul_fraction)},
      {"sigma_e2_list",
       [](SimulationConfig& c, const json& v, const std::string& k) {
         if (!v.is_array()) parse_fail(k, "expected an array of numbers");
         c.sigma_e2_list.clear();
         for (const auto& item : v) c.sigma_e2_list.push_back(read_real(item, k));
       }},
      {"cee_mode",
       [](SimulationConfig& c, const json& v, const std::string& k) {
         c.cee_mode = parse_cee_mode(read_string(v, k));
       }},
      {"scu_drop_radius_m", real_field(&SimulationConfig::scu_drop_radius_m)},
      {"min_link_distance_m", real_field(&SimulationConfig::min_link_distance_m)},
      {"shadow_std_bs_db", real_field(&SimulationConfig::shadow_std_bs_db)},
      {"shadow_std_sc_los_db", real_field(&SimulationConfig::shadow_std_sc_los_db)},
      {"shadow_std_sc_nlos_db", real_field(&SimulationConfig::shadow_std_sc_nlos_db)},
      {"channel_profile",
       [](SimulationConfig& c, const json& v, const std::string& k) {
         c.channel_profile = parse_channel_profile(read_string(v, k));
       }},
      {"powerlaw_exponent", real_field(&SimulationConfig::powerlaw_exponent)},
      {"n_realizations", int_field(&SimulationConfig::n_realizations)},
      {"seed",
       [](SimulationConfig& c, const json& v, const std::string& k) {
         if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
           parse_fail(k, "expected a non-negative 64-bit integer");
         }
         c.seed = v.get<std::uint64_t>();
       }},
      {"bandwidth_split_mode",
       [](SimulationConfig& c, const json& v, const std::string& k) {
         c.bandwidth_split_mode = parse_split_mode(read_string(v, k));
       }},
      {"rate_region_points", int_field(&SimulationConfig::rate_region_points)},
  };
  return table;
}

void require(bool ok, const char* field, const std::string& constraint) {
  if (!ok) throw ConfigError(ConfigError::Kind::validation, field, constraint);
}

}  // namespace

SimulationConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(ConfigError::Kind::parse, "<document>", e.what());
  }
  if (!doc.is_object()) parse_fail("<document>", "top level must be a JSON object");

  SimulationConfig config;
  const auto& table = setters();
  for (const auto& [key, value] : doc.items()) {
    const auto it = table.find(key);
    if (it == table.end()) {
      throw ConfigError(ConfigError::Kind::validation, key, "unknown key");
    }
    it->second(config, value, key);
  }
  validate_config(config);
  return config;
}

std::string render_config(const SimulationConfig& c) {
  json doc = {
      {"grid_dim", c.grid_dim},
      {"site_distance_m", c.site_distance_m},
      {"n_bs_antennas", c.n_bs_antennas},
      {"n_sc_antennas", c.n_sc_antennas},
      {"k_mcu_per_cell", c.k_mcu_per_cell},
      {"s_sc_per_cell", c.s_sc_per_cell},
      {"p_mcu_dbm", c.p_mcu_dbm},
      {"p_scu_dbm", c.p_scu_dbm},
      {"p_bs_dbm", c.p_bs_dbm},
      {"p_sc_dbm", c.p_sc_dbm},
      {"carrier_frequency_hz", c.carrier_frequency_hz},
      {"noise_psd_dbm_hz", c.noise_psd_dbm_hz},
      {"bandwidth_hz", c.bandwidth_hz},
      {"tdd_ul_fraction", c.tdd_ul_fraction},
      {"sigma_e2_list", c.sigma_e2_list},
      {"cee_mode", to_string(c.cee_mode)},
      {"scu_drop_radius_m", c.scu_drop_radius_m},
      {"min_link_distance_m", c.min_link_distance_m},
      {"shadow_std_bs_db", c.shadow_std_bs_db},
      {"shadow_std_sc_los_db", c.shadow_std_sc_los_db},
      {"shadow_std_sc_nlos_db", c.shadow_std_sc_nlos_db},
      {"channel_profile", to_string(c.channel_profile)},
      {"powerlaw_exponent", c.powerlaw_exponent},
      {"n_realizations", c.n_realizations},
      {"seed", c.seed},
      {"bandwidth_split_mode", to_string(c.bandwidth_split_mode)},
      {"rate_region_points", c.rate_region_points},
  };
  return doc.dump(2);
}

void validate_config(const SimulationConfig& c) {
  require(c.grid_dim >= 1, "grid_dim", "must be >= 1");
  require(std::isfinite(c.site_distance_m) && c.site_distance_m > 0.0, "site_distance_m", "must be > 0");
  require(c.n_bs_antennas >= 1, "n_bs_antennas", "must be >= 1");
  require(c.n_sc_antennas >= 1, "n_sc_antennas", "must be >= 1");
  require(c.k_mcu_per_cell >= 1, "k_mcu_per_cell", "must be >= 1");
  require(c.k_mcu_per_cell <= c.n_bs_antennas, "k_mcu_per_cell", "must satisfy K <= N (n_bs_antennas)");
  require(c.s_sc_per_cell >= 0, "s_sc_per_cell", "must be >= 0");
  require(std::isfinite(c.p_mcu_dbm), "p_mcu_dbm", "must be finite");
  require(std::isfinite(c.p_scu_dbm), "p_scu_dbm", "must be finite");
  require(std::isfinite(c.p_bs_dbm), "p_bs_dbm", "must be finite");
  require(std::isfinite(c.p_sc_dbm), "p_sc_dbm", "must be finite");
  require(std::isfinite(c.carrier_frequency_hz) && c.carrier_frequency_hz > 0.0, "carrier_frequency_hz",
          "must be > 0");
  require(std::isfinite(c.noise_psd_dbm_hz), "noise_psd_dbm_hz", "must be finite");
  require(std::isfinite(c.bandwidth_hz) && c.bandwidth_hz > 0.0, "bandwidth_hz", "must be > 0");
  require(c.tdd_ul_fraction >= 0.0 && c.tdd_ul_fraction <= 1.0, "tdd_ul_fraction", "must lie in [0, 1]");
  for (double s : c.sigma_e2_list) {
    require(std::isfinite(s) && s >= 0.0, "sigma_e2_list", "every variance must be finite and >= 0");
  }
  require(std::isfinite(c.scu_drop_radius_m) && c.scu_drop_radius_m >= 0.0, "scu_drop_radius_m", "must be >= 0");
  require(std::isfinite(c.min_link_distance_m) && c.min_link_distance_m >= 1.0, "min_link_distance_m",
          "must be >= 1 (path-loss formulas are invalid below 1 m)");
  require(std::isfinite(c.shadow_std_bs_db) && c.shadow_std_bs_db >= 0.0, "shadow_std_bs_db", "must be >= 0");
  require(std::isfinite(c.shadow_std_sc_los_db) && c.shadow_std_sc_los_db >= 0.0, "shadow_std_sc_los_db",
          "must be >= 0");
  require(std::isfinite(c.shadow_std_sc_nlos_db) && c.shadow_std_sc_nlos_db >= 0.0, "shadow_std_sc_nlos_db",
          "must be >= 0");
  require(std::isfinite(c.powerlaw_exponent) && c.powerlaw_exponent > 0.0, "powerlaw_exponent", "must be > 0");
  require(c.n_realizations >= 1, "n_realizations", "must be >= 1");
  require(c.rate_region_points >= 2, "rate_region_points", "must be >= 2");
}

std::uint64_t config_hash(const SimulationConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : render_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

double noise_power_watts(double psd_dbm_hz, double bw_hz) {
  return dbm_to_watts(psd_dbm_hz + 10.0 * std::log10(bw_hz));
}

}  // namespace hetnet
