// SPDX-License-Identifier: Apache-2.0
//
// Simulation configuration: system parameters, run controls and unit helpers.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hetnet {

enum class CeeMode { relative, absolute };
enum class SplitMode { linear_split, noise_scaled };
enum class ChannelProfile { table1, powerlaw };

std::string_view to_string(CeeMode mode);
std::string_view to_string(SplitMode mode);
std::string_view to_string(ChannelProfile profile);
CeeMode parse_cee_mode(std::string_view text);
SplitMode parse_split_mode(std::string_view text);
ChannelProfile parse_channel_profile(std::string_view text);

/// All system parameters of the two-tier uplink plus Monte Carlo run controls.
/// Defaults reproduce the reference scenario (3x3 macro grid, 20 BS antennas,
/// single-antenna small cells, 20 MCUs and 20 small cells per macro cell).
struct SimulationConfig {
  int grid_dim = 3;
  double site_distance_m = 1000.0;
  int n_bs_antennas = 20;
  int n_sc_antennas = 1;
  int k_mcu_per_cell = 20;
  int s_sc_per_cell = 20;

  double p_mcu_dbm = 23.0;
  double p_scu_dbm = 23.0;
  // Downlink powers; recorded, never used by the uplink model.
  double p_bs_dbm = 46.0;
  double p_sc_dbm = 24.0;
  // Recorded only: the path-loss formulas already embed the carrier.
  double carrier_frequency_hz = 2.0e9;

  double noise_psd_dbm_hz = -174.0;
  double bandwidth_hz = 2.0e7;
  double tdd_ul_fraction = 1.0;

  std::vector<double> sigma_e2_list{0.0, 0.01, 0.1, 0.3};
  CeeMode cee_mode = CeeMode::relative;

  double scu_drop_radius_m = 40.0;
  double min_link_distance_m = 10.0;

  double shadow_std_bs_db = 6.0;
  double shadow_std_sc_los_db = 3.0;
  double shadow_std_sc_nlos_db = 4.0;

  ChannelProfile channel_profile = ChannelProfile::table1;
  // Path-loss exponent of the optional power-law profile.
  double powerlaw_exponent = 3.7;

  int n_realizations = 1000;
  std::uint64_t seed = 1;
  SplitMode bandwidth_split_mode = SplitMode::linear_split;
  int rate_region_points = 21;

  int num_cells() const { return grid_dim * grid_dim; }

  bool operator==(const SimulationConfig&) const = default;
};

/// Raised for malformed documents (kind == parse) and for constraint
/// violations (kind == validation). `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  enum class Kind { parse, validation };

  ConfigError(Kind kind, std::string field, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  Kind kind_;
  std::string field_;
};

/// Parses a JSON object whose keys are SimulationConfig field names. Absent
/// keys keep their defaults; unknown keys and invariant violations throw.
SimulationConfig parse_config(std::string_view text);

/// Canonical JSON rendering; parse_config(render_config(c)) == c.
std::string render_config(const SimulationConfig& config);

/// Throws ConfigError(validation) naming the first violated constraint.
void validate_config(const SimulationConfig& config);

/// FNV-1a over the canonical rendering. Printed in run banners.
std::uint64_t config_hash(const SimulationConfig& config);

double dbm_to_watts(double p_dbm);
double noise_power_watts(double psd_dbm_hz, double bw_hz);

}  // namespace hetnet
