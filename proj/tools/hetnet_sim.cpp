// SPDX-License-Identifier: Apache-2.0
//
// hetnet_sim: command-line front end for the two-tier uplink simulator.
//
// Exit status: 0 success, 1 runtime failure, 2 usage or validation error.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hetnet/config.hpp"
#include "hetnet/csv.hpp"
#include "hetnet/mmse.hpp"
#include "hetnet/simulation.hpp"

namespace {

using namespace hetnet;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> realizations;
  std::optional<std::string> sigma_e2;
  std::optional<std::string> cee_mode;
  std::optional<std::string> split_mode;
  std::string out_path;
  std::string topology_out;
  std::size_t oracle_samples = 100000;
};

std::vector<double> parse_sigma_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw ConfigError(ConfigError::Kind::parse, "sigma_e2_list", "cannot parse '" + item + "' as a number");
    }
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError(ConfigError::Kind::validation, "sigma_e2_list", "must not be empty");
  return values;
}

// Defaults < config file < command-line flags.
SimulationConfig load_config(const Overrides& o) {
  SimulationConfig config;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw IoError("cannot read config '" + o.config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    config = parse_config(text.str());
  }
  if (o.seed) config.seed = *o.seed;
  if (o.realizations) config.n_realizations = *o.realizations;
  if (o.sigma_e2) config.sigma_e2_list = parse_sigma_list(*o.sigma_e2);
  if (o.cee_mode) config.cee_mode = parse_cee_mode(*o.cee_mode);
  if (o.split_mode) config.bandwidth_split_mode = parse_split_mode(*o.split_mode);
  validate_config(config);
  return config;
}

int thread_cap() {
  const char* env = std::getenv("HETNET_SIM_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    return std::max(0, std::stoi(env));
  } catch (const std::exception&) {
    throw ConfigError(ConfigError::Kind::validation, "HETNET_SIM_THREADS", "must be a non-negative integer");
  }
}

void banner(const std::string& command, const SimulationConfig& config, int threads) {
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(config_hash(config)));
  std::cerr << "hetnet_sim " << command << " seed=" << config.seed << " config_hash=" << hash
            << " realizations=" << config.n_realizations << " cee_mode=" << to_string(config.cee_mode)
            << " split_mode=" << to_string(config.bandwidth_split_mode)
            << " profile=" << to_string(config.channel_profile) << " threads=" << resolve_threads(threads) << '\n';
}

void emit(const CsvTable& table, const std::string& out_path) {
  if (out_path.empty()) {
    write_csv(table, std::cout);
  } else {
    write_csv(table, std::filesystem::path(out_path));
  }
}

int run_simulate(const SimulationConfig& config, const Overrides& o, int threads) {
  const double sigma = *std::min_element(config.sigma_e2_list.begin(), config.sigma_e2_list.end());
  SimulationConfig single = config;
  single.sigma_e2_list = {sigma};
  emit(cee_sweep_table(cee_sweep(single, threads).rows()), o.out_path);
  if (!o.topology_out.empty()) {
    auto rng = RealizationStreams(config.seed, 0).stream(StreamPurpose::topology);
    write_csv(topology_table(drop_users(rng, config, place_stations(config))), std::filesystem::path(o.topology_out));
  }
  return 0;
}

int run_rate_region(const SimulationConfig& config, const Overrides& o, int threads) {
  std::vector<double> sigmas = config.sigma_e2_list;
  std::sort(sigmas.begin(), sigmas.end());
  CsvTable table;
  for (double sigma : sigmas) {
    const auto part = rate_region_table(rate_region(config, sigma, threads), sigma);
    table.header = part.header;
    table.rows.insert(table.rows.end(), part.rows.begin(), part.rows.end());
  }
  emit(table, o.out_path);
  return 0;
}

// Compares the closed-form imperfect-CSI SINR with the sample-based estimate
// for the first MCU and first SCU of the centre cell in realization 0.
int run_oracle_check(const SimulationConfig& config, const Overrides& o) {
  constexpr double kTolerance = 0.03;
  const RealizationStreams streams(config.seed, 0);
  auto topo_rng = streams.stream(StreamPurpose::topology);
  const NetworkTopology topology = drop_users(topo_rng, config, place_stations(config));
  auto channel_rng = streams.stream(StreamPurpose::channel);
  const ChannelSet truth = build_true_channels(channel_rng, topology, config);
  const int center = center_cell_index(config.grid_dim);
  const double n0 = noise_power_watts(config.noise_psd_dbm_hz, config.bandwidth_hz);

  CsvTable table;
  table.header = {"sigma_e2", "tier", "user", "closed_form_sinr", "empirical_sinr", "rel_error"};
  bool ok = true;
  auto check = [&](double sigma, const char* tier, const LinkMatrix& h, const LinkMatrix& h_hat, std::size_t user,
                   double p) {
    const CholeskyFactor q_hat(assemble_covariance(h_hat, p, n0));
    const double closed = lmmse_user_sinr(h, user, q_hat, h_hat.user(user), p, n0).sinr;
    auto rng = streams.stream(StreamPurpose::oracle);
    const double empirical = empirical_sinr_oracle(rng, h, h_hat, user, p, n0, o.oracle_samples);
    const double err = std::abs(empirical - closed) / closed;
    ok = ok && err <= kTolerance;
    table.rows.push_back({format_real(sigma), tier, std::to_string(user), format_real(closed), format_real(empirical),
                          format_real(err)});
  };

  std::vector<double> sigmas = config.sigma_e2_list;
  std::sort(sigmas.begin(), sigmas.end());
  for (double sigma : sigmas) {
    ChannelSet set = truth;
    auto cee_rng = streams.stream(StreamPurpose::cee);
    estimate_channels(cee_rng, set, sigma, config.cee_mode);
    const std::size_t mcu = static_cast<std::size_t>(center) * config.k_mcu_per_cell;
    const std::size_t bs = topology.mcu_serving_bs[mcu];
    check(sigma, "macro", set.bs_true[bs], set.bs_est[bs], mcu, dbm_to_watts(config.p_mcu_dbm));
    if (config.s_sc_per_cell > 0) {
      const std::size_t scu = static_cast<std::size_t>(center) * config.s_sc_per_cell;
      const std::size_t sc = topology.scu_serving_sc[scu];
      check(sigma, "smallcell", set.sc_true[sc], set.sc_est[sc], scu, dbm_to_watts(config.p_scu_dbm));
    }
  }
  emit(table, o.out_path);
  if (!ok) {
    std::cerr << "oracle-check: relative error above " << kTolerance << '\n';
    return kExitRuntime;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Monte Carlo simulator of a two-tier MIMO uplink with LMMSE receivers and channel estimation error.\n"
      "Precedence: command-line flags override config-file values, which override built-in defaults.\n"
      "HETNET_SIM_THREADS caps worker threads (0 or unset = all cores)."};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "JSON config file (keys = SimulationConfig field names)");
  app.add_option("--seed", o.seed, "seed (u64)");
  app.add_option("--realizations", o.realizations, "n_realizations");
  app.add_option("--sigma-e2", o.sigma_e2, "sigma_e2_list, comma-separated variances");
  app.add_option("--cee-mode", o.cee_mode, "cee_mode: relative|absolute");
  app.add_option("--split-mode", o.split_mode, "bandwidth_split_mode: linear_split|noise_scaled");
  app.add_option("--out", o.out_path, "output CSV path (default: standard output)");
  app.add_option("--oracle-samples", o.oracle_samples, "samples per oracle-check estimate (default 100000)");

  auto* validate = app.add_subcommand("validate-config", "check a config file and print OK");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo at the smallest listed sigma_e2 (sweep CSV schema)");
  simulate->add_option("--topology-out", o.topology_out, "also dump realization 0's topology as CSV");
  auto* sweep = app.add_subcommand("cee-sweep", "centre-cell sum rates across sigma_e2_list");
  auto* region = app.add_subcommand("rate-region", "bandwidth-split rate region for each listed sigma_e2");
  auto* oracle = app.add_subcommand("oracle-check", "closed-form SINR vs sample-based estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  SimulationConfig config;
  int threads = 0;
  try {
    config = load_config(o);
    threads = thread_cap();
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitRuntime;
  }

  try {
    if (validate->parsed()) {
      std::cout << "OK\n";
      return 0;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    banner(command, config, threads);
    if (simulate->parsed()) return run_simulate(config, o, threads);
    if (sweep->parsed()) {
      emit(cee_sweep_table(cee_sweep(config, threads).rows()), o.out_path);
      return 0;
    }
    if (region->parsed()) return run_rate_region(config, o, threads);
    if (oracle->parsed()) return run_oracle_check(config, o);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
