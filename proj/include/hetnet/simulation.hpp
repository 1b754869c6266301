// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo orchestration: realizations, tier sum rates, CEE sweeps and
// rate regions.
//
// Realization r draws everything from streams derived from (seed, r), so the
// OpenMP kernels and the serial reference produce bit-identical results for
// any thread count. Aggregation always runs in realization order.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hetnet/channel.hpp"
#include "hetnet/config.hpp"
#include "hetnet/random.hpp"

namespace hetnet {

/// R = (T_UL / T) log2(1 + SINR), in bit/s/Hz.
double spectral_efficiency(double sinr, double tdd_ul_fraction);

/// Sum spectral efficiency of the centre cell's users, per tier.
struct TierSumRate {
  double macro_bps_per_hz = 0.0;
  double sc_bps_per_hz = 0.0;

  bool operator==(const TierSumRate&) const = default;
};

struct RealizationResult {
  TierSumRate perfect;
  TierSumRate imperfect;

  bool operator==(const RealizationResult&) const = default;
};

/// Substreams of one realization.
class RealizationStreams {
 public:
  RealizationStreams(std::uint64_t seed, std::uint64_t index) : seed_(seed), index_(index) {}

  std::uint64_t index() const noexcept { return index_; }
  RandomStream stream(StreamPurpose purpose) const { return {seed_, index_, purpose}; }

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
};

/// One user drop, one channel set, centre-cell sum rates for both CSI variants.
RealizationResult run_realization(const RealizationStreams& streams, const SimulationConfig& config,
                                  double sigma_e2);

/// One drop and one set of true channels shared by every variance; only the
/// CEE draw changes with sigma_e2 (common random numbers).
std::vector<RealizationResult> run_realization_sweep(const RealizationStreams& streams,
                                                     const SimulationConfig& config,
                                                     std::span<const double> sigma_e2_values);

struct McAggregate {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 when n == 1
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  int n = 0;
};

/// Mean, sample std and normal-approximation 95% confidence interval.
McAggregate aggregate(std::span<const double> samples);

struct MonteCarloResult {
  double sigma_e2 = 0.0;
  McAggregate macro_perfect;
  McAggregate sc_perfect;
  McAggregate macro_imperfect;
  McAggregate sc_imperfect;
  std::vector<RealizationResult> realizations;
};

/// Threads <= 0 means all available.
int resolve_threads(int requested);

MonteCarloResult run_monte_carlo(const SimulationConfig& config, double sigma_e2, int threads = 0);
/// Single-threaded reference for run_monte_carlo.
MonteCarloResult run_monte_carlo_serial(const SimulationConfig& config, double sigma_e2);

enum class Tier { macro, smallcell };
std::string_view to_string(Tier tier);

struct CeeSweepRow {
  double sigma_e2 = 0.0;
  CeeMode cee_mode = CeeMode::relative;
  Tier tier = Tier::macro;
  McAggregate stats;  // imperfect-CSI centre-cell sum rate
};

struct CeeSweepResult {
  CeeMode cee_mode = CeeMode::relative;
  std::vector<MonteCarloResult> per_sigma;  // ascending sigma_e2

  /// Two rows (macro, smallcell) per variance, ascending sigma_e2.
  std::vector<CeeSweepRow> rows() const;
};

CeeSweepResult cee_sweep(const SimulationConfig& config, int threads = 0);
CeeSweepResult cee_sweep_serial(const SimulationConfig& config);

struct RateRegionPoint {
  double w = 0.0;  // bandwidth fraction given to the macro tier
  double macro_rate = 0.0;
  double sc_rate = 0.0;
};

/// Uniform grid of config.rate_region_points fractions over [0, 1], ascending.
std::vector<RateRegionPoint> rate_region(const SimulationConfig& config, double sigma_e2, int threads = 0);

/// Sample-based SINR of `user` at one receiver: synthesizes received vectors
/// y = sum_u sqrt(p) h_u x_u + n with unit-power Gaussian symbols and fresh
/// noise, applies w = Q_hat^{-1} h_hat_user and returns the ratio of desired
/// output power to residual power.
double empirical_sinr_oracle(RandomStream& rng, const LinkMatrix& truth, const LinkMatrix& estimate,
                             std::size_t user, double p, double n0, std::size_t n_samples);

}  // namespace hetnet
