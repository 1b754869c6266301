// SPDX-License-Identifier: Apache-2.0

#include "hetnet/simulation.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hetnet/mmse.hpp"
#include "hetnet/topology.hpp"

namespace hetnet {

double spectral_efficiency(double sinr, double tdd_ul_fraction) { return tdd_ul_fraction * std::log2(1.0 + sinr); }

std::string_view to_string(Tier tier) { return tier == Tier::macro ? "macro" : "smallcell"; }

namespace {

double tier_sum(std::span<const UserSinrEntry> entries, double tdd_ul_fraction) {
  double sum = 0.0;
  for (const auto& e : entries) sum += spectral_efficiency(e.sinr, tdd_ul_fraction);
  return sum;
}

NetworkTopology drop(const RealizationStreams& streams, const SimulationConfig& config) {
  auto rng = streams.stream(StreamPurpose::topology);
  return drop_users(rng, config, place_stations(config));
}

ChannelSet true_channels(const RealizationStreams& streams, const NetworkTopology& topology,
                         const SimulationConfig& config) {
  auto rng = streams.stream(StreamPurpose::channel);
  return build_true_channels(rng, topology, config);
}

void estimate(const RealizationStreams& streams, ChannelSet& set, double sigma_e2, CeeMode mode) {
  auto rng = streams.stream(StreamPurpose::cee);
  estimate_channels(rng, set, sigma_e2, mode);
}

// Runs fn(r) for r in [0, n) and stores the results in index order. The
// OpenMP path and the serial path call fn identically; a failure is rethrown
// for the lowest failing index.
template <typename Result, typename Fn>
std::vector<Result> map_realizations(int n, int threads, Fn&& fn) {
  std::vector<Result> out(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  if (threads == 1) {
    for (int r = 0; r < n; ++r) {
      try {
        out[r] = fn(r);
      } catch (...) {
        errors[r] = std::current_exception();
        break;
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int r = 0; r < n; ++r) {
      try {
        out[r] = fn(r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  }
  for (int r = 0; r < n; ++r) {
    if (!errors[r]) continue;
    try {
      std::rethrow_exception(errors[r]);
    } catch (const std::exception& e) {
      throw std::runtime_error("realization " + std::to_string(r) + ": " + e.what());
    }
  }
  return out;
}

MonteCarloResult summarize(double sigma_e2, std::vector<RealizationResult> realizations) {
  MonteCarloResult result;
  result.sigma_e2 = sigma_e2;
  std::vector<double> buf(realizations.size());
  auto column = [&](auto pick) {
    std::transform(realizations.begin(), realizations.end(), buf.begin(), pick);
    return aggregate(buf);
  };
  result.macro_perfect = column([](const RealizationResult& r) { return r.perfect.macro_bps_per_hz; });
  result.sc_perfect = column([](const RealizationResult& r) { return r.perfect.sc_bps_per_hz; });
  result.macro_imperfect = column([](const RealizationResult& r) { return r.imperfect.macro_bps_per_hz; });
  result.sc_imperfect = column([](const RealizationResult& r) { return r.imperfect.sc_bps_per_hz; });
  result.realizations = std::move(realizations);
  return result;
}

std::vector<double> sorted_sigmas(const SimulationConfig& config) {
  if (config.sigma_e2_list.empty()) throw std::invalid_argument("cee_sweep: sigma_e2_list is empty");
  std::vector<double> sigmas = config.sigma_e2_list;
  std::sort(sigmas.begin(), sigmas.end());
  return sigmas;
}

CeeSweepResult sweep_impl(const SimulationConfig& config, int threads) {
  validate_config(config);
  const auto sigmas = sorted_sigmas(config);
  const auto per_realization =
      map_realizations<std::vector<RealizationResult>>(config.n_realizations, threads, [&](int r) {
        return run_realization_sweep(RealizationStreams(config.seed, static_cast<std::uint64_t>(r)), config, sigmas);
      });
  CeeSweepResult sweep;
  sweep.cee_mode = config.cee_mode;
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    std::vector<RealizationResult> column;
    column.reserve(per_realization.size());
    for (const auto& row : per_realization) column.push_back(row[s]);
    sweep.per_sigma.push_back(summarize(sigmas[s], std::move(column)));
  }
  return sweep;
}

MonteCarloResult monte_carlo_impl(const SimulationConfig& config, double sigma_e2, int threads) {
  validate_config(config);
  if (!(sigma_e2 >= 0.0)) throw std::invalid_argument("run_monte_carlo: sigma_e2 must be >= 0");
  auto realizations = map_realizations<RealizationResult>(config.n_realizations, threads, [&](int r) {
    return run_realization(RealizationStreams(config.seed, static_cast<std::uint64_t>(r)), config, sigma_e2);
  });
  return summarize(sigma_e2, std::move(realizations));
}

}  // namespace

std::vector<RealizationResult> run_realization_sweep(const RealizationStreams& streams,
                                                     const SimulationConfig& config,
                                                     std::span<const double> sigma_e2_values) {
  const NetworkTopology topology = drop(streams, config);
  ChannelSet channels = true_channels(streams, topology, config);
  const int center = center_cell_index(config.grid_dim);

  ReportOptions options;
  options.cell = center;

  std::vector<RealizationResult> out;
  out.reserve(sigma_e2_values.size());
  for (double sigma_e2 : sigma_e2_values) {
    estimate(streams, channels, sigma_e2, config.cee_mode);
    const SinrReportPair report = compute_sinr_report(channels, topology, config, options);
    RealizationResult r;
    r.perfect.macro_bps_per_hz = tier_sum(report.perfect.macro, config.tdd_ul_fraction);
    r.perfect.sc_bps_per_hz = tier_sum(report.perfect.small_cell, config.tdd_ul_fraction);
    r.imperfect.macro_bps_per_hz = tier_sum(report.imperfect.macro, config.tdd_ul_fraction);
    r.imperfect.sc_bps_per_hz = tier_sum(report.imperfect.small_cell, config.tdd_ul_fraction);
    out.push_back(r);
  }
  return out;
}

RealizationResult run_realization(const RealizationStreams& streams, const SimulationConfig& config,
                                  double sigma_e2) {
  const double sigmas[] = {sigma_e2};
  return run_realization_sweep(streams, config, sigmas).front();
}

McAggregate aggregate(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("aggregate: no samples");
  McAggregate a;
  a.n = static_cast<int>(samples.size());
  a.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / a.n;
  if (a.n > 1) {
    double ss = 0.0;
    for (double v : samples) ss += (v - a.mean) * (v - a.mean);
    a.std = std::sqrt(ss / (a.n - 1));
  }
  const double half = 1.959963984540054 * a.std / std::sqrt(static_cast<double>(a.n));
  a.ci95_lo = a.mean - half;
  a.ci95_hi = a.mean + half;
  return a;
}

int resolve_threads(int requested) { return requested > 0 ? requested : std::max(1, omp_get_max_threads()); }

MonteCarloResult run_monte_carlo(const SimulationConfig& config, double sigma_e2, int threads) {
  return monte_carlo_impl(config, sigma_e2, resolve_threads(threads));
}

MonteCarloResult run_monte_carlo_serial(const SimulationConfig& config, double sigma_e2) {
  return monte_carlo_impl(config, sigma_e2, 1);
}

std::vector<CeeSweepRow> CeeSweepResult::rows() const {
  std::vector<CeeSweepRow> rows;
  rows.reserve(2 * per_sigma.size());
  for (const auto& mc : per_sigma) {
    rows.push_back({mc.sigma_e2, cee_mode, Tier::macro, mc.macro_imperfect});
    rows.push_back({mc.sigma_e2, cee_mode, Tier::smallcell, mc.sc_imperfect});
  }
  return rows;
}

CeeSweepResult cee_sweep(const SimulationConfig& config, int threads) {
  return sweep_impl(config, resolve_threads(threads));
}

CeeSweepResult cee_sweep_serial(const SimulationConfig& config) { return sweep_impl(config, 1); }

namespace {

std::vector<double> fraction_grid(int points) {
  std::vector<double> w(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) w[i] = static_cast<double>(i) / (points - 1);
  w.back() = 1.0;
  return w;
}

// Centre-cell imperfect-CSI sum rates for every bandwidth fraction, with the
// noise of each tier integrated over its own share of the band.
std::vector<TierSumRate> noise_scaled_realization(const RealizationStreams& streams, const SimulationConfig& config,
                                                  double sigma_e2, std::span<const double> fractions) {
  const NetworkTopology topology = drop(streams, config);
  ChannelSet channels = true_channels(streams, topology, config);
  estimate(streams, channels, sigma_e2, config.cee_mode);

  std::vector<TierSumRate> out;
  out.reserve(fractions.size());
  for (double w : fractions) {
    ReportOptions options;
    options.cell = center_cell_index(config.grid_dim);
    options.macro = w > 0.0;
    options.small_cell = w < 1.0;
    if (options.macro) options.macro_noise_w = noise_power_watts(config.noise_psd_dbm_hz, w * config.bandwidth_hz);
    if (options.small_cell) {
      options.sc_noise_w = noise_power_watts(config.noise_psd_dbm_hz, (1.0 - w) * config.bandwidth_hz);
    }
    const SinrReportPair report = compute_sinr_report(channels, topology, config, options);
    TierSumRate rate;
    if (options.macro) rate.macro_bps_per_hz = w * tier_sum(report.imperfect.macro, config.tdd_ul_fraction);
    if (options.small_cell) {
      rate.sc_bps_per_hz = (1.0 - w) * tier_sum(report.imperfect.small_cell, config.tdd_ul_fraction);
    }
    out.push_back(rate);
  }
  return out;
}

}  // namespace

std::vector<RateRegionPoint> rate_region(const SimulationConfig& config, double sigma_e2, int threads) {
  validate_config(config);
  const auto fractions = fraction_grid(config.rate_region_points);
  std::vector<RateRegionPoint> points;
  points.reserve(fractions.size());

  if (config.bandwidth_split_mode == SplitMode::linear_split) {
    const MonteCarloResult mc = run_monte_carlo(config, sigma_e2, threads);
    const double macro = mc.macro_imperfect.mean;
    const double sc = mc.sc_imperfect.mean;
    for (double w : fractions) points.push_back({w, w * macro, (1.0 - w) * sc});
    return points;
  }

  const auto per_realization =
      map_realizations<std::vector<TierSumRate>>(config.n_realizations, resolve_threads(threads), [&](int r) {
        return noise_scaled_realization(RealizationStreams(config.seed, static_cast<std::uint64_t>(r)), config,
                                        sigma_e2, fractions);
      });
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    double macro = 0.0;
    double sc = 0.0;
    for (const auto& row : per_realization) {
      macro += row[i].macro_bps_per_hz;
      sc += row[i].sc_bps_per_hz;
    }
    const double n = static_cast<double>(per_realization.size());
    points.push_back({fractions[i], macro / n, sc / n});
  }
  return points;
}

double empirical_sinr_oracle(RandomStream& rng, const LinkMatrix& truth, const LinkMatrix& estimate,
                             std::size_t user, double p, double n0, std::size_t n_samples) {
  if (truth.n_antennas() != estimate.n_antennas() || truth.n_users() != estimate.n_users()) {
    throw std::invalid_argument("empirical_sinr_oracle: shape mismatch");
  }
  if (!(n0 > 0.0)) throw std::invalid_argument("empirical_sinr_oracle: noise power must be > 0");
  const std::size_t n = truth.n_antennas();
  const HermitianMatrix q_hat = assemble_covariance(estimate, p, n0);
  const CVector w = hermitian_solve(q_hat, estimate.user(user));
  const cplx alpha = inner(w, truth.user(user));

  const double amp = std::sqrt(p);
  const double noise_amp = std::sqrt(n0);
  CVector y(n);
  double desired_power = 0.0;
  double residual_power = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t a = 0; a < n; ++a) y[a] = noise_amp * rng.complex_normal();
    cplx x_user = 0.0;
    for (std::size_t u = 0; u < truth.n_users(); ++u) {
      const cplx x = rng.complex_normal();
      if (u == user) x_user = x;
      const auto h = truth.user(u);
      for (std::size_t a = 0; a < n; ++a) y[a] += amp * h[a] * x;
    }
    const cplx out = inner(w, y);
    const cplx desired = amp * alpha * x_user;
    desired_power += std::norm(desired);
    residual_power += std::norm(out - desired);
  }
  return desired_power / residual_power;
}

}  // namespace hetnet
