// SPDX-License-Identifier: Apache-2.0

#include "hetnet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hetnet {

namespace {

void require_metric_distance(double d, const char* who) {
  if (!(d >= 1.0)) {
    throw std::domain_error(std::string(who) + ": distance must be >= 1 m, got " + std::to_string(d));
  }
}

}  // namespace

double pathloss_bs_db(double d, bool los) {
  require_metric_distance(d, "pathloss_bs_db");
  return los ? 30.8 + 24.2 * std::log10(d) : 2.7 + 42.8 * std::log10(d);
}

double pathloss_sc_db(double d, bool los) {
  require_metric_distance(d, "pathloss_sc_db");
  return los ? 41.1 + 20.9 * std::log10(d) : 32.9 + 37.5 * std::log10(d);
}

double los_probability_bs(double d) {
  const double p = std::min(18.0 / d, 1.0) * (1.0 - std::exp(-d / 72.0) + std::exp(-d / 63.0));
  return std::clamp(p, 0.0, 1.0);
}

double los_probability_sc(double d) {
  const double p = 0.5 - std::min(0.5, 5.0 * std::exp(-156.0 / d)) + std::min(0.5, 5.0 * std::exp(-d / 30.0));
  return std::clamp(p, 0.0, 1.0);
}

double beta_from_db(double pathloss_db, double shadow_db) {
  return std::pow(10.0, -(pathloss_db + shadow_db) / 10.0);
}

LinkGain draw_link_gain(RandomStream& rng, LinkTier tier, double d, const SimulationConfig& config) {
  LinkGain gain;
  gain.distance_m = d;
  double shadow_std = 0.0;
  if (config.channel_profile == ChannelProfile::powerlaw) {
    // beta = z * d^-alpha with log-normal z.
    require_metric_distance(d, "draw_link_gain");
    gain.is_los = false;
    gain.pathloss_db = 10.0 * config.powerlaw_exponent * std::log10(d);
    shadow_std = tier == LinkTier::bs_link ? config.shadow_std_bs_db : config.shadow_std_sc_nlos_db;
  } else if (tier == LinkTier::bs_link) {
    gain.is_los = rng.bernoulli(los_probability_bs(d));
    gain.pathloss_db = pathloss_bs_db(d, gain.is_los);
    shadow_std = config.shadow_std_bs_db;
  } else {
    gain.is_los = rng.bernoulli(los_probability_sc(d));
    gain.pathloss_db = pathloss_sc_db(d, gain.is_los);
    shadow_std = gain.is_los ? config.shadow_std_sc_los_db : config.shadow_std_sc_nlos_db;
  }
  gain.shadow_db = shadow_std * rng.normal();
  gain.beta = beta_from_db(gain.pathloss_db, gain.shadow_db);
  return gain;
}

CVector draw_small_scale(RandomStream& rng, std::size_t n) {
  CVector g(n);
  for (auto& v : g) v = rng.complex_normal();
  return g;
}

ChannelVector compose_channel(const LinkGain& gain, std::span<const cplx> g) {
  ChannelVector h;
  h.link = gain;
  h.entries.resize(g.size());
  const double amp = std::sqrt(gain.beta);
  std::transform(g.begin(), g.end(), h.entries.begin(), [amp](cplx v) { return amp * v; });
  return h;
}

double cee_variance(double sigma_e2, CeeMode mode, double beta) {
  return mode == CeeMode::relative ? sigma_e2 * beta : sigma_e2;
}

ChannelVector apply_cee(RandomStream& rng, const ChannelVector& h, double sigma_e2, CeeMode mode) {
  ChannelVector est = h;
  if (sigma_e2 == 0.0) return est;
  const double sd = std::sqrt(cee_variance(sigma_e2, mode, h.link.beta));
  for (auto& v : est.entries) v += sd * rng.complex_normal();
  return est;
}

LinkMatrix::LinkMatrix(std::size_t n_antennas, std::size_t n_users)
    : n_antennas_(n_antennas), n_users_(n_users), entries_(n_antennas * n_users), gains_(n_users) {}

ChannelVector LinkMatrix::vector(std::size_t u) const {
  const auto col = user(u);
  return {CVector(col.begin(), col.end()), gains_[u]};
}

void LinkMatrix::set(std::size_t u, const ChannelVector& h) {
  if (h.entries.size() != n_antennas_) throw std::invalid_argument("LinkMatrix::set: length mismatch");
  std::copy(h.entries.begin(), h.entries.end(), user(u).begin());
  gains_[u] = h.link;
}

namespace {

LinkMatrix draw_receiver_links(RandomStream& rng, LinkTier tier, Position receiver, std::size_t n_antennas,
                               std::span<const Position> users, const SimulationConfig& config) {
  LinkMatrix links(n_antennas, users.size());
  for (std::size_t u = 0; u < users.size(); ++u) {
    const double d = link_distance(users[u], receiver, config.min_link_distance_m);
    const LinkGain gain = draw_link_gain(rng, tier, d, config);
    const double amp = std::sqrt(gain.beta);
    for (auto& v : links.user(u)) v = amp * rng.complex_normal();
    links.gain(u) = gain;
  }
  return links;
}

void perturb(RandomStream& rng, const LinkMatrix& truth, LinkMatrix& est, double sigma_e2, CeeMode mode) {
  est = truth;
  if (sigma_e2 == 0.0) return;
  for (std::size_t u = 0; u < truth.n_users(); ++u) {
    const double sd = std::sqrt(cee_variance(sigma_e2, mode, truth.gain(u).beta));
    for (auto& v : est.user(u)) v += sd * rng.complex_normal();
  }
}

}  // namespace

ChannelSet build_true_channels(RandomStream& rng, const NetworkTopology& topology, const SimulationConfig& config) {
  ChannelSet set;
  const auto n = static_cast<std::size_t>(config.n_bs_antennas);
  const auto f = static_cast<std::size_t>(config.n_sc_antennas);
  set.bs_true.reserve(topology.stations.macro.positions.size());
  for (const auto& bs : topology.stations.macro.positions) {
    set.bs_true.push_back(draw_receiver_links(rng, LinkTier::bs_link, bs, n, topology.mcu_positions, config));
  }
  set.sc_true.reserve(topology.stations.sc_positions.size());
  for (const auto& sc : topology.stations.sc_positions) {
    set.sc_true.push_back(draw_receiver_links(rng, LinkTier::sc_link, sc, f, topology.scu_positions, config));
  }
  set.bs_est = set.bs_true;
  set.sc_est = set.sc_true;
  set.sigma_e2 = 0.0;
  set.cee_mode = config.cee_mode;
  return set;
}

void estimate_channels(RandomStream& rng, ChannelSet& set, double sigma_e2, CeeMode mode) {
  if (!(sigma_e2 >= 0.0)) throw std::invalid_argument("estimate_channels: sigma_e2 must be >= 0");
  set.bs_est.resize(set.bs_true.size());
  set.sc_est.resize(set.sc_true.size());
  for (std::size_t i = 0; i < set.bs_true.size(); ++i) perturb(rng, set.bs_true[i], set.bs_est[i], sigma_e2, mode);
  for (std::size_t i = 0; i < set.sc_true.size(); ++i) perturb(rng, set.sc_true[i], set.sc_est[i], sigma_e2, mode);
  set.sigma_e2 = sigma_e2;
  set.cee_mode = mode;
}

ChannelSet build_channel_set(RandomStream& rng, const NetworkTopology& topology, const SimulationConfig& config,
                             double sigma_e2) {
  ChannelSet set = build_true_channels(rng, topology, config);
  estimate_channels(rng, set, sigma_e2, config.cee_mode);
  return set;
}

}  // namespace hetnet
