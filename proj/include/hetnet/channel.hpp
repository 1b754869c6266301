// SPDX-License-Identifier: Apache-2.0
//
// Large-scale (path loss, LOS state, log-normal shadowing) and small-scale
// (Rayleigh) channel generation, plus the additive channel-estimation-error
// model h_hat = h + h_e.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/random.hpp"
#include "hetnet/topology.hpp"

namespace hetnet {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

enum class LinkTier { bs_link, sc_link };

struct LinkGain {
  double distance_m = 0.0;
  bool is_los = false;
  double pathloss_db = 0.0;
  double shadow_db = 0.0;
  double beta = 1.0;  // 10^(-(pathloss_db + shadow_db) / 10)
};

// Table 1 path-loss models, d in metres. Throw std::domain_error for d < 1.
double pathloss_bs_db(double d, bool los);
double pathloss_sc_db(double d, bool los);

// LOS probabilities evaluated as printed and clamped to [0, 1].
double los_probability_bs(double d);
double los_probability_sc(double d);

double beta_from_db(double pathloss_db, double shadow_db);

LinkGain draw_link_gain(RandomStream& rng, LinkTier tier, double d, const SimulationConfig& config);

/// n i.i.d. CN(0, 1) entries.
CVector draw_small_scale(RandomStream& rng, std::size_t n);

struct ChannelVector {
  CVector entries;
  LinkGain link;
};

ChannelVector compose_channel(const LinkGain& gain, std::span<const cplx> g);

/// Per-entry error variance for a link of gain `beta`.
double cee_variance(double sigma_e2, CeeMode mode, double beta);

/// Returns h + h_e, h_e ~ CN(0, v I). sigma_e2 == 0 returns an exact copy
/// without consuming randomness.
ChannelVector apply_cee(RandomStream& rng, const ChannelVector& h, double sigma_e2, CeeMode mode);

/// Channels from `n_users` single-antenna transmitters to one receiver with
/// `n_antennas` antennas. Column u (user u's vector) is contiguous.
class LinkMatrix {
 public:
  LinkMatrix() = default;
  LinkMatrix(std::size_t n_antennas, std::size_t n_users);

  std::size_t n_antennas() const noexcept { return n_antennas_; }
  std::size_t n_users() const noexcept { return n_users_; }

  std::span<cplx> user(std::size_t u) { return {entries_.data() + u * n_antennas_, n_antennas_}; }
  std::span<const cplx> user(std::size_t u) const { return {entries_.data() + u * n_antennas_, n_antennas_}; }

  LinkGain& gain(std::size_t u) { return gains_[u]; }
  const LinkGain& gain(std::size_t u) const { return gains_[u]; }

  ChannelVector vector(std::size_t u) const;
  void set(std::size_t u, const ChannelVector& h);

 private:
  std::size_t n_antennas_ = 0;
  std::size_t n_users_ = 0;
  CVector entries_;
  std::vector<LinkGain> gains_;
};

/// True and estimated channels of one realization.
///   bs_true[i].user(b*K + k)  : MCU k of cell b -> BS i        (length N)
///   sc_true[n].user(m)        : SCU m -> small cell n          (length F)
struct ChannelSet {
  std::vector<LinkMatrix> bs_true;
  std::vector<LinkMatrix> bs_est;
  std::vector<LinkMatrix> sc_true;
  std::vector<LinkMatrix> sc_est;
  double sigma_e2 = 0.0;
  CeeMode cee_mode = CeeMode::relative;
};

/// True channels only: independent large-scale and small-scale draws per link.
ChannelSet build_true_channels(RandomStream& rng, const NetworkTopology& topology, const SimulationConfig& config);

/// Fills the estimated channels of `set` from its true channels. Uses the same
/// number of draws for every sigma_e2 > 0, so a fixed stream gives paired
/// errors across variances.
void estimate_channels(RandomStream& rng, ChannelSet& set, double sigma_e2, CeeMode mode);

/// build_true_channels followed by estimate_channels on the same stream.
ChannelSet build_channel_set(RandomStream& rng, const NetworkTopology& topology, const SimulationConfig& config,
                             double sigma_e2);

}  // namespace hetnet
