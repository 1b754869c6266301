// SPDX-License-Identifier: Apache-2.0
//
// Random receiver instances shared by unit and acceptance tests.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hetnet/channel.hpp"
#include "hetnet/random.hpp"

namespace hetnet::testing {

struct ReceiverInstance {
  LinkMatrix truth;
  LinkMatrix estimate;
  double p = 0.0;
  double n0 = 0.0;
};

/// `n_users` links to an `n_antennas` receiver, beta log-uniform in
/// [1e-12, 1], Rayleigh fading, p = 23 dBm. n0 puts the strongest link's
/// per-antenna SNR log-uniformly in [-10, +10] dB so the closed forms are well
/// conditioned. Relative-mode CEE of variance sigma_e2.
inline ReceiverInstance random_instance(RandomStream& rng, std::size_t n_antennas, std::size_t n_users,
                                        double sigma_e2) {
  ReceiverInstance inst;
  inst.p = 0.19952623149688797;
  inst.truth = LinkMatrix(n_antennas, n_users);
  double beta_max = 0.0;
  for (std::size_t u = 0; u < n_users; ++u) {
    LinkGain g;
    g.beta = std::pow(10.0, -12.0 * rng.uniform());
    beta_max = std::max(beta_max, g.beta);
    inst.truth.set(u, compose_channel(g, draw_small_scale(rng, n_antennas)));
  }
  const double snr_db = rng.uniform(-10.0, 10.0);
  inst.n0 = inst.p * beta_max / std::pow(10.0, snr_db / 10.0);
  inst.estimate = inst.truth;
  if (sigma_e2 > 0.0) {
    for (std::size_t u = 0; u < n_users; ++u) {
      inst.estimate.set(u, apply_cee(rng, inst.truth.vector(u), sigma_e2, CeeMode::relative));
    }
  }
  return inst;
}

}  // namespace hetnet::testing
