// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "hetnet/channel.hpp"

using namespace hetnet;

// Reference values evaluated independently in 30-digit arithmetic.
TEST_CASE("path-loss formulas") {
  CHECK(pathloss_bs_db(1.0, true) == doctest::Approx(30.8).epsilon(1e-12));
  CHECK(pathloss_bs_db(100.0, true) == doctest::Approx(79.2).epsilon(1e-12));
  CHECK(pathloss_bs_db(1000.0, false) == doctest::Approx(131.1).epsilon(1e-12));
  CHECK(pathloss_sc_db(1.0, true) == doctest::Approx(41.1).epsilon(1e-12));
  CHECK(pathloss_sc_db(20.0, true) == doctest::Approx(68.2915269093772).epsilon(1e-12));
  CHECK(pathloss_sc_db(100.0, false) == doctest::Approx(107.9).epsilon(1e-12));
  CHECK_THROWS_AS(pathloss_bs_db(0.5, true), std::domain_error);
  CHECK_THROWS_AS(pathloss_sc_db(0.0, false), std::domain_error);
}

TEST_CASE("LOS probabilities") {
  CHECK(los_probability_bs(1e-6) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(los_probability_bs(18.0) == doctest::Approx(0.972676510003881).epsilon(1e-12));
  CHECK(los_probability_bs(1000.0) == doctest::Approx(0.0179999855734162).epsilon(1e-12));
  CHECK(los_probability_sc(1e-3) == 1.0);
  CHECK(los_probability_sc(300.0) == doctest::Approx(2.26999648812424e-4).epsilon(1e-12));
  CHECK(los_probability_sc(30.0) == doctest::Approx(0.972417177896196).epsilon(1e-12));
}

TEST_CASE("LOS probabilities stay in [0, 1]") {
  for (double d = 1e-3; d <= 1e6; d *= 1.07) {
    const double pb = los_probability_bs(d);
    const double ps = los_probability_sc(d);
    CHECK(pb >= 0.0);
    CHECK(pb <= 1.0);
    CHECK(ps >= 0.0);
    CHECK(ps <= 1.0);
  }
}

TEST_CASE("beta positive and finite over the operating range") {
  for (double d = 10.0; d <= 5000.0; d *= 1.05) {
    for (bool los : {true, false}) {
      for (double sh : {-18.0, 0.0, 18.0}) {
        const double b1 = beta_from_db(pathloss_bs_db(d, los), sh);
        const double b2 = beta_from_db(pathloss_sc_db(d, los), sh);
        CHECK(b1 > 0.0);
        CHECK(std::isfinite(b1));
        CHECK(b2 > 0.0);
        CHECK(std::isfinite(b2));
      }
    }
  }
}

TEST_CASE("link gain without shadowing") {
  SimulationConfig config;
  config.shadow_std_bs_db = 0.0;
  RandomStream rng(1);
  // d = 10 m has LOS probability ~1 for the BS model.
  int los = 0;
  for (int i = 0; i < 100; ++i) {
    const auto g = draw_link_gain(rng, LinkTier::bs_link, 10.0, config);
    CHECK(g.shadow_db == 0.0);
    if (g.is_los) {
      ++los;
      CHECK(g.beta == doctest::Approx(std::pow(10.0, -(30.8 + 24.2) / 10.0)).epsilon(1e-12));
    }
  }
  CHECK(los > 90);
  // beta at 100 m LOS, zero shadowing.
  CHECK(beta_from_db(pathloss_bs_db(100.0, true), 0.0) == doctest::Approx(1.20226443461741e-8).epsilon(1e-12));
}

TEST_CASE("LOS Bernoulli rate and shadowing spread") {
  SimulationConfig config;
  RandomStream rng(2024);
  constexpr int n = 100000;
  for (double d : {50.0, 150.0}) {
    int bs_los = 0;
    int sc_los = 0;
    for (int i = 0; i < n; ++i) {
      bs_los += draw_link_gain(rng, LinkTier::bs_link, d, config).is_los;
      sc_los += draw_link_gain(rng, LinkTier::sc_link, d, config).is_los;
    }
    CHECK(std::abs(static_cast<double>(bs_los) / n - los_probability_bs(d)) < 0.01);
    CHECK(std::abs(static_cast<double>(sc_los) / n - los_probability_sc(d)) < 0.01);
  }
  double s1 = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = draw_link_gain(rng, LinkTier::bs_link, 200.0, config).shadow_db;
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1 / n;
  const double sd = std::sqrt(s2 / n - mean * mean);
  CHECK(std::abs(sd - 6.0) < 0.1);

  // SC shadowing depends on the LOS state.
  double los_s2 = 0.0, nlos_s2 = 0.0;
  int los_n = 0, nlos_n = 0;
  for (int i = 0; i < n; ++i) {
    const auto g = draw_link_gain(rng, LinkTier::sc_link, 40.0, config);
    if (g.is_los) {
      los_s2 += g.shadow_db * g.shadow_db;
      ++los_n;
    } else {
      nlos_s2 += g.shadow_db * g.shadow_db;
      ++nlos_n;
    }
  }
  CHECK(std::abs(std::sqrt(los_s2 / los_n) - 3.0) < 0.1);
  CHECK(std::abs(std::sqrt(nlos_s2 / nlos_n) - 4.0) < 0.15);
}

TEST_CASE("power-law profile decays with distance") {
  SimulationConfig config;
  config.channel_profile = ChannelProfile::powerlaw;
  config.shadow_std_bs_db = 0.0;
  RandomStream rng(3);
  const auto near = draw_link_gain(rng, LinkTier::bs_link, 100.0, config);
  const auto far = draw_link_gain(rng, LinkTier::bs_link, 1000.0, config);
  CHECK(near.beta == doctest::Approx(std::pow(100.0, -3.7)).epsilon(1e-12));
  CHECK(far.beta < near.beta);
  CHECK(far.beta / near.beta == doctest::Approx(std::pow(10.0, -3.7)).epsilon(1e-12));
}

TEST_CASE("small-scale fading statistics") {
  RandomStream rng(11);
  CHECK(draw_small_scale(rng, 3).size() == 3);
  const auto g = draw_small_scale(rng, 100000);
  cplx mean = 0.0;
  double power = 0.0;
  double re2 = 0.0;
  for (const auto& v : g) {
    mean += v;
    power += std::norm(v);
    re2 += v.real() * v.real();
  }
  mean /= static_cast<double>(g.size());
  CHECK(std::abs(mean.real()) < 0.02);
  CHECK(std::abs(mean.imag()) < 0.02);
  CHECK(std::abs(power / g.size() - 1.0) < 0.02);
  CHECK(std::abs(re2 / g.size() - 0.5) < 0.01);
}

TEST_CASE("compose_channel scales by sqrt(beta)") {
  LinkGain unit;
  unit.beta = 1.0;
  const CVector g{{0.3, -0.1}, {1.0, 2.0}};
  CHECK(compose_channel(unit, g).entries == g);
  LinkGain four;
  four.beta = 4.0;
  const CVector one{{1.0, 0.0}};
  CHECK(compose_channel(four, one).entries[0] == cplx(2.0, 0.0));

  RandomStream rng(8);
  LinkGain gain;
  gain.beta = 3.5e-9;
  double acc = 0.0;
  constexpr int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    const auto h = compose_channel(gain, draw_small_scale(rng, 4));
    for (const auto& v : h.entries) acc += std::norm(v);
  }
  CHECK(acc / (trials * 4) == doctest::Approx(gain.beta).epsilon(0.02));
}

TEST_CASE("apply_cee") {
  RandomStream rng(21);
  LinkGain gain;
  gain.beta = 2.5e-10;
  const ChannelVector h = compose_channel(gain, draw_small_scale(rng, 8));

  SUBCASE("zero variance is an exact copy") {
    const auto est = apply_cee(rng, h, 0.0, CeeMode::relative);
    CHECK(est.entries == h.entries);
  }
  SUBCASE("relative mode scales with beta") {
    const ChannelVector before = h;
    double acc = 0.0;
    constexpr int trials = 100000 / 8;
    for (int i = 0; i < trials; ++i) {
      const auto est = apply_cee(rng, h, 0.1, CeeMode::relative);
      REQUIRE(est.entries.size() == h.entries.size());
      for (std::size_t k = 0; k < h.entries.size(); ++k) acc += std::norm(est.entries[k] - h.entries[k]);
    }
    CHECK(h.entries == before.entries);
    CHECK(acc / (trials * 8.0 * gain.beta) == doctest::Approx(0.1).epsilon(0.02));
  }
  SUBCASE("absolute mode") {
    double acc = 0.0;
    constexpr int trials = 100000 / 8;
    for (int i = 0; i < trials; ++i) {
      const auto est = apply_cee(rng, h, 0.3, CeeMode::absolute);
      for (std::size_t k = 0; k < h.entries.size(); ++k) acc += std::norm(est.entries[k] - h.entries[k]);
    }
    CHECK(acc / (trials * 8.0) == doctest::Approx(0.3).epsilon(0.02));
  }
}

TEST_CASE("channel set shapes and zero-error estimates") {
  SimulationConfig config;
  RandomStream topo_rng(1);
  const auto topo = drop_users(topo_rng, config, place_stations(config));
  RandomStream rng(2);
  const auto set = build_channel_set(rng, topo, config, 0.0);
  REQUIRE(set.bs_true.size() == 9);
  for (const auto& m : set.bs_true) {
    CHECK(m.n_users() == 180);
    CHECK(m.n_antennas() == 20);
  }
  REQUIRE(set.sc_true.size() == 180);
  for (const auto& m : set.sc_true) {
    CHECK(m.n_users() == 180);
    CHECK(m.n_antennas() == 1);
  }
  for (std::size_t i = 0; i < set.bs_true.size(); ++i) {
    for (std::size_t u = 0; u < 180; ++u) {
      const auto a = set.bs_true[i].user(u);
      const auto b = set.bs_est[i].user(u);
      CHECK(std::equal(a.begin(), a.end(), b.begin()));
    }
  }
  // Link distance is clamped and gains match the stored geometry.
  const auto& g = set.bs_true[4].gain(4 * 20);
  CHECK(g.distance_m == doctest::Approx(link_distance(topo.mcu_positions[80], topo.stations.macro.positions[4], 10.0)));
  CHECK(g.beta == doctest::Approx(beta_from_db(g.pathloss_db, g.shadow_db)));
}

TEST_CASE("estimates are paired across variances") {
  SimulationConfig config;
  config.grid_dim = 1;
  config.k_mcu_per_cell = 4;
  config.n_bs_antennas = 4;
  config.s_sc_per_cell = 2;
  RandomStream topo_rng(1);
  const auto topo = drop_users(topo_rng, config, place_stations(config));
  RandomStream ch_rng(2);
  const auto truth = build_true_channels(ch_rng, topo, config);
  auto a = truth;
  auto b = truth;
  RandomStream cee_a(9);
  RandomStream cee_b(9);
  estimate_channels(cee_a, a, 0.01, CeeMode::relative);
  estimate_channels(cee_b, b, 0.04, CeeMode::relative);
  for (std::size_t u = 0; u < 4; ++u) {
    for (std::size_t k = 0; k < 4; ++k) {
      const cplx ea = a.bs_est[0].user(u)[k] - truth.bs_true[0].user(u)[k];
      const cplx eb = b.bs_est[0].user(u)[k] - truth.bs_true[0].user(u)[k];
      CHECK(std::abs(eb - 2.0 * ea) <= 1e-12 * std::abs(eb));
    }
  }
}
