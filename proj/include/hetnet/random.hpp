// SPDX-License-Identifier: Apache-2.0
//
// Reproducible random streams. Every realization owns a family of independent
// streams whose seeds are a pure function of (run seed, realization, purpose),
// so results never depend on scheduling or thread count.

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace hetnet {

/// Purpose tags for per-realization substreams. Keeping the CEE draws on their
/// own stream lets a CEE sweep reuse topology and fading across variances.
enum class StreamPurpose : std::uint64_t {
  topology = 1,
  channel = 2,
  cee = 3,
  oracle = 4,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of substream `purpose` of realization `index` under run seed `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose) noexcept;

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);
  RandomStream(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose);

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  double normal();
  /// Circularly-symmetric complex Gaussian, E|z|^2 = 1.
  std::complex<double> complex_normal();
  bool bernoulli(double p);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace hetnet
