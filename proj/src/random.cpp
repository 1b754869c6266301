// SPDX-License-Identifier: Apache-2.0

#include "hetnet/random.hpp"

#include <cmath>

namespace hetnet {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose) noexcept {
  return mix64(mix64(mix64(seed) ^ index) ^ static_cast<std::uint64_t>(purpose));
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(seed) {}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose)
    : engine_(derive_seed(seed, index, purpose)) {}

double RandomStream::uniform() { return uniform_(engine_); }

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform_(engine_); }

double RandomStream::normal() { return normal_(engine_); }

std::complex<double> RandomStream::complex_normal() {
  static const double scale = std::sqrt(0.5);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {scale * re, scale * im};
}

bool RandomStream::bernoulli(double p) { return uniform_(engine_) < p; }

}  // namespace hetnet
