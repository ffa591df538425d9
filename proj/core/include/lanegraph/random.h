#pragma once

#include <cstdint>

namespace lanegraph {

// Counter-based generator: draw k of stream (seed, stream) is
//
//   z = seed + 0x9E3779B97F4A7C15 * (k + 1) + 0xD1B54A32D192ED03 * stream
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31)
//
// (the SplitMix64 finalizer over a Weyl sequence), all arithmetic mod 2^64.
// Uniform doubles take the top 53 bits. Gaussians use Box-Muller on two
// consecutive uniforms. Only integer arithmetic plus log/sqrt/cos is
// involved, so a seed reproduces the same sequence on every platform with an
// IEEE-754 libm.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  double gaussian(double sigma);

  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace lanegraph
