#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace freereg {

/*
 * Deterministic stream generator.  SplitMix64 steps a 64-bit counter through
 * a strong mixing function, so a stream is fully determined by its starting
 * state and substream(master, index) derives independent streams for
 * (seed, trial) pairs without any coordination.  Gaussians come from
 * Box-Muller on (0,1] uniforms; together with fixed sampling order this
 * makes every sampled object a pure function of (seed, index).
 */
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  static RngStream substream(std::uint64_t master, std::uint64_t index) {
    // Decorrelate (master, index) pairs by running the index through the
    // mixer before folding it into the master seed.
    std::uint64_t salted = mix(index + 0x9E3779B97F4A7C15ULL);
    return RngStream(mix(master ^ salted));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform on (0, 1]; never 0, so log() below stays finite.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_unit();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace freereg
