#ifndef STOCHOPTICS_RNG_HPP
#define STOCHOPTICS_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace stochoptics {

using Engine = std::mt19937_64;

/// SplitMix64 finaliser; a bijection on 64-bit words with good avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Identifies an independent random stream by a 64-bit key.
///
/// The stream of trace `i` under master seed `s` has key
/// mix64(mix64(s) + 0x9E3779B97F4A7C15 * (i + 1)), so a trace depends only on
/// (s, i) and never on how many other traces exist or which thread made them.
/// Substreams hang off a stream the same way, keyed by a small integer.
class RngStream {
 public:
  explicit constexpr RngStream(std::uint64_t key) : key_(key) {}

  static constexpr RngStream for_trace(std::uint64_t master_seed, std::uint64_t trace_index) {
    return RngStream(mix64(mix64(master_seed) + 0x9E3779B97F4A7C15ULL * (trace_index + 1)));
  }

  constexpr RngStream substream(std::uint64_t index) const {
    return RngStream(mix64(key_ ^ mix64(index + 0xD1B54A32D192ED03ULL)));
  }

  constexpr std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

/// Engine plus the handful of variates the simulators need.  Distributions come
/// from Boost.Random, whose algorithms (unlike the std ones) are fixed across
/// platforms, so a seed reproduces the same numbers everywhere.
class RandomSource {
 public:
  explicit RandomSource(const RngStream& stream) : engine_(stream.key()) {}

  double normal() { return normal_(engine_); }

  /// Uniform on [0, 1).
  double uniform();

  /// Uniform phase on [0, 2*pi).
  double phase();

  /// Circular complex Gaussian with E|z|^2 = 1.
  std::complex<double> complex_normal() {
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    const double re = normal();
    const double im = normal();
    return {kInvSqrt2 * re, kInvSqrt2 * im};
  }

  std::uint64_t poisson(double mean);

  /// Geometric count with the given mean: P(n) = (1 - r) r^n, r = mean / (1 + mean).
  std::uint64_t geometric(double mean);

  Engine& engine() { return engine_; }

 private:
  Engine engine_;
  boost::random::normal_distribution<double> normal_;
};

}  // namespace stochoptics

#endif  // STOCHOPTICS_RNG_HPP
