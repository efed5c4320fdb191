#ifndef STOCHOPTICS_TEST_SUPPORT_HPP
#define STOCHOPTICS_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace testing {

/// Seeded generator for property tests.
class Cases {
 public:
  explicit Cases(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  std::uint64_t seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline bool within_sigma(double value, double expected, double sigma, double k = 3.0) {
  return std::abs(value - expected) <= k * sigma;
}

}  // namespace testing

#endif  // STOCHOPTICS_TEST_SUPPORT_HPP
