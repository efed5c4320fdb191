#include "stochoptics/rng.hpp"

#include <cmath>
#include <numbers>

#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace stochoptics {

double RandomSource::uniform() {
  boost::random::uniform_01<double> u;
  return u(engine_);
}

double RandomSource::phase() {
  const double p = 2.0 * std::numbers::pi * uniform();
  // uniform() < 1 but the product can round up to 2*pi.
  return p < 2.0 * std::numbers::pi ? p : 0.0;
}

std::uint64_t RandomSource::poisson(double mean) {
  if (mean <= 0.0) return 0;
  boost::random::poisson_distribution<std::int64_t, double> dist(mean);
  return static_cast<std::uint64_t>(dist(engine_));
}

std::uint64_t RandomSource::geometric(double mean) {
  if (mean <= 0.0) return 0;
  // Inversion with log1p: log(1 - p) loses the digits that matter once the
  // success probability p = 1 / (1 + mean) drops below ~1e-8.
  const double log_ratio = -std::log1p(1.0 / mean);  // log(mean / (1 + mean))
  double u = uniform();
  while (u == 0.0) u = uniform();
  return static_cast<std::uint64_t>(std::floor(std::log(u) / log_ratio));
}

}  // namespace stochoptics
