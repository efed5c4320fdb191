#include "stochoptics/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/poisson.hpp>

#include "stochoptics/errors.hpp"

namespace stochoptics {

SingleModeState SingleModeState::thermal(double nbar) {
  SingleModeState s{StateKind::thermal, nbar};
  s.validate();
  return s;
}

SingleModeState SingleModeState::laser(double mu) {
  SingleModeState s{StateKind::laser, mu};
  s.validate();
  return s;
}

void SingleModeState::validate() const { detail::require_non_negative(mean_photons, "mean_photons"); }

namespace {

void require_count(std::int64_t n) {
  if (n < 0) throw DomainError("photon number must be non-negative, got " + std::to_string(n));
}

}  // namespace

double thermal_pmf(double nbar, std::int64_t n) {
  detail::require_non_negative(nbar, "nbar");
  require_count(n);
  if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
  const double log_p = -std::log1p(nbar) - static_cast<double>(n) * std::log1p(1.0 / nbar);
  return std::exp(log_p);
}

double poisson_pmf(double mu, std::int64_t n) {
  detail::require_non_negative(mu, "mu");
  require_count(n);
  if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
  // Boost evaluates the mass through the regularised incomplete gamma
  // derivative, which stays accurate where n log(mu) - lgamma(n+1) cancels.
  return boost::math::pdf(boost::math::poisson_distribution<double>(mu), static_cast<double>(n));
}

double pmf(const SingleModeState& state, std::int64_t n) {
  return state.kind == StateKind::thermal ? thermal_pmf(state.mean_photons, n)
                                          : poisson_pmf(state.mean_photons, n);
}

double photon_number_variance(const SingleModeState& state) {
  state.validate();
  const double m = state.mean_photons;
  return state.kind == StateKind::thermal ? m * m + m : m;
}

std::pair<std::int64_t, std::int64_t> support_bounds(const SingleModeState& state) {
  state.validate();
  const double m = state.mean_photons;
  if (m == 0.0) return {0, 0};
  const double sd = std::sqrt(photon_number_variance(state));
  double lo = std::max(0.0, std::floor(m - 20.0 * sd));
  // The +40 floor keeps the Poisson tail below 1e-12 when m is small.
  double hi = std::ceil(m + 20.0 * sd + 40.0);
  if (state.kind == StateKind::thermal) {
    lo = 0.0;
    const double tail = std::ceil(std::log(1e-12) / -std::log1p(1.0 / m));
    hi = std::max(hi, tail);
  }
  if (hi > static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2)) {
    throw DomainError("support of the state is too wide to enumerate");
  }
  return {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
}

double pmf_total(const SingleModeState& state) {
  const auto [lo, hi] = support_bounds(state);
  double sum = 0.0;
  double c = 0.0;
  for (std::int64_t n = lo; n <= hi; ++n) {
    const double y = pmf(state, n) - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::complex<double> sample_coherent_amplitude(const SingleModeState& state, RandomSource& rng) {
  state.validate();
  if (state.kind == StateKind::thermal) return std::sqrt(state.mean_photons) * rng.complex_normal();
  return std::polar(std::sqrt(state.mean_photons), rng.phase());
}

std::uint64_t sample_photon_count(const SingleModeState& state, RandomSource& rng) {
  state.validate();
  return state.kind == StateKind::thermal ? rng.geometric(state.mean_photons)
                                          : rng.poisson(state.mean_photons);
}

}  // namespace stochoptics
