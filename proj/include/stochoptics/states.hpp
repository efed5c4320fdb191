#ifndef STOCHOPTICS_STATES_HPP
#define STOCHOPTICS_STATES_HPP

#include <complex>
#include <cstdint>
#include <utility>

#include "stochoptics/rng.hpp"

namespace stochoptics {

enum class StateKind { thermal, laser };

/// Single-mode thermal (geometric number law, Gaussian P-function) or laser
/// (Poisson number law, fixed-modulus random-phase P-function) state.
struct SingleModeState {
  StateKind kind = StateKind::thermal;
  double mean_photons = 0.0;  ///< nbar for thermal, mu for laser

  static SingleModeState thermal(double nbar);
  static SingleModeState laser(double mu);

  void validate() const;
};

/// [1 / (1 + nbar)] [nbar / (nbar + 1)]^n, evaluated in log space.
double thermal_pmf(double nbar, std::int64_t n);

/// exp(-mu) mu^n / n!, stable for mu up to 1e12 and beyond.
double poisson_pmf(double mu, std::int64_t n);

double pmf(const SingleModeState& state, std::int64_t n);

double photon_number_variance(const SingleModeState& state);

/// Closed interval of photon numbers outside which the state's tail mass is
/// negligible: mean +/- 20 standard deviations, widened for the thermal law
/// until the geometric tail r^(hi+1) is below 1e-12.
std::pair<std::int64_t, std::int64_t> support_bounds(const SingleModeState& state);

/// Sum of pmf over support_bounds.  Linear in the support width.
double pmf_total(const SingleModeState& state);

/// Draws a coherent amplitude from the state's P-function.
std::complex<double> sample_coherent_amplitude(const SingleModeState& state, RandomSource& rng);

/// Draws a photon number from the state's number distribution.
std::uint64_t sample_photon_count(const SingleModeState& state, RandomSource& rng);

}  // namespace stochoptics

#endif  // STOCHOPTICS_STATES_HPP
