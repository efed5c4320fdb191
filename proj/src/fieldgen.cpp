#include "stochoptics/fieldgen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stochoptics/errors.hpp"
#include "stochoptics/fft.hpp"
#include "stochoptics/lorentzian.hpp"

namespace stochoptics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Substreams of a trace's stream.  The laser phase lives on substream 0 for
// both laser generators, which is what makes zero jitter reproduce the laser.
constexpr std::uint64_t kPhaseStream = 0;
constexpr std::uint64_t kDetuningStream = 1;
constexpr std::uint64_t kAmplitudeStream = 2;
constexpr std::uint64_t kModeStream = 3;

void require_family(const BeamModelSpec& model, BeamFamily family) {
  if (model.family != family) {
    throw ConfigError("generator for " + std::string(to_string(family)) + " called with a " +
                      std::string(to_string(model.family)) + " model");
  }
}

void check_time_domain(const BeamModelSpec& model, double dt, std::size_t n) {
  model.validate();
  detail::require_positive(dt, "dt");
  if (n < 2) throw DomainError("a trace needs at least two samples");
  if (dt * model.gamma > kMaxStepTimesGamma * (1.0 + 1e-12)) {
    throw ConfigError("time step too coarse: dt = " + std::to_string(dt) + " exceeds 0.01/gamma = " +
                      std::to_string(kMaxStepTimesGamma / model.gamma));
  }
}

void check_spectral(double nu, double gamma, double duration, std::size_t n) {
  detail::require_non_negative(nu, "nu");
  detail::require_positive(gamma, "gamma");
  detail::require_positive(duration, "duration");
  if (n < 2) throw DomainError("a trace needs at least two samples");
  if (!(duration * gamma > kMinDurationTimesGamma)) {
    throw ConfigError("duration too short: " + std::to_string(duration) + " must exceed 10/gamma = " +
                      std::to_string(kMinDurationTimesGamma / gamma));
  }
}

FieldTrace make_trace(const BeamModelSpec& model, double dt, std::size_t n, std::uint64_t seed,
                      std::uint64_t index) {
  FieldTrace t;
  t.samples.resize(static_cast<Eigen::Index>(n));
  t.dt = dt;
  t.model = model;
  t.master_seed = seed;
  t.trace_index = index;
  return t;
}

// Synthesis alpha_j = (1/sqrt(T)) sum_l u_l exp(-i w_l t_j) from mode
// amplitudes in FFT order.
void synthesize(FieldTrace& t, const Eigen::VectorXcd& modes) {
  t.samples = fft::sum_negative_exponent(modes) / std::sqrt(t.duration());
}

}  // namespace

OuStep ou_step(double nu, double gamma, double dt) {
  const double flux = nu * gamma / 4.0;
  return {std::exp(-0.5 * gamma * dt), std::sqrt(flux * -std::expm1(-gamma * dt))};
}

double bin_detuning(std::size_t k, std::size_t n, double dt) {
  const auto signed_k = k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
  return kTwoPi * signed_k / (static_cast<double>(n) * dt);
}

FieldTrace gen_thermal_trace(const BeamModelSpec& model, double dt, std::size_t n,
                             std::uint64_t master_seed, std::uint64_t trace_index) {
  require_family(model, BeamFamily::thermal);
  check_time_domain(model, dt, n);
  FieldTrace t = make_trace(model, dt, n, master_seed, trace_index);
  RandomSource rng(t.stream().substream(kAmplitudeStream));
  const auto [rho, noise_sd] = ou_step(model.nu, model.gamma, dt);
  std::complex<double> a = std::sqrt(model.mean_flux()) * rng.complex_normal();
  t.samples[0] = a;
  for (std::size_t j = 1; j < n; ++j) {
    a = rho * a + noise_sd * rng.complex_normal();
    t.samples[static_cast<Eigen::Index>(j)] = a;
  }
  return t;
}

FieldTrace gen_laser_trace(const BeamModelSpec& model, double dt, std::size_t n,
                           std::uint64_t master_seed, std::uint64_t trace_index) {
  if (model.family != BeamFamily::jittered_laser || model.jitter_band != 0.0) {
    require_family(model, BeamFamily::laser);
  }
  check_time_domain(model, dt, n);
  FieldTrace t = make_trace(model, dt, n, master_seed, trace_index);
  RandomSource rng(t.stream().substream(kPhaseStream));
  const double modulus = std::sqrt(model.mean_flux());
  const double step = std::sqrt(model.gamma * dt);
  double phi = rng.phase();
  t.samples[0] = std::polar(modulus, phi);
  for (std::size_t j = 1; j < n; ++j) {
    phi += step * rng.normal();
    t.samples[static_cast<Eigen::Index>(j)] = std::polar(modulus, phi);
  }
  return t;
}

FieldTrace gen_jittered_laser_trace(const BeamModelSpec& model, double dt, std::size_t n,
                                    std::uint64_t master_seed, std::uint64_t trace_index) {
  require_family(model, BeamFamily::jittered_laser);
  check_time_domain(model, dt, n);
  if (model.jitter_band == 0.0) return gen_laser_trace(model, dt, n, master_seed, trace_index);

  FieldTrace t = make_trace(model, dt, n, master_seed, trace_index);
  RandomSource phase_rng(t.stream().substream(kPhaseStream));
  RandomSource detuning_rng(t.stream().substream(kDetuningStream));

  // Detuning d is OU with stationary sd s and correlation time tau.  Over a
  // step h, (d_(j+1), integral of d) given d_j is bivariate Gaussian.
  const double s = 0.5 * model.jitter_band;
  const double tau = model.jitter_corr_time;
  const double x = dt / tau;
  const double a = std::exp(-x);
  const double one_minus_a = -std::expm1(-x);
  const double var_d = s * s * one_minus_a * (1.0 + a);
  const double bracket = x < 1e-3 ? x * x * x * (1.0 / 3.0 - x / 4.0 + 7.0 * x * x / 60.0)
                                  : x - 2.0 * one_minus_a + 0.5 * one_minus_a * (1.0 + a);
  const double var_phase = 2.0 * s * s * tau * tau * bracket;
  const double cov = s * s * tau * one_minus_a * one_minus_a;
  const double l11 = std::sqrt(var_d);
  const double l21 = cov / l11;
  const double l22 = std::sqrt(std::max(0.0, var_phase - l21 * l21));

  const double modulus = std::sqrt(model.mean_flux());
  const double step = std::sqrt(model.gamma * dt);
  double phi = phase_rng.phase();
  double d = s * detuning_rng.normal();
  t.samples[0] = std::polar(modulus, phi);
  for (std::size_t j = 1; j < n; ++j) {
    const double g1 = detuning_rng.normal();
    const double g2 = detuning_rng.normal();
    const double drift = d * tau * one_minus_a + l21 * g1 + l22 * g2;
    d = a * d + l11 * g1;
    phi += step * phase_rng.normal() + drift;
    t.samples[static_cast<Eigen::Index>(j)] = std::polar(modulus, phi);
  }
  return t;
}

FieldTrace gen_kspace_product_field(double nu, double gamma, double duration, std::size_t n,
                                    std::uint64_t master_seed, std::uint64_t trace_index) {
  check_spectral(nu, gamma, duration, n);
  const double dt = duration / static_cast<double>(n);
  FieldTrace t = make_trace({BeamFamily::kspace_product, nu, gamma}, dt, n, master_seed, trace_index);
  RandomSource rng(t.stream().substream(kModeStream));
  Eigen::VectorXcd modes(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double f = lorentzian(bin_detuning(k, n, dt), gamma);
    modes[static_cast<Eigen::Index>(k)] = std::polar(std::sqrt(nu * f), rng.phase());
  }
  synthesize(t, modes);
  return t;
}

FieldTrace gen_periodic_thermal_field(double nu, double gamma, double duration, std::size_t n,
                                      std::uint64_t master_seed, std::uint64_t trace_index) {
  check_spectral(nu, gamma, duration, n);
  const double dt = duration / static_cast<double>(n);
  FieldTrace t = make_trace({BeamFamily::periodic_thermal, nu, gamma}, dt, n, master_seed, trace_index);
  RandomSource rng(t.stream().substream(kModeStream));
  Eigen::VectorXcd modes(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double f = lorentzian(bin_detuning(k, n, dt), gamma);
    modes[static_cast<Eigen::Index>(k)] = std::sqrt(nu * f) * rng.complex_normal();
  }
  synthesize(t, modes);
  return t;
}

FieldTrace generate(const BeamModelSpec& model, double dt, std::size_t n, std::uint64_t master_seed,
                    std::uint64_t trace_index) {
  switch (model.family) {
    case BeamFamily::thermal: return gen_thermal_trace(model, dt, n, master_seed, trace_index);
    case BeamFamily::laser: return gen_laser_trace(model, dt, n, master_seed, trace_index);
    case BeamFamily::jittered_laser: return gen_jittered_laser_trace(model, dt, n, master_seed, trace_index);
    case BeamFamily::kspace_product:
      return gen_kspace_product_field(model.nu, model.gamma, dt * static_cast<double>(n), n, master_seed,
                                      trace_index);
    case BeamFamily::periodic_thermal:
      return gen_periodic_thermal_field(model.nu, model.gamma, dt * static_cast<double>(n), n, master_seed,
                                        trace_index);
  }
  throw ConfigError("unknown model family");
}

TraceEnsemble make_ensemble(const BeamModelSpec& model, double dt, std::size_t n, std::uint64_t master_seed,
                            std::size_t count) {
  model.validate();
  return TraceEnsemble(count, [model, dt, n, master_seed](std::size_t i) {
    return generate(model, dt, n, master_seed, static_cast<std::uint64_t>(i));
  });
}

}  // namespace stochoptics
