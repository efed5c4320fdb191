#ifndef STOCHOPTICS_FIELDGEN_HPP
#define STOCHOPTICS_FIELDGEN_HPP

#include <complex>
#include <cstddef>
#include <cstdint>

#include "stochoptics/field_trace.hpp"

namespace stochoptics {

/// Largest time step accepted by the time-domain generators, in units of 1 / gamma.
inline constexpr double kMaxStepTimesGamma = 0.01;

/// Minimum record length of the spectral generators, in units of 1 / gamma.
inline constexpr double kMinDurationTimesGamma = 10.0;

/// Complex Ornstein-Uhlenbeck field with kernel exp(-gamma |tau| / 2) and
/// E|alpha|^2 = nu gamma / 4, sampled with the exact transition law.
FieldTrace gen_thermal_trace(const BeamModelSpec& model, double dt, std::size_t n,
                             std::uint64_t master_seed, std::uint64_t trace_index);

/// Constant-modulus field sqrt(nu gamma / 4) exp(i phi) with Wiener phase,
/// phi_(j+1) = phi_j + sqrt(gamma dt) g_j and phi_0 uniform on [0, 2 pi).
FieldTrace gen_laser_trace(const BeamModelSpec& model, double dt, std::size_t n,
                           std::uint64_t master_seed, std::uint64_t trace_index);

/// Phase-diffusing laser whose instantaneous detuning wanders as a real OU
/// process of standard deviation jitter_band / 2 and correlation time
/// jitter_corr_time.  Detuning and integrated phase advance exactly.  With
/// jitter_band == 0 the output equals gen_laser_trace bit for bit.
FieldTrace gen_jittered_laser_trace(const BeamModelSpec& model, double dt, std::size_t n,
                                    std::uint64_t master_seed, std::uint64_t trace_index);

/// Tensor-product-of-modes field: every DFT mode w_l = 2 pi l / T carries a
/// fixed modulus sqrt(nu f(w_l)) and an independent uniform phase.
FieldTrace gen_kspace_product_field(double nu, double gamma, double duration, std::size_t n,
                                    std::uint64_t master_seed, std::uint64_t trace_index);

/// Exactly periodic thermal field: independent complex Gaussian mode
/// amplitudes with E|u_l|^2 = nu f(w_l).
FieldTrace gen_periodic_thermal_field(double nu, double gamma, double duration, std::size_t n,
                                      std::uint64_t master_seed, std::uint64_t trace_index);

/// Dispatches on model.family.  For the spectral families the duration is n dt.
FieldTrace generate(const BeamModelSpec& model, double dt, std::size_t n, std::uint64_t master_seed,
                    std::uint64_t trace_index);

/// Traces 0 .. count-1 of one model, generated on demand.
TraceEnsemble make_ensemble(const BeamModelSpec& model, double dt, std::size_t n,
                            std::uint64_t master_seed, std::size_t count);

/// Exact one-step transition of the stationary complex OU process:
/// rho = exp(-gamma dt / 2) and noise variance (nu gamma / 4)(1 - exp(-gamma dt)).
struct OuStep {
  double rho;
  double noise_sd;
};
OuStep ou_step(double nu, double gamma, double dt);

/// Angular frequency of DFT bin k for n samples at spacing dt, with bins above
/// n / 2 folded to negative detunings.
double bin_detuning(std::size_t k, std::size_t n, double dt);

}  // namespace stochoptics

#endif  // STOCHOPTICS_FIELDGEN_HPP
