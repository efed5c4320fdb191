#ifndef STOCHOPTICS_PHOTONICS_HPP
#define STOCHOPTICS_PHOTONICS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "stochoptics/field_trace.hpp"
#include "stochoptics/rng.hpp"

namespace stochoptics {

/// Single-pole Lorentzian filter centred at `center_detuning` with power FWHM
/// `fwhm` (both rad/s).
struct FilterSpec {
  double center_detuning = 0.0;
  double fwhm = 1.0;

  /// Throws ConfigError unless 0 < fwhm < pi / dt.
  void validate(double dt) const;
};

/// Amplitude response t(w) = (fwhm/2) / ((fwhm/2) - i (w - w_f)).  |t|^2 is the
/// unit-peak Lorentzian of the same FWHM.
std::complex<double> transmission(const FilterSpec& filter, double detuning);

/// Start-up margin discarded after filtering, 10 / fwhm.
double filter_margin(const FilterSpec& filter);

/// Multiplies the record's DFT by t(w_l) and transforms back.  The output
/// keeps the grid; its analysis_start moves past the filter margin.  Throws
/// ConfigError if the filter is unresolvable or the margin leaves fewer than
/// two samples.
FieldTrace apply_filter(const FieldTrace& trace, const FilterSpec& filter);

/// Same, for an arbitrary transfer function of detuning.  The caller manages
/// analysis_start.
FieldTrace apply_transfer(const FieldTrace& trace, const std::function<std::complex<double>(double)>& h);

/// Lazily filtered view of an ensemble.
TraceEnsemble filtered(const TraceEnsemble& ensemble, const FilterSpec& filter);

struct IntensityCorrelation {
  Eigen::VectorXd tau;
  Eigen::VectorXd values;
  Eigen::VectorXd std_errors;
  std::size_t ensemble_size = 0;
};

/// g2(tau) = <I(t) I(t+tau)> / <I>^2 with I = |alpha|^2, averaged over the
/// analysis window and the ensemble.  Each trace contributes
/// 1 + mean((I_t - m)(I_(t+tau) - m)) / m^2 with m its mean intensity; the
/// estimate is the ensemble mean of these and the error their standard error.
/// Lags must be multiples of dt.
IntensityCorrelation g2(const TraceEnsemble& ensemble, std::span<const double> tau_grid);

struct PhotonCountRecord {
  double window = 0.0;  ///< window length actually used, a whole number of samples
  std::vector<std::uint64_t> counts;
  double mean = 0.0;
  double fano = 0.0;
};

/// Substream of a trace's stream reserved for photon counting.
inline constexpr std::uint64_t kCountingStream = 0xC0C0;

/// Cuts the analysis window into consecutive windows of `window` seconds and
/// draws a Poisson count per window with mean equal to the trapezoidal
/// integral of |alpha|^2.  Window k uses stream.substream(k).
PhotonCountRecord photon_counts(const FieldTrace& trace, double window, const RngStream& stream);
PhotonCountRecord photon_counts(const FieldTrace& trace, double window);

/// Sample variance over sample mean.  Throws DomainError for fewer than two
/// windows or zero mean.
double fano_factor(std::span<const std::uint64_t> counts);

/// Intensities |alpha|^2 sampled every `stride` samples from the analysis
/// window of every trace, in trace order.
std::vector<double> sample_intensities(const TraceEnsemble& ensemble, std::size_t stride);

struct SweepEnsemble {
  std::size_t n_traces = 8;
  std::size_t samples_per_trace = std::size_t{1} << 20;
  double dt_max = 0.01;  ///< seconds; the per-row step is min(dt_max, pi / (8 delta_omega))
  std::uint64_t master_seed = 1;
};

struct SweepRow {
  double delta_omega = 0.0;
  double g2 = 0.0;
  double std_error = 0.0;
  std::size_t ensemble_size = 0;
  double dt = 0.0;
};

/// g2(0) after a zero-detuning Lorentzian filter of each width in
/// `delta_omegas`.
std::vector<SweepRow> filtered_laser_sweep(const BeamModelSpec& model, std::span<const double> delta_omegas,
                                           const SweepEnsemble& params);

}  // namespace stochoptics

#endif  // STOCHOPTICS_PHOTONICS_HPP
