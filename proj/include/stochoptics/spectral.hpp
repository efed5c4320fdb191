#ifndef STOCHOPTICS_SPECTRAL_HPP
#define STOCHOPTICS_SPECTRAL_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "stochoptics/field_trace.hpp"
#include "stochoptics/stats.hpp"

namespace stochoptics {

/// Flux per unit frequency on the symmetric detuning grid of a record.
///
/// For odd n the grid is the n DFT detunings in increasing order.  For even n
/// it has n + 1 points running from -pi/dt to +pi/dt, and the Nyquist bin's
/// power is split evenly between the two ends so that the grid is symmetric
/// and the Parseval sum is unchanged.
struct SpectrumEstimate {
  Eigen::VectorXd grid;
  Eigen::VectorXd values;
  Eigen::VectorXd std_errors;
  std::size_t ensemble_size = 0;
  double dt = 0.0;
  std::size_t n_samples = 0;

  double duration() const { return dt * static_cast<double>(n_samples); }
  double grid_spacing() const;
  /// Index of the grid point nearest `detuning`.
  std::size_t nearest(double detuning) const;
};

/// Ensemble means of u(k) u*(k') for a list of detuning pairs.
struct CorrelationEstimate {
  std::vector<std::pair<double, double>> pairs;
  Eigen::VectorXcd values;
  Eigen::VectorXd std_errors;
  std::size_t ensemble_size = 0;
};

/// Lag-indexed complex correlation with Monte Carlo errors.
struct LagCorrelation {
  Eigen::VectorXd tau;
  Eigen::VectorXcd values;
  Eigen::VectorXd std_errors;
  std::size_t ensemble_size = 0;
};

/// u(w_l) = (1 / sqrt(T)) sum_j dt exp(i w_l t_j) alpha_j for every DFT bin,
/// in FFT order (bin k has detuning bin_detuning(k, n, dt)).
Eigen::VectorXcd fourier_amplitudes(const FieldTrace& trace);

/// The same transform at one on-grid detuning, by direct summation.
/// Throws DomainError if `detuning` is not a multiple of 2 pi / T.
std::complex<double> fourier_amplitude_at(const FieldTrace& trace, double detuning);

/// |u(w_l)|^2 of one trace; std_errors are zero and ensemble_size is 1.
SpectrumEstimate periodogram(const FieldTrace& trace);

/// Per-bin ensemble mean and standard error of the periodogram.  Requires at
/// least two traces sharing n and dt.
SpectrumEstimate spectrum(const TraceEnsemble& ensemble);

/// Parseval check quantities for one trace: sum_l |u_l|^2 dw / 2 pi and
/// (1 / T) sum_j |alpha_j|^2 dt.
std::pair<double, double> parseval_sums(const FieldTrace& trace);

/// KS test of single-shot periodogram values at `detuning` against the
/// exponential law whose mean is the ensemble average at that bin.
/// Requires at least 1000 traces.
TestReport periodogram_distribution_test(const TraceEnsemble& ensemble, double detuning);

/// E[u(k) u*(k')] with standard errors for each requested pair.
CorrelationEstimate cross_mode_correlation(const TraceEnsemble& ensemble,
                                           const std::vector<std::pair<double, double>>& pairs);
CorrelationEstimate cross_mode_correlation(const TraceEnsemble& ensemble, double k_detuning,
                                           double kprime_detuning);

/// Homogeneity of windowed mean intensity across window positions.
///
/// The analysis part of every trace is cut into `n_windows` equal windows.
/// The statistic is the two-way (trace x position) variance ratio of the
/// position effect; its p-value comes from `permutations` random
/// relabellings of window positions within each trace, drawn from `seed`.
TestReport stationarity_test(const TraceEnsemble& ensemble, std::size_t n_windows,
                             std::size_t permutations = 4999, std::uint64_t seed = 0x5EED);

/// Two-sample KS comparison of the periodogram at `detuning` between
/// `short_traces` and the leading segment, of the same length, of
/// `long_traces`.  A stationary process gives the same law for both.
TestReport length_consistency_test(const TraceEnsemble& short_traces, const TraceEnsemble& long_traces,
                                   double detuning);

/// E[alpha*(t) alpha(t + tau)] averaged over the analysis window and the
/// ensemble, for lags given in samples.
LagCorrelation lag_correlation(const TraceEnsemble& ensemble, std::span<const std::size_t> lags);

/// c(m) = (1/T) sum_l S(w_l) exp(-i w_l m dt), m = 0..max_lag: the circular
/// autocorrelation (1/n) sum_j alpha*_j alpha_(j+m mod n) implied by a spectrum.
Eigen::VectorXcd autocorrelation_from_spectrum(const SpectrumEstimate& s, std::size_t max_lag);

/// sum_j conj(x_j) x_(j+m) for m = 0..max_lag (linear, not wrapped).
Eigen::VectorXcd lagged_products(const Eigen::VectorXcd& x, std::size_t max_lag);

/// Converts a time lag to a whole number of samples; throws DomainError if
/// `tau` is not a multiple of dt.
std::size_t lag_in_samples(double tau, double dt);

/// CSV rows under the header "grid,value,std_error".
void write_csv(std::ostream& out, const SpectrumEstimate& s);

}  // namespace stochoptics

#endif  // STOCHOPTICS_SPECTRAL_HPP
