#include "stochoptics/photonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stochoptics/errors.hpp"
#include "stochoptics/fft.hpp"
#include "stochoptics/fieldgen.hpp"
#include "stochoptics/parallel.hpp"
#include "stochoptics/spectral.hpp"
#include "stochoptics/stats.hpp"

namespace stochoptics {

void FilterSpec::validate(double dt) const {
  if (!std::isfinite(center_detuning)) throw ConfigError("filter centre must be finite");
  if (!(fwhm > 0.0) || !std::isfinite(fwhm)) throw ConfigError("filter width must be positive and finite");
  if (!(fwhm < std::numbers::pi / dt)) {
    throw ConfigError("filter width " + std::to_string(fwhm) + " is not resolvable at dt = " + std::to_string(dt) +
                      " (needs fwhm < pi/dt = " + std::to_string(std::numbers::pi / dt) + ")");
  }
}

std::complex<double> transmission(const FilterSpec& filter, double detuning) {
  const double half = 0.5 * filter.fwhm;
  return half / std::complex<double>(half, -(detuning - filter.center_detuning));
}

double filter_margin(const FilterSpec& filter) { return 10.0 / filter.fwhm; }

FieldTrace apply_transfer(const FieldTrace& trace, const std::function<std::complex<double>(double)>& h) {
  trace.validate();
  const std::size_t n = trace.size();
  Eigen::VectorXcd modes = fft::sum_positive_exponent(trace.samples);
  for (std::size_t k = 0; k < n; ++k) modes[static_cast<Eigen::Index>(k)] *= h(bin_detuning(k, n, trace.dt));
  FieldTrace out = trace;
  out.samples = fft::sum_negative_exponent(modes) / static_cast<double>(n);
  return out;
}

FieldTrace apply_filter(const FieldTrace& trace, const FilterSpec& filter) {
  filter.validate(trace.dt);
  const auto margin = static_cast<std::size_t>(std::ceil(filter_margin(filter) / trace.dt));
  const std::size_t start = trace.analysis_start + margin;
  if (start + 2 > trace.size()) {
    throw ConfigError("trace of duration " + std::to_string(trace.duration()) +
                      " is too short for the filter start-up margin " + std::to_string(filter_margin(filter)));
  }
  FieldTrace out = apply_transfer(trace, [&](double w) { return transmission(filter, w); });
  out.analysis_start = start;
  return out;
}

TraceEnsemble filtered(const TraceEnsemble& ensemble, const FilterSpec& filter) {
  return ensemble.transformed([filter](FieldTrace t) { return apply_filter(t, filter); });
}

IntensityCorrelation g2(const TraceEnsemble& ensemble, std::span<const double> tau_grid) {
  if (ensemble.empty()) throw DomainError("g2 of an empty ensemble");
  if (tau_grid.empty()) throw DomainError("no lags requested");
  std::vector<RunningMoments> acc(tau_grid.size());
  const FieldTrace first = ensemble[0];
  std::vector<std::size_t> lags;
  for (double tau : tau_grid) lags.push_back(lag_in_samples(tau, first.dt));
  const std::size_t max_lag = *std::max_element(lags.begin(), lags.end());
  map_reduce_ordered(
      ensemble.size(),
      [&](std::size_t i) {
        const FieldTrace t = i == 0 ? first : ensemble[i];
        t.validate();
        if (t.dt != first.dt) throw DomainError("ensemble members have different time steps");
        const Eigen::ArrayXd intensity = t.samples.tail(static_cast<Eigen::Index>(t.analysis_size())).array().abs2();
        const double m = intensity.mean();
        if (!(m > 0.0)) throw DomainError("g2 undefined for a trace of zero intensity");
        const Eigen::VectorXcd centered = (intensity - m).matrix().cast<std::complex<double>>();
        const Eigen::VectorXcd sums = lagged_products(centered, max_lag);
        std::vector<double> values(lags.size());
        for (std::size_t k = 0; k < lags.size(); ++k) {
          const double len = static_cast<double>(intensity.size()) - static_cast<double>(lags[k]);
          values[k] = 1.0 + sums[static_cast<Eigen::Index>(lags[k])].real() / len / (m * m);
        }
        return values;
      },
      [&](std::size_t, std::vector<double> values) {
        for (std::size_t k = 0; k < values.size(); ++k) acc[k].add(values[k]);
      });
  IntensityCorrelation out;
  const auto m = static_cast<Eigen::Index>(tau_grid.size());
  out.tau.resize(m);
  out.values.resize(m);
  out.std_errors.resize(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    out.tau[k] = static_cast<double>(lags[kk]) * first.dt;
    out.values[k] = acc[kk].mean();
    out.std_errors[k] = acc[kk].std_error();
  }
  out.ensemble_size = ensemble.size();
  return out;
}

PhotonCountRecord photon_counts(const FieldTrace& trace, double window, const RngStream& stream) {
  trace.validate();
  if (!(window >= trace.dt * (1.0 - 1e-9)) || !std::isfinite(window)) {
    throw ConfigError("counting window " + std::to_string(window) + " is shorter than dt = " + std::to_string(trace.dt));
  }
  const auto w = static_cast<std::size_t>(std::floor(window / trace.dt + 1e-9));
  const std::size_t available = trace.analysis_size() - 1;
  const std::size_t n_windows = available / w;
  if (n_windows < 10) {
    throw ConfigError("counting window " + std::to_string(window) + " leaves fewer than 10 windows in the trace");
  }
  PhotonCountRecord rec;
  rec.window = static_cast<double>(w) * trace.dt;
  rec.counts.resize(n_windows);
  const auto& s = trace.samples;
  for (std::size_t k = 0; k < n_windows; ++k) {
    const std::size_t a = trace.analysis_start + k * w;
    double integral = 0.5 * (std::norm(s[static_cast<Eigen::Index>(a)]) + std::norm(s[static_cast<Eigen::Index>(a + w)]));
    for (std::size_t j = a + 1; j < a + w; ++j) integral += std::norm(s[static_cast<Eigen::Index>(j)]);
    integral *= trace.dt;
    RandomSource rng(stream.substream(k));
    rec.counts[k] = rng.poisson(integral);
  }
  RunningMoments moments;
  for (auto c : rec.counts) moments.add(static_cast<double>(c));
  rec.mean = moments.mean();
  rec.fano = rec.mean > 0.0 ? moments.variance() / rec.mean : 0.0;
  return rec;
}

PhotonCountRecord photon_counts(const FieldTrace& trace, double window) {
  return photon_counts(trace, window, trace.stream().substream(kCountingStream));
}

double fano_factor(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) throw DomainError("Fano factor needs at least two windows");
  RunningMoments m;
  for (auto c : counts) m.add(static_cast<double>(c));
  if (!(m.mean() > 0.0)) throw DomainError("Fano factor undefined for zero mean count");
  return m.variance() / m.mean();
}

std::vector<double> sample_intensities(const TraceEnsemble& ensemble, std::size_t stride) {
  if (stride == 0) throw DomainError("stride must be positive");
  std::vector<double> out;
  map_reduce_ordered(
      ensemble.size(),
      [&](std::size_t i) {
        const FieldTrace t = ensemble[i];
        t.validate();
        std::vector<double> v;
        for (std::size_t j = t.analysis_start; j < t.size(); j += stride) v.push_back(std::norm(t.samples[static_cast<Eigen::Index>(j)]));
        return v;
      },
      [&](std::size_t, std::vector<double> v) { out.insert(out.end(), v.begin(), v.end()); });
  return out;
}

std::vector<SweepRow> filtered_laser_sweep(const BeamModelSpec& model, std::span<const double> delta_omegas,
                                           const SweepEnsemble& params) {
  model.validate();
  detail::require_positive(params.dt_max, "dt_max");
  if (params.n_traces < 2) throw ConfigError("sweep needs at least two traces per row");
  std::vector<SweepRow> rows;
  const double zero_lag[] = {0.0};
  for (double dw : delta_omegas) {
    detail::require_positive(dw, "delta_omega");
    const double dt = std::min({params.dt_max, std::numbers::pi / (8.0 * dw), kMaxStepTimesGamma / model.gamma});
    const FilterSpec filter{0.0, dw};
    const auto ensemble = filtered(make_ensemble(model, dt, params.samples_per_trace, params.master_seed, params.n_traces), filter);
    const auto g = g2(ensemble, zero_lag);
    rows.push_back(SweepRow{.delta_omega = dw, .g2 = g.values[0], .std_error = g.std_errors[0],
                            .ensemble_size = g.ensemble_size, .dt = dt});
  }
  return rows;
}

}  // namespace stochoptics
