#include "stochoptics/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <string>

#include <boost/random/uniform_int_distribution.hpp>

#include "stochoptics/errors.hpp"
#include "stochoptics/fft.hpp"
#include "stochoptics/fieldgen.hpp"
#include "stochoptics/parallel.hpp"

namespace stochoptics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct VectorMoments {
  std::size_t n = 0;
  Eigen::ArrayXd mean;
  Eigen::ArrayXd m2;

  void add(const Eigen::ArrayXd& x) {
    if (n == 0) {
      mean = Eigen::ArrayXd::Zero(x.size());
      m2 = Eigen::ArrayXd::Zero(x.size());
    }
    ++n;
    const Eigen::ArrayXd delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  Eigen::ArrayXd std_error() const {
    if (n < 2) return Eigen::ArrayXd::Zero(mean.size());
    return (m2 / static_cast<double>(n - 1) / static_cast<double>(n)).sqrt();
  }
};

// FFT-order bin values to the symmetric grid described on SpectrumEstimate.
Eigen::VectorXd to_symmetric(const Eigen::ArrayXd& fft_order, std::size_t n) {
  const bool even = n % 2 == 0;
  const std::size_t m = even ? n + 1 : n;
  Eigen::VectorXd out(static_cast<Eigen::Index>(m));
  const std::size_t neg = n / 2;  // number of strictly negative bins, counting Nyquist for even n
  for (std::size_t i = 0; i < neg; ++i) out[static_cast<Eigen::Index>(i)] = fft_order[static_cast<Eigen::Index>(n - neg + i)];
  for (std::size_t k = 0; k < n - neg; ++k) out[static_cast<Eigen::Index>(neg + k)] = fft_order[static_cast<Eigen::Index>(k)];
  if (even) {
    const double half = 0.5 * fft_order[static_cast<Eigen::Index>(n / 2)];
    out[0] = half;
    out[static_cast<Eigen::Index>(m - 1)] = half;
  }
  return out;
}

Eigen::VectorXd symmetric_grid(std::size_t n, double dt) {
  const bool even = n % 2 == 0;
  const std::size_t m = even ? n + 1 : n;
  const double dw = kTwoPi / (static_cast<double>(n) * dt);
  const double first = -static_cast<double>(n / 2);
  Eigen::VectorXd g(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) g[static_cast<Eigen::Index>(i)] = (first + static_cast<double>(i)) * dw;
  return g;
}

Eigen::ArrayXd power_fft_order(const FieldTrace& trace) { return fourier_amplitudes(trace).array().abs2(); }

// Bin index in [0, n) of an on-grid detuning.
std::size_t grid_bin(double detuning, std::size_t n, double dt) {
  const double q = detuning * static_cast<double>(n) * dt / kTwoPi;
  const double r = std::round(q);
  if (!std::isfinite(q) || std::abs(q - r) > 1e-6 * std::max(1.0, std::abs(r))) {
    throw DomainError("detuning " + std::to_string(detuning) + " is not on the trace frequency grid");
  }
  const auto nn = static_cast<long long>(n);
  long long k = static_cast<long long>(r) % nn;
  if (k < 0) k += nn;
  return static_cast<std::size_t>(k);
}

void require_same_grid(const FieldTrace& ref, const FieldTrace& t) {
  if (t.size() != ref.size() || t.dt != ref.dt) throw DomainError("ensemble members have different frequency grids");
}

FieldTrace leading_segment(const FieldTrace& t, std::size_t n) {
  FieldTrace out = t;
  out.samples = t.samples.head(static_cast<Eigen::Index>(n));
  out.analysis_start = std::min(t.analysis_start, n - 2);
  return out;
}

}  // namespace

double SpectrumEstimate::grid_spacing() const { return kTwoPi / duration(); }

std::size_t SpectrumEstimate::nearest(double detuning) const {
  if (grid.size() == 0) throw DomainError("empty spectrum");
  Eigen::Index best = 0;
  (grid.array() - detuning).abs().minCoeff(&best);
  return static_cast<std::size_t>(best);
}

Eigen::VectorXcd fourier_amplitudes(const FieldTrace& trace) {
  trace.validate();
  return fft::sum_positive_exponent(trace.samples) * (trace.dt / std::sqrt(trace.duration()));
}

std::complex<double> fourier_amplitude_at(const FieldTrace& trace, double detuning) {
  trace.validate();
  const std::size_t n = trace.size();
  const std::size_t k = grid_bin(detuning, n, trace.dt);
  const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
  const std::complex<double> w = std::polar(1.0, theta);
  constexpr std::size_t kBlock = 512;
  std::complex<double> sum = 0.0;
  for (std::size_t start = 0; start < n; start += kBlock) {
    // Exact phasor at the block start keeps the recurrence error bounded.
    const auto phase_index = static_cast<double>((static_cast<unsigned __int128>(k) * start) % n);
    std::complex<double> p = std::polar(1.0, kTwoPi * phase_index / static_cast<double>(n));
    std::complex<double> block = 0.0;
    const std::size_t end = std::min(n, start + kBlock);
    for (std::size_t j = start; j < end; ++j) {
      block += p * trace.samples[static_cast<Eigen::Index>(j)];
      p *= w;
    }
    sum += block;
  }
  return sum * (trace.dt / std::sqrt(trace.duration()));
}

SpectrumEstimate periodogram(const FieldTrace& trace) {
  const std::size_t n = trace.size();
  SpectrumEstimate s;
  s.values = to_symmetric(power_fft_order(trace), n);
  s.grid = symmetric_grid(n, trace.dt);
  s.std_errors = Eigen::VectorXd::Zero(s.values.size());
  s.ensemble_size = 1;
  s.dt = trace.dt;
  s.n_samples = n;
  return s;
}

SpectrumEstimate spectrum(const TraceEnsemble& ensemble) {
  if (ensemble.size() < 2) throw DomainError("spectrum needs at least two traces");
  const FieldTrace first = ensemble[0];
  first.validate();
  VectorMoments acc;
  map_reduce_ordered(
      ensemble.size(),
      [&](std::size_t i) {
        const FieldTrace t = i == 0 ? first : ensemble[i];
        require_same_grid(first, t);
        return power_fft_order(t);
      },
      [&](std::size_t, Eigen::ArrayXd p) { acc.add(p); });
  SpectrumEstimate s;
  const std::size_t n = first.size();
  s.values = to_symmetric(acc.mean, n);
  s.std_errors = to_symmetric(acc.std_error(), n);
  s.grid = symmetric_grid(n, first.dt);
  s.ensemble_size = acc.n;
  s.dt = first.dt;
  s.n_samples = n;
  return s;
}

std::pair<double, double> parseval_sums(const FieldTrace& trace) {
  const double spectral = power_fft_order(trace).sum() / trace.duration();
  const double temporal = trace.samples.squaredNorm() * trace.dt / trace.duration();
  return {spectral, temporal};
}

TestReport periodogram_distribution_test(const TraceEnsemble& ensemble, double detuning) {
  if (ensemble.size() < 1000) {
    throw DomainError("periodogram distribution test needs at least 1000 traces, got " +
                      std::to_string(ensemble.size()));
  }
  std::vector<double> values;
  values.reserve(ensemble.size());
  map_reduce_ordered(
      ensemble.size(), [&](std::size_t i) { return std::norm(fourier_amplitude_at(ensemble[i], detuning)); },
      [&](std::size_t, double v) { values.push_back(v); });
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (!(mean > 0.0)) {
    return TestReport{.statistic = 1.0, .p_value = 0.0, .pass = false, .sample_size = values.size()};
  }
  return ks_exponential(values, mean);
}

CorrelationEstimate cross_mode_correlation(const TraceEnsemble& ensemble,
                                           const std::vector<std::pair<double, double>>& pairs) {
  if (ensemble.size() < 2) throw DomainError("cross-mode correlation needs at least two traces");
  if (pairs.empty()) throw DomainError("no detuning pairs requested");
  std::vector<double> detunings;
  for (const auto& [a, b] : pairs) {
    detunings.push_back(a);
    detunings.push_back(b);
  }
  std::vector<RunningMoments> re(pairs.size()), im(pairs.size());
  map_reduce_ordered(
      ensemble.size(),
      [&](std::size_t i) {
        const FieldTrace t = ensemble[i];
        std::map<double, std::complex<double>> cache;
        Eigen::VectorXcd products(static_cast<Eigen::Index>(pairs.size()));
        auto amplitude = [&](double d) {
          auto it = cache.find(d);
          if (it == cache.end()) it = cache.emplace(d, fourier_amplitude_at(t, d)).first;
          return it->second;
        };
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          products[static_cast<Eigen::Index>(p)] = amplitude(pairs[p].first) * std::conj(amplitude(pairs[p].second));
        }
        return products;
      },
      [&](std::size_t, Eigen::VectorXcd products) {
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          re[p].add(products[static_cast<Eigen::Index>(p)].real());
          im[p].add(products[static_cast<Eigen::Index>(p)].imag());
        }
      });
  CorrelationEstimate out;
  out.pairs = pairs;
  out.values.resize(static_cast<Eigen::Index>(pairs.size()));
  out.std_errors.resize(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    out.values[static_cast<Eigen::Index>(p)] = {re[p].mean(), im[p].mean()};
    out.std_errors[static_cast<Eigen::Index>(p)] = std::hypot(re[p].std_error(), im[p].std_error());
  }
  out.ensemble_size = ensemble.size();
  return out;
}

CorrelationEstimate cross_mode_correlation(const TraceEnsemble& ensemble, double k_detuning,
                                           double kprime_detuning) {
  return cross_mode_correlation(ensemble, {{k_detuning, kprime_detuning}});
}

TestReport stationarity_test(const TraceEnsemble& ensemble, std::size_t n_windows, std::size_t permutations,
                             std::uint64_t seed) {
  if (n_windows < 4) throw DomainError("stationarity test needs at least 4 windows");
  if (ensemble.size() < 2) throw DomainError("stationarity test needs at least two traces");
  if (permutations < 1) throw DomainError("stationarity test needs at least one permutation");
  const auto rows = static_cast<Eigen::Index>(ensemble.size());
  const auto cols = static_cast<Eigen::Index>(n_windows);
  Eigen::MatrixXd m(rows, cols);
  map_reduce_ordered(
      ensemble.size(),
      [&](std::size_t i) {
        const FieldTrace t = ensemble[i];
        t.validate();
        const std::size_t w = t.analysis_size() / n_windows;
        if (w < 1) {
          throw DomainError("trace of " + std::to_string(t.analysis_size()) + " analysis samples is shorter than " +
                            std::to_string(n_windows) + " windows");
        }
        Eigen::VectorXd means(cols);
        for (Eigen::Index k = 0; k < cols; ++k) {
          const auto start = static_cast<Eigen::Index>(t.analysis_start + static_cast<std::size_t>(k) * w);
          means[k] = t.samples.segment(start, static_cast<Eigen::Index>(w)).cwiseAbs2().mean();
        }
        return means;
      },
      [&](std::size_t i, Eigen::VectorXd means) { m.row(static_cast<Eigen::Index>(i)) = means.transpose(); });

  const double grand = m.mean();
  const double spread = (m.array() - grand).abs().maxCoeff();
  if (!(spread > 1e-12 * std::abs(grand))) {
    return TestReport{.statistic = 0.0, .p_value = 1.0, .pass = true, .sample_size = ensemble.size()};
  }
  const Eigen::VectorXd row_means = m.rowwise().mean();
  const double ss_total = (m.array() - grand).square().sum();
  const double ss_rows = static_cast<double>(cols) * (row_means.array() - grand).square().sum();
  auto ss_columns = [&](const Eigen::MatrixXd& x) {
    return static_cast<double>(rows) * (x.colwise().mean().array() - grand).square().sum();
  };
  const double ss_cols = ss_columns(m);
  const double ss_error = std::max(ss_total - ss_rows - ss_cols, 0.0);
  const double df_cols = static_cast<double>(cols - 1);
  const double df_error = static_cast<double>((rows - 1) * (cols - 1));
  const double f_stat = ss_error > 0.0 ? (ss_cols / df_cols) / (ss_error / df_error)
                                       : std::numeric_limits<double>::infinity();

  // Row and total sums of squares are invariant under within-row
  // relabelling, so the column sum of squares orders permutations like F.
  Engine engine(RngStream(seed).key());
  Eigen::MatrixXd shuffled = m;
  std::size_t at_least = 0;
  for (std::size_t b = 0; b < permutations; ++b) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index k = cols - 1; k > 0; --k) {
        boost::random::uniform_int_distribution<Eigen::Index> pick(0, k);
        std::swap(shuffled(r, k), shuffled(r, pick(engine)));
      }
    }
    if (ss_columns(shuffled) >= ss_cols * (1.0 - 1e-12)) ++at_least;
  }
  const double p = static_cast<double>(at_least + 1) / static_cast<double>(permutations + 1);
  return TestReport{.statistic = f_stat, .p_value = p, .pass = p > kSignificance, .sample_size = ensemble.size()};
}

TestReport length_consistency_test(const TraceEnsemble& short_traces, const TraceEnsemble& long_traces,
                                   double detuning) {
  if (short_traces.empty() || long_traces.empty()) throw DomainError("length consistency test needs traces");
  const FieldTrace ref = short_traces[0];
  const std::size_t n = ref.size();
  auto collect = [&](const TraceEnsemble& e, bool truncate) {
    std::vector<double> values;
    values.reserve(e.size());
    map_reduce_ordered(
        e.size(),
        [&](std::size_t i) {
          FieldTrace t = e[i];
          if (std::abs(t.dt - ref.dt) > 1e-12 * ref.dt) throw DomainError("length consistency test needs equal dt");
          if (truncate) {
            if (t.size() < n) throw DomainError("long traces are shorter than short traces");
            t = leading_segment(t, n);
          } else if (t.size() != n) {
            throw DomainError("short traces have different lengths");
          }
          return std::norm(fourier_amplitude_at(t, detuning));
        },
        [&](std::size_t, double v) { values.push_back(v); });
    return values;
  };
  const auto a = collect(short_traces, false);
  const auto b = collect(long_traces, true);
  return ks_two_sample(a, b);
}

Eigen::VectorXcd lagged_products(const Eigen::VectorXcd& x, std::size_t max_lag) {
  const auto n = static_cast<std::size_t>(x.size());
  if (max_lag >= n) throw DomainError("lag exceeds the record length");
  Eigen::VectorXcd out(static_cast<Eigen::Index>(max_lag + 1));
  if (max_lag <= 32) {
    for (std::size_t m = 0; m <= max_lag; ++m) {
      const auto len = static_cast<Eigen::Index>(n - m);
      out[static_cast<Eigen::Index>(m)] = x.head(len).dot(x.segment(static_cast<Eigen::Index>(m), len));
    }
    return out;
  }
  std::size_t padded = 1;
  while (padded < n + max_lag + 1) padded <<= 1;
  Eigen::VectorXcd buf = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(padded));
  buf.head(static_cast<Eigen::Index>(n)) = x;
  const Eigen::VectorXcd spec = fft::sum_negative_exponent(buf).cwiseAbs2().cast<std::complex<double>>();
  const Eigen::VectorXcd corr = fft::sum_positive_exponent(spec) / static_cast<double>(padded);
  return corr.head(static_cast<Eigen::Index>(max_lag + 1));
}

std::size_t lag_in_samples(double tau, double dt) {
  detail::require_non_negative(tau, "tau");
  detail::require_positive(dt, "dt");
  const double q = tau / dt;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-6 * std::max(1.0, r)) {
    throw DomainError("lag " + std::to_string(tau) + " is not a multiple of dt = " + std::to_string(dt));
  }
  return static_cast<std::size_t>(r);
}

LagCorrelation lag_correlation(const TraceEnsemble& ensemble, std::span<const std::size_t> lags) {
  if (ensemble.empty()) throw DomainError("lag correlation of an empty ensemble");
  if (lags.empty()) throw DomainError("no lags requested");
  const std::size_t max_lag = *std::max_element(lags.begin(), lags.end());
  std::vector<RunningMoments> re(lags.size()), im(lags.size());
  double dt = 0.0;
  map_reduce_ordered(
      ensemble.size(),
      [&](std::size_t i) {
        const FieldTrace t = ensemble[i];
        t.validate();
        const Eigen::VectorXcd x = t.samples.tail(static_cast<Eigen::Index>(t.analysis_size()));
        const Eigen::VectorXcd sums = lagged_products(x, max_lag);
        Eigen::VectorXcd v(static_cast<Eigen::Index>(lags.size()));
        for (std::size_t k = 0; k < lags.size(); ++k) {
          v[static_cast<Eigen::Index>(k)] =
              sums[static_cast<Eigen::Index>(lags[k])] / static_cast<double>(x.size() - static_cast<Eigen::Index>(lags[k]));
        }
        return std::pair{t.dt, v};
      },
      [&](std::size_t, std::pair<double, Eigen::VectorXcd> r) {
        dt = r.first;
        for (std::size_t k = 0; k < lags.size(); ++k) {
          re[k].add(r.second[static_cast<Eigen::Index>(k)].real());
          im[k].add(r.second[static_cast<Eigen::Index>(k)].imag());
        }
      });
  LagCorrelation out;
  const auto m = static_cast<Eigen::Index>(lags.size());
  out.tau.resize(m);
  out.values.resize(m);
  out.std_errors.resize(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    out.tau[k] = static_cast<double>(lags[kk]) * dt;
    out.values[k] = {re[kk].mean(), im[kk].mean()};
    out.std_errors[k] = std::hypot(re[kk].std_error(), im[kk].std_error());
  }
  out.ensemble_size = ensemble.size();
  return out;
}

Eigen::VectorXcd autocorrelation_from_spectrum(const SpectrumEstimate& s, std::size_t max_lag) {
  if (s.n_samples < 2) throw DomainError("spectrum has no samples");
  if (max_lag >= s.n_samples) throw DomainError("lag exceeds the record length");
  Eigen::VectorXcd c(static_cast<Eigen::Index>(max_lag + 1));
  const double inv_t = 1.0 / s.duration();
  for (std::size_t m = 0; m <= max_lag; ++m) {
    std::complex<double> sum = 0.0;
    const double tau = static_cast<double>(m) * s.dt;
    for (Eigen::Index l = 0; l < s.grid.size(); ++l) sum += s.values[l] * std::polar(1.0, -s.grid[l] * tau);
    c[static_cast<Eigen::Index>(m)] = sum * inv_t;
  }
  return c;
}

void write_csv(std::ostream& out, const SpectrumEstimate& s) {
  const auto old = out.precision(17);
  out << "grid,value,std_error\n";
  for (Eigen::Index i = 0; i < s.grid.size(); ++i) out << s.grid[i] << ',' << s.values[i] << ',' << s.std_errors[i] << '\n';
  out.precision(old);
}

}  // namespace stochoptics
