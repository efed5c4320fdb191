#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "stochoptics/errors.hpp"
#include "stochoptics/fieldgen.hpp"
#include "stochoptics/spectral.hpp"
#include "stochoptics/stats.hpp"
#include "support.hpp"

using namespace stochoptics;

namespace {

const BeamModelSpec kThermal{BeamFamily::thermal, 100.0, 1.0};
const BeamModelSpec kLaser{BeamFamily::laser, 100.0, 1.0};

FieldTrace raw_trace(Eigen::VectorXcd samples, double dt) {
  FieldTrace t;
  t.samples = std::move(samples);
  t.dt = dt;
  return t;
}

}  // namespace

TEST_CASE("Parseval identity per trace") {
  testing::Cases cases(201);
  for (int i = 0; i < 60; ++i) {
    const auto n = static_cast<std::size_t>(cases.integer(2, 6000));
    const double dt = cases.log_uniform(1e-4, 1e-2);
    FieldTrace t;
    switch (i % 3) {
      case 0: t = gen_thermal_trace(kThermal, dt, n, cases.seed(), 0); break;
      case 1: t = gen_laser_trace(kLaser, dt, n, cases.seed(), 0); break;
      default: {
        Eigen::VectorXcd x = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(n)) * cases.log_uniform(1e-3, 1e3);
        t = raw_trace(x, dt);
      }
    }
    const auto [spectral, temporal] = parseval_sums(t);
    CHECK(testing::rel_err(spectral, temporal) < 1e-10);
    const auto p = periodogram(t);
    CHECK(testing::rel_err(p.values.sum() * p.grid_spacing() / (2.0 * M_PI), temporal) < 1e-10);
  }
}

TEST_CASE("periodogram grid is symmetric and increasing") {
  for (std::size_t n : {7, 8}) {
    const auto p = periodogram(raw_trace(Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(n)), 0.1));
    CHECK(p.grid.size() == static_cast<Eigen::Index>(n % 2 == 0 ? n + 1 : n));
    for (Eigen::Index i = 1; i < p.grid.size(); ++i) CHECK(p.grid[i] > p.grid[i - 1]);
    for (Eigen::Index i = 0; i < p.grid.size(); ++i) CHECK(p.grid[i] == doctest::Approx(-p.grid[p.grid.size() - 1 - i]));
  }
}

TEST_CASE("constant trace puts all power at zero detuning") {
  const std::complex<double> c0(1.5, -0.5);
  const std::size_t n = 1000;
  const double dt = 0.01;
  const auto p = periodogram(raw_trace(Eigen::VectorXcd::Constant(n, c0), dt));
  const auto zero = p.nearest(0.0);
  CHECK(p.values[static_cast<Eigen::Index>(zero)] == doctest::Approx(std::norm(c0) * n * dt).epsilon(1e-12));
  for (Eigen::Index i = 0; i < p.values.size(); ++i) {
    if (i != static_cast<Eigen::Index>(zero)) CHECK(p.values[i] < 1e-20);
  }
}

TEST_CASE("on-grid tone occupies a single bin") {
  const std::size_t n = 1024;
  const double dt = 0.01;
  const double duration = n * dt;
  const double w1 = 2.0 * M_PI * 5.0 / duration;
  Eigen::VectorXcd x(n);
  for (std::size_t j = 0; j < n; ++j) x[static_cast<Eigen::Index>(j)] = std::polar(1.0, -w1 * j * dt);
  const auto p = periodogram(raw_trace(x, dt));
  const auto at = p.nearest(w1);
  CHECK(p.values[static_cast<Eigen::Index>(at)] == doctest::Approx(duration).epsilon(1e-12));
  CHECK(p.values.sum() == doctest::Approx(duration).epsilon(1e-12));
}

TEST_CASE("direct single-bin transform agrees with the FFT") {
  testing::Cases cases(202);
  const auto t = gen_thermal_trace(kThermal, 0.01, 4099, 203, 0);
  const Eigen::VectorXcd all = fourier_amplitudes(t);
  for (int i = 0; i < 50; ++i) {
    const auto k = static_cast<std::size_t>(cases.integer(0, 4098));
    const double w = bin_detuning(k, t.size(), t.dt);
    CHECK(std::abs(fourier_amplitude_at(t, w) - all[static_cast<Eigen::Index>(k)]) < 1e-10 * all.cwiseAbs().maxCoeff());
  }
  CHECK_THROWS_AS(fourier_amplitude_at(t, 0.5 * 2.0 * M_PI / t.duration()), DomainError);
}

TEST_CASE("ensemble spectrum matches the exact finite-record expectation") {
  const std::size_t n = 5000;
  const double dt = 0.01;
  const auto [rho, sd] = ou_step(100.0, 1.0, dt);
  for (const auto& model : {kThermal, kLaser}) {
    const auto s = spectrum(make_ensemble(model, dt, n, 204, 2000));
    CHECK(s.ensemble_size == 2000);
    for (double w : {0.0, 0.5, -0.5}) {
      const auto i = static_cast<Eigen::Index>(s.nearest(w));
      const double expected = testing::expected_periodogram(25.0, rho, n, dt, s.grid[i]);
      CHECK(testing::within_sigma(s.values[i], expected, s.std_errors[i]));
    }
  }
}

TEST_CASE("spectrum edge cases") {
  const auto zero = spectrum(make_ensemble({BeamFamily::thermal, 0.0, 1.0}, 0.01, 500, 205, 10));
  CHECK(zero.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(spectrum(make_ensemble(kThermal, 0.01, 500, 205, 1)), DomainError);
  std::vector<FieldTrace> mixed = {gen_thermal_trace(kThermal, 0.01, 500, 1, 0), gen_thermal_trace(kThermal, 0.01, 501, 1, 1)};
  CHECK_THROWS_AS(spectrum(TraceEnsemble::from_traces(mixed)), DomainError);
}

TEST_CASE("periodogram law at a single bin") {
  CHECK(periodogram_distribution_test(make_ensemble(kThermal, 0.01, 5000, 206, 2000), 0.0).pass);
  CHECK(periodogram_distribution_test(make_ensemble(kLaser, 0.01, 5000, 207, 2000), 0.0).pass);
  const auto kspace = periodogram_distribution_test(make_ensemble({BeamFamily::kspace_product, 100.0, 1.0}, 0.01, 5000, 208, 1000), 0.0);
  CHECK_FALSE(kspace.pass);
  CHECK_THROWS_AS(periodogram_distribution_test(make_ensemble(kThermal, 0.01, 500, 1, 999), 0.0), DomainError);
}

TEST_CASE("cross-mode correlation against the pair-sum oracle") {
  // T = 16 pi puts gamma/2 on the fourth bin.
  const double duration = 16.0 * M_PI;
  const std::size_t n = 6000;
  const double dt = duration / n;
  const auto [rho, sd] = ou_step(100.0, 1.0, dt);
  const auto c = cross_mode_correlation(make_ensemble(kThermal, dt, n, 209, 6000), {{0.0, 0.0}, {0.0, 0.5}});
  const auto diag = testing::expected_mode_product(25.0, rho, n, dt, 0.0, 0.0);
  const auto off = testing::expected_mode_product(25.0, rho, n, dt, 0.0, 0.5);
  CHECK(testing::within_sigma(std::abs(c.values[0] - diag), 0.0, c.std_errors[0]));
  CHECK(testing::within_sigma(std::abs(c.values[1] - off), 0.0, c.std_errors[1]));
  // Leading finite-length correction.
  CHECK(testing::rel_err(diag.real(), 100.0 * (1.0 - 2.0 / duration)) < 0.01);
  CHECK(std::abs(off.real() - (-100.0 * (2.0 / duration) * 0.5)) < 0.05 * 100.0 / duration);
  CHECK_THROWS_AS(cross_mode_correlation(make_ensemble(kThermal, dt, n, 1, 3), 0.0, 0.01), DomainError);
}

TEST_CASE("stationarity test") {
  const auto thermal = stationarity_test(make_ensemble(kThermal, 0.01, 8000, 210, 400), 16, 1999);
  CHECK(thermal.pass);
  const auto laser = stationarity_test(make_ensemble(kLaser, 0.01, 8000, 211, 400), 16, 1999);
  CHECK(laser.pass);
  CHECK(laser.statistic == 0.0);

  // A deterministic ramp in intensity is caught.
  std::vector<FieldTrace> ramps;
  for (std::size_t i = 0; i < 50; ++i) {
    auto t = gen_thermal_trace(kThermal, 0.01, 8000, 212, i);
    for (Eigen::Index j = 0; j < t.samples.size(); ++j) t.samples[j] *= std::sqrt(1.0 + static_cast<double>(j) / 8000.0);
    ramps.push_back(t);
  }
  CHECK_FALSE(stationarity_test(TraceEnsemble::from_traces(ramps), 16, 1999).pass);
  CHECK_THROWS_AS(stationarity_test(make_ensemble(kThermal, 0.01, 100, 1, 10), 3), DomainError);
  CHECK_THROWS_AS(stationarity_test(make_ensemble(kThermal, 0.01, 10, 1, 10), 16), DomainError);
}

TEST_CASE("length consistency separates stationary fields from the mode product") {
  const BeamModelSpec kspace{BeamFamily::kspace_product, 100.0, 1.0};
  CHECK(length_consistency_test(make_ensemble(kThermal, 0.01, 2000, 213, 500),
                                make_ensemble(kThermal, 0.01, 4000, 214, 500), 0.0).pass);
  CHECK_FALSE(length_consistency_test(make_ensemble(kspace, 0.01, 2000, 215, 500),
                                      make_ensemble(kspace, 0.01, 4000, 216, 500), 0.0).pass);
}

TEST_CASE("lagged products: direct and FFT paths agree") {
  const auto t = gen_thermal_trace(kThermal, 0.01, 3000, 217, 0);
  const Eigen::VectorXcd fast = lagged_products(t.samples, 100);
  for (std::size_t m = 0; m <= 100; m += 7) {
    std::complex<double> direct = 0.0;
    for (std::size_t j = 0; j + m < 3000; ++j) direct += std::conj(t.samples[static_cast<Eigen::Index>(j)]) * t.samples[static_cast<Eigen::Index>(j + m)];
    CHECK(std::abs(fast[static_cast<Eigen::Index>(m)] - direct) < 1e-9 * std::abs(fast[0]));
  }
}

TEST_CASE("spectrum inverts to the circular autocorrelation") {
  const std::size_t n = 2000;
  const double dt = 0.01;
  const auto ens = make_ensemble(kThermal, dt, n, 218, 1000);
  const std::size_t max_lag = 500;
  std::vector<RunningMoments> re(max_lag + 1);
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const auto t = ens[i];
    if (i == 0) {
      const auto single = autocorrelation_from_spectrum(periodogram(t), max_lag);
      for (std::size_t m = 0; m <= max_lag; m += 50) {
        std::complex<double> direct = 0.0;
        for (std::size_t j = 0; j < n; ++j) direct += std::conj(t.samples[static_cast<Eigen::Index>(j)]) * t.samples[static_cast<Eigen::Index>((j + m) % n)];
        direct /= static_cast<double>(n);
        CHECK(std::abs(single[static_cast<Eigen::Index>(m)] - direct) < 1e-10 * std::abs(direct) + 1e-12);
      }
    }
    const auto c = autocorrelation_from_spectrum(periodogram(t), max_lag);
    for (std::size_t m = 0; m <= max_lag; m += 100) re[m].add(c[static_cast<Eigen::Index>(m)].real());
  }
  const auto from_mean = autocorrelation_from_spectrum(spectrum(ens), max_lag);
  const auto [rho, sd] = ou_step(100.0, 1.0, dt);
  for (std::size_t m = 0; m <= max_lag; m += 100) {
    CHECK(from_mean[static_cast<Eigen::Index>(m)].real() == doctest::Approx(re[m].mean()).epsilon(1e-9));
    const double mm = static_cast<double>(m);
    const double expected = 25.0 * ((n - mm) / n * std::pow(rho, mm) + mm / n * std::pow(rho, n - mm));
    CHECK(testing::within_sigma(re[m].mean(), expected, re[m].std_error()));
  }
}

TEST_CASE("lag conversion") {
  CHECK(lag_in_samples(0.5, 0.01) == 50);
  CHECK_THROWS_AS(lag_in_samples(0.505, 0.01), DomainError);
  CHECK_THROWS_AS(lag_in_samples(-1.0, 0.01), DomainError);
}
