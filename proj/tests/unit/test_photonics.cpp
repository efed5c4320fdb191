#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "stochoptics/errors.hpp"
#include "stochoptics/fieldgen.hpp"
#include "stochoptics/lorentzian.hpp"
#include "stochoptics/photonics.hpp"
#include "stochoptics/spectral.hpp"
#include "stochoptics/states.hpp"
#include "stochoptics/stats.hpp"
#include "support.hpp"

using namespace stochoptics;

namespace {

const BeamModelSpec kThermal{BeamFamily::thermal, 100.0, 1.0};
const BeamModelSpec kLaser{BeamFamily::laser, 100.0, 1.0};

FieldTrace constant_trace(double flux, std::size_t n, double dt) {
  FieldTrace t;
  t.samples = Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(n), std::sqrt(flux));
  t.dt = dt;
  return t;
}

}  // namespace

TEST_CASE("filter power response is the Lorentzian") {
  testing::Cases cases(301);
  for (int i = 0; i < 200; ++i) {
    const FilterSpec f{cases.uniform(-10.0, 10.0), cases.log_uniform(1e-3, 1e3)};
    const std::size_t n = 1000;
    const double dt = 0.001;
    for (std::size_t k = 0; k < n; k += 37) {
      const double w = bin_detuning(k, n, dt);
      const double expected = lorentzian(w - f.center_detuning, f.fwhm);
      CHECK(std::abs(std::norm(transmission(f, w)) - expected) <= 1e-12 * expected);
    }
  }
}

TEST_CASE("filtered thermal spectrum is the product of source and filter") {
  const std::size_t n = 5000;
  const double dt = 0.01;
  const FilterSpec f{0.0, 1.0};
  const auto ens = make_ensemble(kThermal, dt, n, 302, 2000);
  const auto out = spectrum(filtered(ens, f));
  const auto [rho, sd] = ou_step(100.0, 1.0, dt);
  for (double w : {0.0, 0.5, 1.0}) {
    const auto i = static_cast<Eigen::Index>(out.nearest(w));
    const double expected = testing::expected_periodogram(25.0, rho, n, dt, out.grid[i]) * lorentzian(out.grid[i], 1.0);
    CHECK(testing::within_sigma(out.values[i], expected, out.std_errors[i]));
  }
  const auto i0 = static_cast<Eigen::Index>(out.nearest(0.0));
  CHECK(testing::within_sigma(out.values[i0], 100.0 * (1.0 - 2.0 / (n * dt)), out.std_errors[i0]));
}

TEST_CASE("a very wide filter passes the field") {
  const auto t = gen_thermal_trace(kThermal, 0.0001, 200000, 303, 0);
  const auto out = apply_filter(t, FilterSpec{0.0, 1000.0});
  const auto a = static_cast<Eigen::Index>(out.analysis_start);
  const auto len = static_cast<Eigen::Index>(out.analysis_size());
  const double rms = (out.samples.segment(a, len) - t.samples.segment(a, len)).norm() / t.samples.segment(a, len).norm();
  CHECK(rms < 0.05);
}

TEST_CASE("filtering twice squares the transfer function") {
  const auto t = gen_laser_trace(kLaser, 0.01, 4096, 304, 0);
  const FilterSpec f{0.3, 2.0};
  const auto twice = apply_filter(apply_filter(t, f), f);
  const auto squared = apply_transfer(t, [&](double w) { return transmission(f, w) * transmission(f, w); });
  CHECK((twice.samples - squared.samples).cwiseAbs().maxCoeff() < 1e-12 * t.samples.cwiseAbs().maxCoeff());
  CHECK(twice.analysis_start == 2 * static_cast<std::size_t>(std::ceil(filter_margin(f) / t.dt)));
}

TEST_CASE("filter preconditions") {
  const auto t = gen_laser_trace(kLaser, 0.01, 4096, 305, 0);
  CHECK_THROWS_AS(apply_filter(t, FilterSpec{0.0, 400.0}), ConfigError);
  CHECK_THROWS_AS(apply_filter(t, FilterSpec{0.0, -1.0}), ConfigError);
  CHECK_THROWS_AS(apply_filter(t, FilterSpec{0.0, 0.001}), ConfigError);
}

TEST_CASE("g2 of the unfiltered laser is exactly one") {
  const std::vector<double> taus = {0.0, 0.5, 1.0, 5.0};
  const auto g = g2(make_ensemble(kLaser, 0.01, 20000, 306, 10), taus);
  for (Eigen::Index k = 0; k < g.values.size(); ++k) CHECK(g.values[k] == 1.0);
  const auto t = gen_laser_trace(kLaser, 0.01, 20000, 306, 0);
  const Eigen::ArrayXd intensity = t.samples.array().abs2();
  CHECK((intensity - intensity.mean()).square().mean() < 1e-28 * intensity.mean() * intensity.mean());
}

TEST_CASE("thermal g2 follows the Gaussian moment theorem") {
  const std::vector<double> taus = {0.0, 1.0};
  const auto g = g2(make_ensemble(kThermal, 0.01, 50000, 307, 200), taus);
  CHECK(testing::within_sigma(g.values[0], 2.0, g.std_errors[0]));
  CHECK(testing::within_sigma(g.values[1], 1.0 + std::exp(-1.0), g.std_errors[1]));
}

TEST_CASE("Siegert relation holds for filtered and unfiltered thermal light") {
  const std::vector<double> taus = {0.0, 1.0, 2.0, 5.0};
  const std::size_t lags[] = {0, 100, 200, 500};
  for (double width : {0.0, 1.0}) {
    auto ens = make_ensemble(kThermal, 0.01, 50000, 308, 200);
    if (width > 0.0) ens = filtered(ens, FilterSpec{0.0, width});
    const auto g = g2(ens, taus);
    const auto c = lag_correlation(ens, lags);
    for (Eigen::Index k = 0; k < 4; ++k) {
      const double g1 = std::abs(c.values[k]) / c.values[0].real();
      // Error of |g1|^2 from the relative errors of the two correlations.
      const double g1_err = g1 * std::hypot(c.std_errors[k] / std::max(std::abs(c.values[k]), 1e-300), c.std_errors[0] / c.values[0].real());
      const double sigma = std::hypot(g.std_errors[k], 2.0 * g1 * g1_err);
      CHECK(testing::within_sigma(g.values[k] - 1.0, g1 * g1, sigma));
    }
  }
}

TEST_CASE("photon counts of a laser are Poissonian") {
  RunningMoments fano;
  for (std::uint64_t i = 0; i < 40; ++i) {
    const auto t = gen_laser_trace(kLaser, 0.01, 100000, 309, i);
    fano.add(photon_counts(t, 1.0).fano);
  }
  CHECK(testing::within_sigma(fano.mean(), 1.0, fano.std_error()));
}

TEST_CASE("short-window thermal counts are super-Poissonian") {
  // nu = 1e5 gives about 250 photons per 0.01/Gamma window.
  const BeamModelSpec bright{BeamFamily::thermal, 1e5, 1.0};
  RunningMoments fano, mean;
  for (std::uint64_t i = 0; i < 40; ++i) {
    const auto rec = photon_counts(gen_thermal_trace(bright, 0.001, 1000000, 310, i), 0.01);
    fano.add(rec.fano);
    mean.add(rec.mean);
  }
  // Integrated thermal intensity over a window W: Var = flux^2 (2/G)(W - (1 - exp(-G W))/G).
  const double flux = 25000.0;
  const double w = 0.01;
  const double var_integral = flux * flux * 2.0 * (w - (1.0 - std::exp(-w)));
  const double expected = 1.0 + var_integral / (flux * w);
  CHECK(mean.mean() > 200.0);
  CHECK(fano.mean() > mean.mean() * 0.9);
  CHECK(testing::within_sigma(fano.mean(), expected, fano.std_error()));
}

TEST_CASE("long-window thermal counts: excess noise falls as one over the window") {
  // For W >> 1/Gamma, (Var - mean) / mean^2 -> (2 / (Gamma W))(1 - (1 - exp(-Gamma W)) / (Gamma W)).
  const BeamModelSpec model{BeamFamily::thermal, 4.0, 1.0};
  RunningMoments excess;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto rec = photon_counts(gen_thermal_trace(model, 0.01, 200001, 311, i), 100.0);
    RunningMoments m;
    for (auto c : rec.counts) m.add(static_cast<double>(c));
    excess.add((m.variance() - m.mean()) / (m.mean() * m.mean()));
  }
  const double gw = 100.0;
  const double expected = 2.0 / gw * (1.0 - (1.0 - std::exp(-gw)) / gw);
  CHECK(testing::within_sigma(excess.mean(), expected, excess.std_error()));
}

TEST_CASE("constant-flux counting reproduces the Poisson law") {
  const auto t = constant_trace(3.0, 2000001, 0.001);
  const auto rec = photon_counts(t, 1.0);
  CHECK(rec.counts.size() == 2000);
  const int cells = 15;
  std::vector<double> observed(cells + 1, 0.0);
  for (auto c : rec.counts) observed[std::min<std::uint64_t>(c, cells)] += 1.0;
  std::vector<double> probs(cells + 1);
  double head = 0.0;
  for (int n = 0; n < cells; ++n) head += probs[n] = poisson_pmf(3.0, n);
  probs[cells] = 1.0 - head;
  CHECK(chi_square_gof(observed, probs).pass);
}

TEST_CASE("photon counting preconditions") {
  const auto t = constant_trace(1.0, 1000, 0.01);
  CHECK_THROWS_AS(photon_counts(t, 0.001), ConfigError);
  CHECK_THROWS_AS(photon_counts(t, 2.0), ConfigError);
  const auto a = photon_counts(t, 0.5);
  const auto b = photon_counts(t, 0.5);
  CHECK(a.counts == b.counts);
}

TEST_CASE("Fano factor") {
  const std::vector<std::uint64_t> flat(100, 7);
  CHECK(fano_factor(flat) == 0.0);
  RandomSource rng(RngStream(312));
  std::vector<std::uint64_t> poisson, geometric;
  for (int i = 0; i < 100000; ++i) {
    poisson.push_back(rng.poisson(10.0));
    geometric.push_back(rng.geometric(2.0));
  }
  // Standard error of variance/mean from the fourth central moment.
  auto fano_se = [](const std::vector<std::uint64_t>& c, double mean, double var, double mu4) {
    const double n = static_cast<double>(c.size());
    return std::sqrt((mu4 - var * var) / n) / mean;
  };
  CHECK(testing::within_sigma(fano_factor(poisson), 1.0, fano_se(poisson, 10.0, 10.0, 10.0 + 3.0 * 100.0)));
  // Geometric with mean m: variance m(1+m), fourth central moment m(1+m)(1 + 9m(1+m)).
  CHECK(testing::within_sigma(fano_factor(geometric), 3.0, fano_se(geometric, 2.0, 6.0, 6.0 * (1.0 + 9.0 * 6.0))));
  CHECK_THROWS_AS(fano_factor(std::vector<std::uint64_t>{3}), DomainError);
  CHECK_THROWS_AS(fano_factor(std::vector<std::uint64_t>{0, 0, 0}), DomainError);
}

TEST_CASE("ideal laser g2(0) rises as the filter narrows") {
  const std::vector<double> widths = {100.0, 3.0, 1.0, 0.3};
  const auto rows = filtered_laser_sweep(kLaser, widths, SweepEnsemble{4, 1 << 18, 0.01, 313});
  REQUIRE(rows.size() == widths.size());
  CHECK(std::abs(rows[0].g2 - 1.0) < 0.01);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].g2 > rows[i - 1].g2);
  CHECK(rows.back().g2 < 2.2);
}

TEST_CASE("thermal light stays at g2 = 2 under any filter") {
  const std::vector<double> widths = {30.0, 1.0, 0.3};
  const auto rows = filtered_laser_sweep(kThermal, widths, SweepEnsemble{8, 1 << 18, 0.01, 314});
  for (const auto& r : rows) CHECK(std::abs(r.g2 - 2.0) < 0.2);
}

TEST_CASE("narrowly filtered laser and thermal intensities share one law") {
  const FilterSpec f{0.0, 0.01};
  const std::size_t n = std::size_t{1} << 21;
  const std::size_t stride = static_cast<std::size_t>(std::ceil(10.0 / f.fwhm / 0.01));
  const auto laser = sample_intensities(filtered(make_ensemble(kLaser, 0.01, n, 315, 48), f), stride);
  const auto thermal = sample_intensities(filtered(make_ensemble(kThermal, 0.01, n, 316, 48), f), stride);
  CHECK(laser.size() > 800);
  const auto r = ks_two_sample(laser, thermal);
  CHECK(r.pass);
}
