#include <doctest.h>

#include <cmath>
#include <vector>

#include "stochoptics/rng.hpp"
#include "stochoptics/stats.hpp"

using namespace stochoptics;

TEST_CASE("Kolmogorov survival function") {
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-10));
  CHECK(kolmogorov_survival(1.358) == doctest::Approx(0.05).epsilon(2e-3));
  CHECK(kolmogorov_survival(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-10));
  CHECK(kolmogorov_survival(3.0) < 1e-7);
}

TEST_CASE("KS tests accept the true law and reject a wrong one") {
  RandomSource rng(RngStream(41));
  std::vector<double> exp_values, uniform_values;
  for (int i = 0; i < 5000; ++i) {
    exp_values.push_back(-2.0 * std::log1p(-rng.uniform()));
    uniform_values.push_back(4.0 * rng.uniform());
  }
  CHECK(ks_exponential(exp_values, 2.0).pass);
  CHECK_FALSE(ks_exponential(uniform_values, 2.0).pass);
  CHECK_FALSE(ks_exponential(exp_values, 3.0).pass);
  std::vector<double> other;
  for (int i = 0; i < 4000; ++i) other.push_back(-2.0 * std::log1p(-rng.uniform()));
  CHECK(ks_two_sample(exp_values, other).pass);
  CHECK_FALSE(ks_two_sample(exp_values, uniform_values).pass);
}

TEST_CASE("KS statistic of a single point") {
  const std::vector<double> one = {0.5};
  const auto r = ks_one_sample(one, [](double x) { return x; });
  CHECK(r.statistic == doctest::Approx(0.5));
}

TEST_CASE("chi-square goodness of fit") {
  const std::vector<double> probs = {0.25, 0.25, 0.25, 0.25};
  const std::vector<double> fair = {250, 251, 249, 250};
  const std::vector<double> biased = {400, 200, 200, 200};
  CHECK(chi_square_gof(fair, probs).pass);
  CHECK_FALSE(chi_square_gof(biased, probs).pass);
  CHECK(chi_square_gof(biased, probs).statistic == doctest::Approx(120.0));
}

TEST_CASE("running moments") {
  RunningMoments m;
  for (double x : {1.0, 2.0, 3.0, 4.0}) m.add(x);
  CHECK(m.mean() == 2.5);
  CHECK(m.variance() == doctest::Approx(5.0 / 3.0));
  CHECK(m.std_error() == doctest::Approx(std::sqrt(5.0 / 12.0)));
}

TEST_CASE("random streams are reproducible and distinct") {
  const auto a = RngStream::for_trace(7, 3);
  const auto b = RngStream::for_trace(7, 3);
  const auto c = RngStream::for_trace(7, 4);
  CHECK(a.key() == b.key());
  CHECK(a.key() != c.key());
  CHECK(a.substream(0).key() != a.substream(1).key());
  RandomSource x(a), y(b);
  for (int i = 0; i < 100; ++i) CHECK(x.normal() == y.normal());
  RandomSource z(RngStream(9));
  for (int i = 0; i < 100000; ++i) {
    const double p = z.phase();
    CHECK((p >= 0.0 && p < 2.0 * M_PI));
  }
}
