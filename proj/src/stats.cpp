#include "stochoptics/stats.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "stochoptics/errors.hpp"

namespace stochoptics {
namespace {

double stephens_lambda(double d, double n) {
  const double root = std::sqrt(n);
  return (root + 0.12 + 0.11 / root) * d;
}

TestReport make_report(double statistic, double p, std::size_t n) {
  return TestReport{statistic, p, p > kSignificance, n};
}

}  // namespace

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.0) {
    // Theta-function form converges fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      sum += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestReport ks_one_sample(std::span<const double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw DomainError("ks_one_sample: no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return make_report(d, kolmogorov_survival(stephens_lambda(d, n)), sorted.size());
}

TestReport ks_exponential(std::span<const double> values, double mean) {
  detail::require_positive(mean, "exponential mean");
  return ks_one_sample(values, [mean](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x / mean); });
}

TestReport ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = nx * ny / (nx + ny);
  return make_report(d, kolmogorov_survival(stephens_lambda(d, ne)), x.size() + y.size());
}

TestReport chi_square_gof(std::span<const double> observed, std::span<const double> probabilities,
                          double min_expected) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw DomainError("chi_square_gof: observed and probabilities must be non-empty and equal length");
  }
  const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("chi_square_gof: no observations");

  // Merge cells from the tail so each merged cell expects >= min_expected.
  std::vector<double> obs;
  std::vector<double> expct;
  double acc_obs = 0.0;
  double acc_exp = 0.0;
  for (std::size_t k = observed.size(); k-- > 0;) {
    acc_obs += observed[k];
    acc_exp += probabilities[k] * total;
    if (acc_exp >= min_expected) {
      obs.push_back(acc_obs);
      expct.push_back(acc_exp);
      acc_obs = 0.0;
      acc_exp = 0.0;
    }
  }
  if (acc_exp > 0.0 || acc_obs > 0.0) {
    if (expct.empty()) {
      obs.push_back(acc_obs);
      expct.push_back(acc_exp);
    } else {
      obs.back() += acc_obs;
      expct.back() += acc_exp;
    }
  }
  if (expct.size() < 2) throw DomainError("chi_square_gof: fewer than two usable cells");

  double stat = 0.0;
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const double diff = obs[k] - expct[k];
    stat += diff * diff / expct[k];
  }
  const boost::math::chi_squared_distribution<double> dist(static_cast<double>(obs.size() - 1));
  const double p = boost::math::cdf(boost::math::complement(dist, stat));
  return make_report(stat, p, static_cast<std::size_t>(total));
}

double two_sided_normal_p(double z) { return std::erfc(std::abs(z) / std::numbers::sqrt2); }

}  // namespace stochoptics
