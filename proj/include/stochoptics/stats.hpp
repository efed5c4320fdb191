#ifndef STOCHOPTICS_STATS_HPP
#define STOCHOPTICS_STATS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace stochoptics {

/// Significance level used by every pass/fail verdict in the library.
inline constexpr double kSignificance = 1e-3;

/// Outcome of a hypothesis test.  `pass` means "consistent with the null at
/// kSignificance", i.e. p_value > kSignificance.
struct TestReport {
  double statistic = 0.0;
  double p_value = 1.0;
  bool pass = true;
  std::size_t sample_size = 0;
};

/// Welford accumulator.  Adding values in a fixed order gives bit-identical
/// results regardless of how the values were produced.
class RunningMoments {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; zero for fewer than two samples.
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Limiting Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

/// One-sample Kolmogorov-Smirnov test of `values` against a continuous CDF.
/// p-value from the Kolmogorov limit with Stephens' finite-n correction.
TestReport ks_one_sample(std::span<const double> values, const std::function<double(double)>& cdf);

/// KS test against the exponential law with the given mean.
TestReport ks_exponential(std::span<const double> values, double mean);

/// Two-sample Kolmogorov-Smirnov test.
TestReport ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Pearson chi-square goodness of fit.  `observed[i]` counts outcomes in cell i,
/// `probabilities[i]` is the model probability of the cell; the cells must
/// cover the whole outcome space.  Cells are merged from the tail end until
/// every cell expects at least `min_expected` counts.
TestReport chi_square_gof(std::span<const double> observed, std::span<const double> probabilities,
                          double min_expected = 5.0);

/// Standard normal upper-tail probability for |z| (two-sided).
double two_sided_normal_p(double z);

}  // namespace stochoptics

#endif  // STOCHOPTICS_STATS_HPP
