#ifndef STOCHOPTICS_FFT_HPP
#define STOCHOPTICS_FFT_HPP

#include <Eigen/Dense>

namespace stochoptics::fft {

/// y_k = sum_j x_j exp(+2 pi i j k / n), unscaled.
///
/// Rotating-frame convention: a field exp(-i w t) at detuning w > 0 lands in
/// the bin of positive frequency, matching the carrier exp(-i w0 t).
Eigen::VectorXcd sum_positive_exponent(const Eigen::VectorXcd& x);

/// y_j = sum_k x_k exp(-2 pi i j k / n), unscaled.  Inverse of
/// sum_positive_exponent up to a factor n.
Eigen::VectorXcd sum_negative_exponent(const Eigen::VectorXcd& x);

}  // namespace stochoptics::fft

#endif  // STOCHOPTICS_FFT_HPP
