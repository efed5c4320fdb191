#define EIGEN_FFTW_DEFAULT
#include "stochoptics/fft.hpp"

#include <mutex>

#include <fftw3.h>
#include <unsupported/Eigen/FFT>

namespace stochoptics::fft {
namespace {

Eigen::FFT<double>& local_fft() {
  static std::once_flag planner_flag;
  std::call_once(planner_flag, [] { fftw_make_planner_thread_safe(); });
  thread_local Eigen::FFT<double> engine = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return engine;
}

}  // namespace

Eigen::VectorXcd sum_positive_exponent(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y(x.size());
  local_fft().inv(y, x);
  return y;
}

Eigen::VectorXcd sum_negative_exponent(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y(x.size());
  local_fft().fwd(y, x);
  return y;
}

}  // namespace stochoptics::fft
