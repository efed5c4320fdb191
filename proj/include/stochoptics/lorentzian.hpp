#ifndef STOCHOPTICS_LORENTZIAN_HPP
#define STOCHOPTICS_LORENTZIAN_HPP

namespace stochoptics {

/// Unit-peak Lorentzian line shape f = (w/2)^2 / ((w/2)^2 + d^2) with full
/// width at half maximum `fwhm`, evaluated at detuning `d` from line centre.
inline double lorentzian(double detuning, double fwhm) {
  const double half = 0.5 * fwhm;
  return half * half / (half * half + detuning * detuning);
}

}  // namespace stochoptics

#endif  // STOCHOPTICS_LORENTZIAN_HPP
