#include "stochoptics/radiometry.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "stochoptics/errors.hpp"

namespace stochoptics::radiometry {

using detail::require_non_negative;
using detail::require_positive;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kAreaCoefficient = 2.37;
}  // namespace

void PhysicalConstants::validate() const {
  require_positive(hbar, "hbar");
  require_positive(k_B, "k_B");
  require_positive(c, "c");
  require_positive(wien_x, "wien_x");
}

void BlackbodyScenario::validate() const {
  if (power) require_positive(*power, "power");
  if (linewidth) require_positive(*linewidth, "linewidth");
  if (center_wavelength) require_positive(*center_wavelength, "center_wavelength");
  if (filament_area) require_positive(*filament_area, "filament_area");
  if (temperature) require_positive(*temperature, "temperature");
}

double BlackbodyScenario::omega0(const PhysicalConstants& k) const {
  if (!center_wavelength) throw DomainError("scenario has no center wavelength");
  require_positive(*center_wavelength, "center_wavelength");
  return 2.0 * kPi * k.c / *center_wavelength;
}

double mean_occupation(double omega, double temperature, const PhysicalConstants& k) {
  require_positive(omega, "omega");
  require_positive(temperature, "temperature");
  return 1.0 / std::expm1(k.hbar * omega / (k.k_B * temperature));
}

double radiated_power(double area, double temperature, const PhysicalConstants& k) {
  require_positive(area, "area");
  require_positive(temperature, "temperature");
  const double kt = k.k_B * temperature;
  const double exitance = (kPi * kPi / 60.0) * (kt * kt) * (kt * kt) / (k.c * k.c * k.hbar * k.hbar * k.hbar);
  return exitance * area;
}

double wien_peak(double temperature, const PhysicalConstants& k) {
  require_positive(temperature, "temperature");
  return 2.0 * kPi * k.hbar * k.c / (k.wien_x * k.k_B * temperature);
}

double filament_area(double power, double lambda_max, const PhysicalConstants& k) {
  require_positive(power, "power");
  require_positive(lambda_max, "lambda_max");
  const double l2 = lambda_max * lambda_max;
  return kAreaCoefficient * power * l2 * l2 / (k.c * k.c * k.hbar);
}

double collimated_power(double temperature, const PhysicalConstants& k) {
  require_positive(temperature, "temperature");
  const double kt = k.k_B * temperature;
  return (kPi / 12.0) * kt * kt / k.hbar;
}

double temperature_for_collimated_power(double power, const PhysicalConstants& k) {
  require_positive(power, "power");
  return std::sqrt(12.0 * k.hbar * power / kPi) / k.k_B;
}

bool is_narrowband(double omega0, double linewidth) { return linewidth <= 1e-2 * omega0; }

double filtered_power(double nu, double omega0, double linewidth, const PhysicalConstants& k) {
  require_non_negative(nu, "nu");
  require_positive(omega0, "omega0");
  require_positive(linewidth, "linewidth");
  if (!is_narrowband(omega0, linewidth)) {
    std::clog << "warning: filtered_power assumes Gamma << omega0, but Gamma/omega0 = "
              << linewidth / omega0 << '\n';
  }
  return nu * k.hbar * omega0 * linewidth / 4.0;
}

double temperature_for_filtered_power(double power, double linewidth, const PhysicalConstants& k) {
  require_positive(power, "power");
  require_positive(linewidth, "linewidth");
  return 4.0 * power / (k.k_B * linewidth);
}

double photons_per_coherence_time(double power, double lambda0, double linewidth,
                                  const PhysicalConstants& k) {
  require_positive(power, "power");
  require_positive(lambda0, "lambda0");
  require_positive(linewidth, "linewidth");
  const double omega0 = 2.0 * kPi * k.c / lambda0;
  return 4.0 * power / (k.hbar * omega0 * linewidth);
}

CollimationEfficiency collimation_efficiency(double power, double area, const PhysicalConstants& k) {
  require_positive(power, "power");
  require_positive(area, "area");
  const double t_prime = temperature_for_collimated_power(power, k);
  const double lambda = wien_peak(t_prime, k);
  return CollimationEfficiency{
      .approximate = lambda * lambda / area,
      .exact = collimated_power(t_prime, k) / radiated_power(area, t_prime, k),
      .temperature = t_prime,
      .lambda_max = lambda,
  };
}

FilteringEfficiency filtering_efficiency_for_nu(double nu, double area, double linewidth, double lambda0,
                                                const PhysicalConstants& k) {
  require_positive(nu, "nu");
  require_positive(area, "area");
  require_positive(linewidth, "linewidth");
  require_positive(lambda0, "lambda0");
  const double omega0 = 2.0 * kPi * k.c / lambda0;
  FilteringEfficiency out{};
  out.nu = nu;
  out.geometric = lambda0 * lambda0 / area;
  out.spectral = linewidth / omega0;
  out.brightness = 1.0 / (nu * nu * nu);
  out.total = out.geometric * out.spectral * out.brightness;
  // High-temperature identity k_B T'' = nu hbar w0.
  out.temperature = nu * k.hbar * omega0 / k.k_B;
  const double lambda_hot = wien_peak(out.temperature, k);
  const double omega_hot = 2.0 * kPi * k.c / lambda_hot;
  out.via_temperature = (lambda_hot * lambda_hot / area) * (linewidth / omega_hot);
  return out;
}

FilteringEfficiency filtering_efficiency(double power, double area, double linewidth, double lambda0,
                                         const PhysicalConstants& k) {
  return filtering_efficiency_for_nu(photons_per_coherence_time(power, lambda0, linewidth, k), area,
                                     linewidth, lambda0, k);
}

double FilteringEfficiency::log10_total() const { return std::log10(total); }
double FilteringEfficiency::log10_via_temperature() const { return std::log10(via_temperature); }

}  // namespace stochoptics::radiometry
