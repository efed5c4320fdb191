#ifndef STOCHOPTICS_RADIOMETRY_HPP
#define STOCHOPTICS_RADIOMETRY_HPP

#include <numbers>
#include <optional>

namespace stochoptics::radiometry {

/// Physical constants, injectable so golden values are reproducible.  Defaults
/// are CODATA 2018 (exact SI values for k_B and c).
struct PhysicalConstants {
  double hbar = 1.054571817e-34;  ///< J s
  double k_B = 1.380649e-23;      ///< J / K
  double c = 299792458.0;         ///< m / s
  double wien_x = 4.965;          ///< root of x = 5 (1 - exp(-x)), as used for lambda_max

  void validate() const;
};

/// A laser / light-bulb comparison scenario.  Any field may be unset; each
/// operation documents what it reads.
struct BlackbodyScenario {
  std::optional<double> power;              ///< P, W
  std::optional<double> linewidth;          ///< Gamma, 1/s
  std::optional<double> center_wavelength;  ///< lambda0, m
  std::optional<double> filament_area;      ///< A, m^2
  std::optional<double> temperature;        ///< T, K

  void validate() const;

  /// omega0 = 2 pi c / lambda0.  Throws if lambda0 is unset.
  double omega0(const PhysicalConstants& k = {}) const;
};

/// Planck mean occupation 1 / (exp(hbar w / k_B T) - 1).
double mean_occupation(double omega, double temperature, const PhysicalConstants& k = {});

/// Stefan-Boltzmann total power of a blackbody of area A.
double radiated_power(double area, double temperature, const PhysicalConstants& k = {});

/// Wien peak wavelength 2 pi hbar c / (x k_B T).
double wien_peak(double temperature, const PhysicalConstants& k = {});

/// Emitting area that radiates `power` with peak wavelength `lambda_max`:
/// A = 2.37 P lambda_max^4 / (c^2 hbar).
double filament_area(double power, double lambda_max, const PhysicalConstants& k = {});

/// Power in one collimated, polarised transverse mode of thermal light:
/// (pi / 12) (k_B T)^2 / hbar.
double collimated_power(double temperature, const PhysicalConstants& k = {});
double temperature_for_collimated_power(double power, const PhysicalConstants& k = {});

/// Power of Lorentzian-filtered collimated light, nu hbar w0 Gamma / 4.  Valid for
/// Gamma << w0; emits a warning on std::clog when Gamma > w0 / 100.
double filtered_power(double nu, double omega0, double linewidth, const PhysicalConstants& k = {});

/// True when Gamma / w0 <= 1e-2, the regime where filtered_power holds.
bool is_narrowband(double omega0, double linewidth);

/// High-temperature source temperature giving filtered power P: 4 P / (k_B Gamma).
double temperature_for_filtered_power(double power, double linewidth, const PhysicalConstants& k = {});

/// Photons per coherence time, 4 P / (hbar w0 Gamma).
double photons_per_coherence_time(double power, double lambda0, double linewidth,
                                  const PhysicalConstants& k = {});

struct CollimationEfficiency {
  double approximate;        ///< lambda'_max^2 / A
  double exact;              ///< P / P_total(A, T')
  double temperature;        ///< T' from collimated_power
  double lambda_max;         ///< Wien peak at T'
};

/// Fraction of a blackbody's output that survives collimation into a beam of
/// power P, for a source of area A.
CollimationEfficiency collimation_efficiency(double power, double area, const PhysicalConstants& k = {});

/// Order-of-magnitude filtering efficiency (order-unity factors dropped):
/// total = geometric * spectral * brightness with geometric = lambda0^2 / A,
/// spectral = Gamma / w0 and brightness = nu^-3.
struct FilteringEfficiency {
  double total;
  double geometric;
  double spectral;
  double brightness;
  double nu;
  /// Same ratio evaluated through the source temperature T'':
  /// (lambda''_max^2 / A) (Gamma / w''_max).  Equals total / x^3 exactly.
  double via_temperature;
  double temperature;  ///< T''

  double log10_total() const;
  double log10_via_temperature() const;
};

FilteringEfficiency filtering_efficiency(double power, double area, double linewidth, double lambda0,
                                         const PhysicalConstants& k = {});

/// Variant with nu supplied directly (e.g. forced to 1).
FilteringEfficiency filtering_efficiency_for_nu(double nu, double area, double linewidth, double lambda0,
                                                const PhysicalConstants& k = {});

}  // namespace stochoptics::radiometry

#endif  // STOCHOPTICS_RADIOMETRY_HPP
