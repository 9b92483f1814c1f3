#include "biphoton/pump.hpp"

#include <cmath>
#include <numbers>

#include "biphoton/dispersion.hpp"

namespace biphoton::pump {

namespace {
constexpr double pi = std::numbers::pi;

// integral of |pump_amplitude|^2 dOmega under the peak convention
double energy_integral(double sigma, const std::optional<PumpModulation>& mod) {
  const double base = sigma * std::sqrt(2 * pi);
  if (!mod || mod->separation == 0.0) return base;
  const double r = mod->amplitude_ratio;
  const double st = sigma * mod->separation;
  const double cross = 2 * r * std::cos(mod->phase) * std::exp(-st * st / 2);
  return base * ((1 + r * r + cross) / ((1 + r) * (1 + r)));
}

} // namespace

void validate(const PumpSpec& spec) {
  if (!(spec.wavelength > 0)) throw ConfigError("pump wavelength must be positive");
  if (!(spec.bandwidth > 0)) throw ConfigError("pump bandwidth must be positive");
  if (spec.modulation) {
    if (spec.modulation->separation < 0)
      throw ConfigError("pulse separation must be >= 0");
    const double r = spec.modulation->amplitude_ratio;
    if (!(r > 0 && r <= 1))
      throw ConfigError("pulse amplitude ratio must lie in (0, 1]");
  }
}

double bandwidth_to_delta_omega(double d_lambda, double lambda0) {
  if (!(d_lambda > 0 && lambda0 > 0))
    throw ConfigError("bandwidth conversion requires positive wavelengths");
  return 2 * pi * constants::c_light * d_lambda / (lambda0 * lambda0);
}

double bandwidth_to_sigma(double d_lambda, double lambda0) {
  return bandwidth_to_delta_omega(d_lambda, lambda0) / constants::fwhm_per_sigma;
}

std::complex<double> pump_amplitude(double omega_p, const PumpSpec& spec) {
  validate(spec);
  const double sigma = bandwidth_to_sigma(spec.bandwidth, spec.wavelength);
  // sqrt of an intensity Gaussian of std sigma: the spectral *intensity*
  // FWHM equals the declared bandwidth
  std::complex<double> amp = std::exp(-omega_p * omega_p / (4 * sigma * sigma));
  if (spec.modulation && spec.modulation->separation > 0) {
    const auto& m = *spec.modulation;
    const std::complex<double> i(0.0, 1.0);
    amp *= (std::exp(i * (omega_p * m.separation / 2)) +
            m.amplitude_ratio * std::exp(i * m.phase) *
                std::exp(-i * (omega_p * m.separation / 2))) /
           (1.0 + m.amplitude_ratio);
  }
  if (spec.norm == PumpSpec::Norm::energy)
    amp /= std::sqrt(energy_integral(sigma, spec.modulation));
  return amp;
}

PumpModulation double_pulse_from_crystal(double splitter_length, double phase,
                                         double pump_wavelength, double theta) {
  return PumpModulation{
      dispersion::group_delay_difference(pump_wavelength, splitter_length, theta),
      phase, 1.0};
}

} // namespace biphoton::pump
