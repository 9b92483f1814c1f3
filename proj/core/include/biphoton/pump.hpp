#pragma once

#include <complex>
#include <optional>

#include "biphoton/constants.hpp"
#include "biphoton/types.hpp"

namespace biphoton {

// Double-pulse modulation: two delayed replicas of the pump with relative
// phase `phase` and amplitude ratio `amplitude_ratio` (1 = equal split).
struct PumpModulation {
  double separation = 0.0;      // tau, seconds
  double phase = 0.0;           // phi, rad
  double amplitude_ratio = 1.0; // r in (0, 1]
};

struct PumpSpec {
  enum class Norm { peak, energy };

  double wavelength = 404e-9; // m
  double bandwidth = 2e-9;    // intensity FWHM in wavelength, m
  std::optional<PumpModulation> modulation;
  Norm norm = Norm::peak;
};

namespace pump {

void validate(const PumpSpec& spec);

// Intensity-FWHM wavelength bandwidth -> angular-frequency FWHM (rad/s).
double bandwidth_to_delta_omega(double d_lambda, double lambda0);

// sigma of the spectral *intensity* Gaussian: delta_omega / (2 sqrt(2 ln 2)).
double bandwidth_to_sigma(double d_lambda, double lambda0);

// Spectral amplitude at detuning omega_p from the pump center.  Single
// pulse: exp(-omega_p^2 / (4 sigma^2)), the square root of an intensity
// Gaussian whose FWHM equals the declared bandwidth.  Double pulse
// multiplies by [e^{i w tau/2} + r e^{i phi} e^{-i w tau/2}]/(1+r), so
// |amplitude|^2 ~ cos^2(w tau/2 - phi/2) for r = 1.
std::complex<double> pump_amplitude(double omega_p, const PumpSpec& spec);

// tau from the o/e group delay of a birefringent splitter crystal.
PumpModulation double_pulse_from_crystal(double splitter_length, double phase,
                                         double pump_wavelength,
                                         double theta = constants::splitter_cut_angle);

} // namespace pump
} // namespace biphoton
