#pragma once

#include <string>

#include "biphoton/types.hpp"

namespace biphoton {

// n^2(lambda) = a + b/(lambda^2 - c) - d*lambda^2, lambda in micrometers
struct SellmeierCoefficients {
  double a = 0, b = 0, c = 0, d = 0;
};

struct CrystalDispersion {
  SellmeierCoefficients ordinary;
  SellmeierCoefficients extraordinary;
  double window_min = 0.3e-6; // meters
  double window_max = 1.0e-6;
  std::string source;
};

// Built-in BBO coefficients (see core/data/bbo_sellmeier.json for provenance).
const CrystalDispersion& bbo();

// Load a coefficient set from a JSON constants file with the same layout as
// core/data/bbo_sellmeier.json.
CrystalDispersion load_dispersion(const std::string& path);

// Principal refractive index.  wavelength in meters; throws std::domain_error
// outside the validity window.
double index(double wavelength, Polarization pol,
             const CrystalDispersion& disp = bbo());

// Index of the extraordinary wave propagating at angle theta to the optic
// axis: 1/n^2 = cos^2(theta)/n_o^2 + sin^2(theta)/n_e^2.
double extraordinary_index(double wavelength, double theta,
                           const CrystalDispersion& disp = bbo());

} // namespace biphoton
