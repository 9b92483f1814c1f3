#pragma once

#include <string>

#include "biphoton/types.hpp"

namespace biphoton::units {

enum class Dimension {
  length,            // nm, um, mm, cm, m
  time,              // fs, ps, ns, us, ms, s
  angle,             // rad, mrad, deg; "pi" accepted as a value
  gvd,               // s^2/m, s^2/cm, s^2/mm, fs^2/mm
  angular_frequency, // rad/s
  dimensionless
};

// Parse "5 mm", "4.3e-28 s^2/cm", "pi rad", ... into SI.  Units are
// mandatory except for Dimension::dimensionless.  Throws ConfigError.
double parse_quantity(const std::string& text, Dimension dim);

} // namespace biphoton::units
