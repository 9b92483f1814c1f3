#pragma once

namespace biphoton::constants {

inline constexpr double c_light = 299792458.0; // m/s

// FWHM = fwhm_per_sigma * sigma for a Gaussian
inline constexpr double fwhm_per_sigma = 2.3548200450309493; // 2*sqrt(2 ln 2)

// Optic-axis angle of the birefringent pump-splitter crystal, calibrated so
// that 1 mm of BBO at 404 nm gives a 350 fs ordinary/extraordinary group
// delay (the measured splitting of the reference setup).
inline constexpr double splitter_cut_angle = 0.9697530; // rad

// Single-mode fused-silica fiber GVD at 808 nm
inline constexpr double default_fiber_gvd = 4.3e-26; // s^2/m

} // namespace biphoton::constants
