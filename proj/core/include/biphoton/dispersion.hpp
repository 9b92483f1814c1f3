#pragma once

#include "biphoton/constants.hpp"
#include "biphoton/sellmeier.hpp"

namespace biphoton {

// Type-II down-conversion crystal: pump extraordinary -> signal ordinary +
// idler extraordinary, collinear, frequency-degenerate at omega_p/2.
struct CrystalSpec {
  double length = 5e-3;           // m
  double theta = 0.0;             // optic axis vs propagation, rad
  double pump_wavelength = 404e-9; // m
};

struct FiberSpec {
  double length = 0.0;                          // m
  double gvd = constants::default_fiber_gvd;    // k'' in s^2/m
};

namespace dispersion {

void validate(const CrystalSpec& crystal);

// k(omega) = n(omega)*omega/c.  theta is used for the extraordinary wave
// only (pass pi/2 for the principal value).
double wavevector(double omega, Polarization pol, double theta,
                  const CrystalDispersion& disp = bbo());

// dk = k_p(w_p0 + Os + Oi) - k_s(w_0 + Os) - k_i(w_0 + Oi), w_0 = w_p0/2.
// Os, Oi are signal/idler detunings in rad/s.
double phase_mismatch(double omega_s, double omega_i, const CrystalSpec& crystal,
                      const CrystalDispersion& disp = bbo());

// Bisection for the cut angle with dk(0,0) = 0; |dk| < 1e-3 rad/m at the
// returned angle.  Throws std::domain_error when no root is bracketed.
double solve_phase_matching_angle(double pump_wavelength,
                                  const CrystalDispersion& disp = bbo());

// Ordinary/extraordinary group delay accumulated over crystal_length,
// tau = L*|k'_o - k'_e(theta)|, group velocities by central difference.
double group_delay_difference(double wavelength, double crystal_length,
                              double theta = constants::splitter_cut_angle,
                              const CrystalDispersion& disp = bbo());

} // namespace dispersion
} // namespace biphoton
