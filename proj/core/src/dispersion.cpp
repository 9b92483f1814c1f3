#include "biphoton/dispersion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace biphoton::dispersion {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double c = constants::c_light;
} // namespace

void validate(const CrystalSpec& crystal) {
  if (!(crystal.length > 0))
    throw ConfigError("crystal length must be positive");
  if (!(crystal.theta > 0 && crystal.theta < pi / 2))
    throw ConfigError("crystal cut angle must lie in (0, pi/2)");
  if (!(crystal.pump_wavelength > 0))
    throw ConfigError("pump wavelength must be positive");
}

double wavevector(double omega, Polarization pol, double theta,
                  const CrystalDispersion& disp) {
  if (!(omega > 0)) throw std::domain_error("wavevector requires omega > 0");
  const double lambda = 2 * pi * c / omega;
  const double n = pol == Polarization::ordinary
                       ? index(lambda, Polarization::ordinary, disp)
                       : extraordinary_index(lambda, theta, disp);
  return n * omega / c;
}

double phase_mismatch(double omega_s, double omega_i, const CrystalSpec& crystal,
                      const CrystalDispersion& disp) {
  const double w_p0 = 2 * pi * c / crystal.pump_wavelength;
  const double w_0 = w_p0 / 2;
  const double th = crystal.theta;
  return wavevector(w_p0 + omega_s + omega_i, Polarization::extraordinary, th, disp) -
         wavevector(w_0 + omega_s, Polarization::ordinary, 0.0, disp) -
         wavevector(w_0 + omega_i, Polarization::extraordinary, th, disp);
}

double solve_phase_matching_angle(double pump_wavelength,
                                  const CrystalDispersion& disp) {
  CrystalSpec probe{1e-3, 0.0, pump_wavelength};
  auto mismatch = [&](double th) {
    probe.theta = th;
    return phase_mismatch(0.0, 0.0, probe, disp);
  };
  double lo = 1e-4, hi = pi / 2 - 1e-4;
  double flo = mismatch(lo), fhi = mismatch(hi);
  if (flo * fhi > 0)
    throw std::domain_error("no phase-matching solution in (0, pi/2)");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = mismatch(mid);
    if (flo * fm <= 0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  const double theta = 0.5 * (lo + hi);
  if (std::abs(mismatch(theta)) > 1e-3) {
    std::ostringstream msg;
    msg << "phase-matching bisection did not converge, |dk| = "
        << std::abs(mismatch(theta)) << " rad/m";
    throw std::domain_error(msg.str());
  }
  return theta;
}

double group_delay_difference(double wavelength, double crystal_length,
                              double theta, const CrystalDispersion& disp) {
  if (crystal_length < 0) throw ConfigError("crystal length must be >= 0");
  if (crystal_length == 0) return 0.0;
  const double w = 2 * pi * c / wavelength;
  const double h = 1e11; // rad/s, well below all spectral scales here
  const double dko = (wavevector(w + h, Polarization::ordinary, 0.0, disp) -
                      wavevector(w - h, Polarization::ordinary, 0.0, disp)) /
                     (2 * h);
  const double dke = (wavevector(w + h, Polarization::extraordinary, theta, disp) -
                      wavevector(w - h, Polarization::extraordinary, theta, disp)) /
                     (2 * h);
  return crystal_length * std::abs(dko - dke);
}

} // namespace biphoton::dispersion
