#pragma once

#include <optional>

#include "biphoton/dispersion.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/pump.hpp"

namespace biphoton {

enum class Channel { signal, idler };

struct FilterSpec {
  Channel channel = Channel::signal;
  double center = 0.0; // detuning of the passband center, rad/s
  double fwhm = 0.0;   // intensity FWHM, rad/s
  bool renormalize = false;
};

namespace tpsa {

struct BuildOptions {
  std::optional<double> theta;  // override the solved phase-matching angle
  bool include_pm_phase = false; // include the e^{i dk L/2} factor
  bool enforce_span = true;      // span >= 4x max(pump bw, pm bw)
};

// F(Os, Oi) = pump_amplitude(Os + Oi) * sinc(dk(Os, Oi) L / 2), normalized.
TpsaGrid build_tpsa(const FrequencyGrid& grid, const PumpSpec& pump,
                    const CrystalSpec& crystal, const BuildOptions& opt = {},
                    const CrystalDispersion& disp = bbo());

// Multiply by exp(i l k'' (Os^2 + Oi^2) / 2).  Pure phase.
TpsaGrid apply_fiber(const TpsaGrid& in, const FiberSpec& fiber);

// Multiply one axis by a Gaussian amplitude with the given intensity FWHM.
TpsaGrid apply_filter(const TpsaGrid& in, const FilterSpec& filter);

// Resample onto the rotated frame: row = Omega_+ = (Oi + Os)/sqrt(2),
// column = Omega_- = (Oi - Os)/sqrt(2); bilinear, zero outside the domain.
TpsaGrid rotate_to_pm(const TpsaGrid& in);

// Discrete version of F(t_s, t_i) = (2 pi)^-1 * integral of F e^{+i(Os ts + Oi ti)},
// scaled per axis so that sum |F(t)|^2 dt^2 == sum |F(Omega)|^2 dOmega^2.
// Time axis t_m = (m - n/2) * 2 pi / (n dOmega).
TptaGrid tpta_exact(const TpsaGrid& in);

// Inverse of tpta_exact back onto `grid` (must be the grid that produced the
// time axis: same n, n*dt*dOmega == 2 pi).
TpsaGrid tpsa_from_tpta(const TptaGrid& in, const FrequencyGrid& grid);

// Far-field (long-fiber) time amplitude: the *source* (pre-fiber) TPSA with
// frequency arguments rescaled as t = k'' l Omega; peak-normalized.
TptaGrid tpta_far_field(const TpsaGrid& source, const FiberSpec& fiber);

// Normalized L2 distance between |tpta_exact(apply_fiber(source))| and
// |tpta_far_field(source)| resampled onto the exact-transform time axis;
// both magnitude fields are scaled to unit L2 norm first.
double far_field_discrepancy(const TpsaGrid& source, const FiberSpec& fiber);

// Validity heuristic for the far-field regime: k'' l >= 10 / dOmega_feature^2
// where dOmega_feature is the smallest resolved spectral feature.
bool far_field_valid(const FiberSpec& fiber, double feature_width);

// max |F(s,i) - F(i,s)| / max |F| -- signal/idler exchange asymmetry.
double asymmetry(const TpsaGrid& in);

} // namespace tpsa
} // namespace biphoton
