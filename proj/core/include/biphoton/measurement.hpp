#pragma once

#include <cstdint>
#include <vector>

#include "biphoton/grid.hpp"
#include "biphoton/tpsa_ops.hpp"

namespace biphoton {

// Density over the START-STOP delay t = t_s - t_i, uniform axis t0 + i*dt.
struct DelayDistribution {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> density;
  NormTag norm = NormTag::none;

  double t(int i) const { return t0 + i * dt; }
  void normalize_area(); // sum(density)*dt == 1
  void normalize_peak();
};

struct PsfSpec {
  double fwhm = 0.0;       // Gaussian FWHM, seconds; used when > 0
  DelayDistribution table; // measured response, used when fwhm == 0

  static PsfSpec gaussian(double fwhm);
  static PsfSpec tabulated(DelayDistribution table);
};

struct CoincidenceHistogram {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t seed = 0;
};

namespace measurement {

// Marginal of |F|^2 over antidiagonals (the Omega_+ direction), mapped to
// delay by t = k'' l (Omega_s - Omega_i).  2n-1 points, step k'' l dOmega.
DelayDistribution delay_projection(const TpsaGrid& tpsa, const FiberSpec& fiber);

// Linear convolution with the instrument response, kernel resampled to the
// distribution step and normalized to unit sum; output keeps the input axis.
DelayDistribution convolve_psf(const DelayDistribution& dist, const PsfSpec& psf);

struct WidthResult {
  double fwhm = 0.0;
  bool multimodal = false; // >1 half-height region; outermost crossings used
};

// Full width at half of the global maximum, sub-bin by linear interpolation.
WidthResult fwhm(const DelayDistribution& dist);

// sqrt(max(width^2 - psf_fwhm^2, 0)) -- Gaussian quadrature deconvolution.
double quadrature_deconvolve(double width, double psf_fwhm);

// Multinomial draw over bins proportional to density + background;
// deterministic for a fixed seed.
CoincidenceHistogram sample_coincidences(const DelayDistribution& dist,
                                         std::uint64_t n_events,
                                         std::uint64_t seed,
                                         double background = 0.0);

} // namespace measurement
} // namespace biphoton
