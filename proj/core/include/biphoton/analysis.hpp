#pragma once

#include <utility>

#include "biphoton/measurement.hpp"

namespace biphoton {

struct FringeInfo {
  bool detected = false;
  double period = 0.0;     // mean spacing of fringe peaks, axis units
  double visibility = 0.0; // (max - min)/(max + min) of the central pair
  int n_peaks = 0;
};

struct AnalysisReport {
  double width_unfiltered = 0.0;      // delta_Omega, rad/s
  double width_signal_cut = 0.0;      // delta_Omega_s (idler-filtered), rad/s
  double width_idler_cut = 0.0;       // delta_Omega_i (signal-filtered), rad/s
  double tilt = 0.0;                  // alpha, rad
  double r_from_s = 0.0;
  double r_from_i = 0.0;
  FringeInfo fringe;
};

namespace analysis {

// alpha = atan(dOmega_s / dOmega_i)
double tilt_from_widths(double width_s, double width_i);

// R = (dOmega/dOmega_s)/(1 + cot alpha) and (dOmega/dOmega_i)/(1 + tan alpha)
std::pair<double, double> entanglement_R(double width, double width_s,
                                         double width_i, double alpha);

// |R_s - R_i| / max(R_s, R_i); zero (to rounding) when alpha is derived
// from the same widths.
double consistency_check(double r_from_s, double r_from_i);

struct FringeOptions {
  double peak_floor = 0.1; // interior maxima above this fraction of the peak
  double dip_ratio = 0.8;  // dip below this fraction of the lesser peak
};

FringeInfo fringe_detect(const DelayDistribution& dist,
                         const FringeOptions& opt = {});

} // namespace analysis
} // namespace biphoton
