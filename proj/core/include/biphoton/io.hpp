#pragma once

#include <string>
#include <utility>
#include <vector>

#include "biphoton/measurement.hpp"

namespace biphoton::io {

using Header = std::vector<std::pair<std::string, std::string>>;

// Two-column CSV ("# key: value" header block, then "delay_s,density").
void write_distribution_csv(const std::string& path, const DelayDistribution& dist,
                            const Header& header = {});
DelayDistribution read_distribution_csv(const std::string& path);

void write_histogram_csv(const std::string& path, const CoincidenceHistogram& hist,
                         const Header& header = {});

// Full-grid CSV: "omega_s_rad_s,omega_i_rad_s,re,im".
void write_tpsa_csv(const std::string& path, const TpsaGrid& tpsa,
                    const Header& header = {});

// Compact binary dump, little-endian:
//   byte 0..7   magic "BIPHGRID"
//   u32         version (1)
//   u32         n (points per axis)
//   f64         omega0 (first axis sample, rad/s)
//   f64         step (rad/s)
//   n*n pairs   f64 re, f64 im, row-major (signal index outer)
void write_tpsa_binary(const std::string& path, const TpsaGrid& tpsa);
TpsaGrid read_tpsa_binary(const std::string& path);

struct CompareResult {
  double max_dev = 0.0; // max |a - b| after peak normalization
  double l2_dev = 0.0;  // rms deviation over the common axis
};

// Resample both distributions onto the overlap of their axes, peak-normalize,
// and measure deviations.  Throws ConfigError when the axes do not overlap.
CompareResult compare_distributions(const DelayDistribution& a,
                                    const DelayDistribution& b);

} // namespace biphoton::io
