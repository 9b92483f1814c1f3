#pragma once

#include <complex>
#include <vector>

#include "biphoton/types.hpp"

namespace biphoton {

enum class NormTag { none, area, peak };

// Uniform symmetric frequency axis [-omega_max, +omega_max], shared by both
// grid dimensions.  step = 2*omega_max/(n-1).
struct FrequencyGrid {
  int n = 0;
  double omega_max = 0.0;

  FrequencyGrid() = default;
  FrequencyGrid(int n_, double omega_max_); // throws ConfigError

  double step() const { return 2.0 * omega_max / (n - 1); }
  double omega(int i) const { return -omega_max + i * step(); }
};

// F(Omega_s, Omega_i); values[j*n + k] = F(omega(j), omega(k)).
struct TpsaGrid {
  FrequencyGrid grid;
  std::vector<std::complex<double>> values;
  NormTag norm = NormTag::none;

  std::complex<double>& at(int s, int i) { return values[size_t(s) * grid.n + i]; }
  const std::complex<double>& at(int s, int i) const { return values[size_t(s) * grid.n + i]; }

  double total_probability() const; // sum |F|^2 * step^2
  void normalize();                 // scale so total_probability() == 1
};

// F(t_s, t_i) on a shared uniform time axis t_j = t0 + j*dt.
struct TptaGrid {
  int n = 0;
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<std::complex<double>> values;
  NormTag norm = NormTag::none;

  double t(int i) const { return t0 + i * dt; }
  std::complex<double>& at(int s, int i) { return values[size_t(s) * n + i]; }
  const std::complex<double>& at(int s, int i) const { return values[size_t(s) * n + i]; }

  double total_probability() const; // sum |F|^2 * dt^2
};

} // namespace biphoton
