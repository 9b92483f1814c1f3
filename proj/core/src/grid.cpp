#include "biphoton/grid.hpp"

#include <cmath>
#include <sstream>

namespace biphoton {

FrequencyGrid::FrequencyGrid(int n_, double omega_max_) : n(n_), omega_max(omega_max_) {
  if (n < 64 || (n & (n - 1)) != 0) {
    std::ostringstream msg;
    msg << "grid points must be a power of two >= 64, got " << n;
    throw ConfigError(msg.str());
  }
  if (!(omega_max > 0)) throw ConfigError("grid omega_max must be positive");
}

double TpsaGrid::total_probability() const {
  double sum = 0;
  for (const auto& v : values) sum += std::norm(v);
  const double d = grid.step();
  return sum * d * d;
}

void TpsaGrid::normalize() {
  const double p = total_probability();
  if (!(p > 0)) throw std::domain_error("cannot normalize an all-zero grid");
  const double s = 1.0 / std::sqrt(p);
  for (auto& v : values) v *= s;
  norm = NormTag::area;
}

double TptaGrid::total_probability() const {
  double sum = 0;
  for (const auto& v : values) sum += std::norm(v);
  return sum * dt * dt;
}

} // namespace biphoton
