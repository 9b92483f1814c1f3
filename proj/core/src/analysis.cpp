#include "biphoton/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace biphoton::analysis {

double tilt_from_widths(double width_s, double width_i) {
  if (!(width_s > 0 && width_i > 0))
    throw std::domain_error("tilt_from_widths requires positive widths");
  return std::atan(width_s / width_i);
}

std::pair<double, double> entanglement_R(double width, double width_s,
                                         double width_i, double alpha) {
  if (!(width > 0 && width_s > 0 && width_i > 0))
    throw std::domain_error("entanglement_R requires positive widths");
  if (!(alpha > 0 && alpha < std::numbers::pi / 2))
    throw std::domain_error("entanglement_R requires alpha in (0, pi/2)");
  const double t = std::tan(alpha);
  return {(width / width_s) / (1 + 1 / t), (width / width_i) / (1 + t)};
}

double consistency_check(double r_from_s, double r_from_i) {
  const double m = std::max(r_from_s, r_from_i);
  if (!(m > 0)) throw std::domain_error("consistency_check requires positive R");
  return std::abs(r_from_s - r_from_i) / m;
}

FringeInfo fringe_detect(const DelayDistribution& dist, const FringeOptions& opt) {
  FringeInfo info;
  const auto& y = dist.density;
  const int n = int(y.size());
  if (n < 64) return info;
  double peak = 0;
  for (double v : y) peak = std::max(peak, v);
  if (!(peak > 0)) return info;

  std::vector<int> peaks;
  for (int i = 1; i < n - 1; ++i)
    if (y[i] > y[i - 1] && y[i] >= y[i + 1] && y[i] > opt.peak_floor * peak)
      peaks.push_back(i);
  info.n_peaks = int(peaks.size());
  if (peaks.size() < 2) return info;

  // adjacent peak pairs separated by a qualifying dip
  struct Pair { int a, b; double dip; };
  std::vector<Pair> good;
  for (size_t p = 0; p + 1 < peaks.size(); ++p) {
    const int a = peaks[p], b = peaks[p + 1];
    double dip = y[a];
    for (int i = a; i <= b; ++i) dip = std::min(dip, y[i]);
    if (dip < opt.dip_ratio * std::min(y[a], y[b])) good.push_back({a, b, dip});
  }
  if (good.empty()) return info;

  info.detected = true;
  double spacing = 0;
  for (const auto& g : good) spacing += (g.b - g.a) * dist.dt;
  info.period = spacing / double(good.size());

  const double center = (n - 1) / 2.0;
  const auto central = std::min_element(
      good.begin(), good.end(), [&](const Pair& u, const Pair& v) {
        return std::abs((u.a + u.b) / 2.0 - center) <
               std::abs((v.a + v.b) / 2.0 - center);
      });
  const double hi = std::max(y[central->a], y[central->b]);
  info.visibility = (hi - central->dip) / (hi + central->dip);
  return info;
}

} // namespace biphoton::analysis
