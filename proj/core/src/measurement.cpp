#include "biphoton/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "biphoton/constants.hpp"

namespace biphoton {

void DelayDistribution::normalize_area() {
  double sum = 0;
  for (double v : density) sum += v;
  sum *= dt;
  if (!(sum > 0)) throw std::domain_error("cannot normalize an all-zero distribution");
  for (double& v : density) v /= sum;
  norm = NormTag::area;
}

void DelayDistribution::normalize_peak() {
  const double peak = *std::max_element(density.begin(), density.end());
  if (!(peak > 0)) throw std::domain_error("cannot normalize an all-zero distribution");
  for (double& v : density) v /= peak;
  norm = NormTag::peak;
}

PsfSpec PsfSpec::gaussian(double fwhm) {
  if (!(fwhm > 0)) throw ConfigError("PSF FWHM must be positive");
  PsfSpec p;
  p.fwhm = fwhm;
  return p;
}

PsfSpec PsfSpec::tabulated(DelayDistribution table) {
  if (table.density.empty() || !(table.dt > 0))
    throw ConfigError("tabulated PSF requires a nonempty uniform table");
  PsfSpec p;
  p.table = std::move(table);
  return p;
}

namespace measurement {

DelayDistribution delay_projection(const TpsaGrid& tpsa, const FiberSpec& fiber) {
  if (!(fiber.length > 0))
    throw std::domain_error("far-field undefined: fiber length is zero");
  const int n = tpsa.grid.n;
  const double step = tpsa.grid.step();
  const double scale = fiber.gvd * fiber.length;

  DelayDistribution out;
  out.dt = scale * step;
  out.t0 = -scale * (n - 1) * step;
  out.density.assign(2 * n - 1, 0.0);
  // u = Omega_s - Omega_i = (j - k) * step; sum |F|^2 over the Omega_+ direction
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      out.density[j - k + n - 1] += std::norm(tpsa.at(j, k));
  for (double& v : out.density) v *= step;
  return out;
}

namespace {

struct Kernel {
  std::vector<double> taps;
  int offset = 0; // tap q applies to in[i - (q + offset)]
  double fwhm = 0.0;
};

Kernel make_kernel(const DelayDistribution& dist, const PsfSpec& psf) {
  Kernel k;
  if (psf.fwhm > 0) {
    const double sigma = psf.fwhm / constants::fwhm_per_sigma;
    const int m = std::max(1, int(std::ceil(5 * sigma / dist.dt)));
    k.taps.resize(2 * m + 1);
    for (int q = -m; q <= m; ++q)
      k.taps[q + m] = std::exp(-(q * dist.dt) * (q * dist.dt) / (2 * sigma * sigma));
    k.offset = -m;
    k.fwhm = psf.fwhm;
  } else {
    if (psf.table.density.empty())
      throw ConfigError("PSF has neither a Gaussian FWHM nor a table");
    const auto& t = psf.table;
    const double t_end = t.t0 + (t.density.size() - 1) * t.dt;
    const int lo = int(std::floor(t.t0 / dist.dt));
    const int hi = int(std::ceil(t_end / dist.dt));
    k.taps.resize(hi - lo + 1, 0.0);
    for (int q = lo; q <= hi; ++q) {
      const double x = (q * dist.dt - t.t0) / t.dt;
      if (x < 0 || x > double(t.density.size() - 1)) continue;
      const int b = std::min(int(x), int(t.density.size()) - 2);
      const double f = x - b;
      k.taps[q - lo] = std::max(0.0, (1 - f) * t.density[b] + f * t.density[b + 1]);
    }
    k.offset = lo;
    DelayDistribution shaped;
    shaped.t0 = lo * dist.dt;
    shaped.dt = dist.dt;
    shaped.density = k.taps;
    k.fwhm = fwhm(shaped).fwhm;
  }
  double sum = 0;
  for (double v : k.taps) sum += v;
  if (!(sum > 0)) throw ConfigError("PSF kernel is empty after resampling");
  for (double& v : k.taps) v /= sum;
  return k;
}

} // namespace

DelayDistribution convolve_psf(const DelayDistribution& dist, const PsfSpec& psf) {
  if (dist.density.size() < 2 || !(dist.dt > 0))
    throw ConfigError("convolve_psf requires a uniform distribution");
  const Kernel k = make_kernel(dist, psf);
  const double span = (dist.density.size() - 1) * dist.dt;
  if (span < 3 * k.fwhm)
    throw ConfigError("distribution span is below 3x the PSF FWHM");

  const int n = int(dist.density.size());
  DelayDistribution out = dist;
  out.norm = NormTag::none;
  for (int i = 0; i < n; ++i) {
    double acc = 0;
    for (size_t q = 0; q < k.taps.size(); ++q) {
      const int src = i - (int(q) + k.offset);
      if (src >= 0 && src < n) acc += k.taps[q] * dist.density[src];
    }
    out.density[i] = acc;
  }
  return out;
}

WidthResult fwhm(const DelayDistribution& dist) {
  const auto& y = dist.density;
  const int n = int(y.size());
  double peak = 0;
  for (double v : y) peak = std::max(peak, v);
  if (!(peak > 0)) throw std::domain_error("fwhm of an all-zero distribution");
  const double half = peak / 2;

  int i1 = -1, i2 = -1, rising = 0;
  for (int i = 0; i < n; ++i) {
    if (y[i] >= half) {
      if (i1 < 0) i1 = i;
      i2 = i;
      if (i == 0 || y[i - 1] < half) ++rising;
    }
  }
  auto cross = [&](int a, int b) {
    // linear interpolation of the half-height abscissa between bins a and b
    return dist.t(a) + (half - y[a]) * (dist.t(b) - dist.t(a)) / (y[b] - y[a]);
  };
  const double x1 = i1 > 0 ? cross(i1 - 1, i1) : dist.t(0);
  const double x2 = i2 < n - 1 ? cross(i2 + 1, i2) : dist.t(n - 1);
  return {std::abs(x2 - x1), rising > 1};
}

double quadrature_deconvolve(double width, double psf_fwhm) {
  return std::sqrt(std::max(width * width - psf_fwhm * psf_fwhm, 0.0));
}

CoincidenceHistogram sample_coincidences(const DelayDistribution& dist,
                                         std::uint64_t n_events, std::uint64_t seed,
                                         double background) {
  if (n_events == 0) throw ConfigError("sample_coincidences requires n_events > 0");
  if (background < 0) throw ConfigError("background must be >= 0");
  const int n = int(dist.density.size());
  std::vector<double> cum(n);
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    const double w = dist.density[i] + background;
    if (w < 0) throw std::domain_error("negative density in sample_coincidences");
    acc += w;
    cum[i] = acc;
  }
  if (!(acc > 0)) throw std::domain_error("all-zero density in sample_coincidences");

  CoincidenceHistogram h;
  h.t0 = dist.t0;
  h.dt = dist.dt;
  h.seed = seed;
  h.total = n_events;
  h.counts.assign(n, 0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, acc);
  for (std::uint64_t e = 0; e < n_events; ++e) {
    const auto it = std::upper_bound(cum.begin(), cum.end(), uni(rng));
    const int idx = std::min(int(it - cum.begin()), n - 1);
    ++h.counts[idx];
  }
  return h;
}

} // namespace measurement
} // namespace biphoton
