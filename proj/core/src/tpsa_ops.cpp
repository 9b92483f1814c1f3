#include "biphoton/tpsa_ops.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

namespace biphoton::tpsa {

namespace {

constexpr double pi = std::numbers::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// FWHM of sinc^2(a * Omega * L / 2) along one axis; sinc^2 reaches 1/2 at
// |x| = 1.3915573.
double pm_bandwidth_axis(double slope, double length) {
  const double x_half = 1.3915573;
  const double a = std::abs(slope) * length / 2;
  if (a < 1e-300) return 0.0;
  return 2 * x_half / a;
}

// bilinear sample of |values| on the square grid, zero outside
double sample_abs(const TpsaGrid& g, double fs, double fi) {
  const int n = g.grid.n;
  if (fs < 0 || fi < 0 || fs > n - 1 || fi > n - 1) return 0.0;
  int j = int(fs), k = int(fi);
  if (j == n - 1) --j;
  if (k == n - 1) --k;
  const double u = fs - j, v = fi - k;
  return (1 - u) * (1 - v) * std::abs(g.at(j, k)) +
         u * (1 - v) * std::abs(g.at(j + 1, k)) +
         (1 - u) * v * std::abs(g.at(j, k + 1)) +
         u * v * std::abs(g.at(j + 1, k + 1));
}

std::complex<double> sample_complex(const TpsaGrid& g, double fs, double fi) {
  const int n = g.grid.n;
  if (fs < 0 || fi < 0 || fs > n - 1 || fi > n - 1) return {0.0, 0.0};
  int j = int(fs), k = int(fi);
  if (j == n - 1) --j;
  if (k == n - 1) --k;
  const double u = fs - j, v = fi - k;
  return (1 - u) * (1 - v) * g.at(j, k) + u * (1 - v) * g.at(j + 1, k) +
         (1 - u) * v * g.at(j, k + 1) + u * v * g.at(j + 1, k + 1);
}

void execute_2d(std::vector<std::complex<double>>& data, int n, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = fftw_plan_dft_2d(n, n, ptr, ptr, sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

} // namespace

TpsaGrid build_tpsa(const FrequencyGrid& grid, const PumpSpec& pump_spec,
                    const CrystalSpec& crystal_in, const BuildOptions& opt,
                    const CrystalDispersion& disp) {
  pump::validate(pump_spec);
  CrystalSpec crystal = crystal_in;
  crystal.theta = opt.theta ? *opt.theta
                            : dispersion::solve_phase_matching_angle(
                                  crystal.pump_wavelength, disp);
  dispersion::validate(crystal);

  if (opt.enforce_span) {
    const double pump_bw =
        pump::bandwidth_to_delta_omega(pump_spec.bandwidth, pump_spec.wavelength);
    const double h = 1e10;
    const double slope_s = (dispersion::phase_mismatch(h, 0, crystal, disp) -
                            dispersion::phase_mismatch(-h, 0, crystal, disp)) /
                           (2 * h);
    const double slope_i = (dispersion::phase_mismatch(0, h, crystal, disp) -
                            dispersion::phase_mismatch(0, -h, crystal, disp)) /
                           (2 * h);
    const double pm_bw = std::max(pm_bandwidth_axis(slope_s, crystal.length),
                                  pm_bandwidth_axis(slope_i, crystal.length));
    const double need = 4 * std::max(pump_bw, pm_bw);
    if (2 * grid.omega_max < need) {
      std::ostringstream msg;
      msg << "grid span " << 2 * grid.omega_max
          << " rad/s does not cover 4x the larger bandwidth (" << need
          << " rad/s); enlarge omega_max or disable the span check";
      throw ConfigError(msg.str());
    }
  }

  const int n = grid.n;
  const double w_p0 = 2 * pi * constants::c_light / crystal.pump_wavelength;
  const double w_0 = w_p0 / 2;
  const double step = grid.step();

  // dispersion and pump are separable in (j, k, j+k); tabulate once
  std::vector<double> ks(n), ki(n), kp(2 * n - 1);
  std::vector<std::complex<double>> pump_sum(2 * n - 1);
  for (int j = 0; j < n; ++j) {
    const double om = grid.omega(j);
    ks[j] = dispersion::wavevector(w_0 + om, Polarization::ordinary, 0.0, disp);
    ki[j] = dispersion::wavevector(w_0 + om, Polarization::extraordinary,
                                   crystal.theta, disp);
  }
  for (int m = 0; m < 2 * n - 1; ++m) {
    const double sum = -2 * grid.omega_max + m * step;
    kp[m] = dispersion::wavevector(w_p0 + sum, Polarization::extraordinary,
                                   crystal.theta, disp);
    pump_sum[m] = pump::pump_amplitude(sum, pump_spec);
  }

  TpsaGrid out;
  out.grid = grid;
  out.values.resize(size_t(n) * n);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double x = (kp[j + k] - ks[j] - ki[k]) * crystal.length / 2;
      std::complex<double> v = pump_sum[j + k] * sinc(x);
      if (opt.include_pm_phase) v *= std::exp(i_unit * x);
      out.at(j, k) = v;
    }
  }
  out.normalize();
  return out;
}

TpsaGrid apply_fiber(const TpsaGrid& in, const FiberSpec& fiber) {
  if (fiber.length == 0.0) return in;
  const int n = in.grid.n;
  std::vector<std::complex<double>> phase(n);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    const double om = in.grid.omega(j);
    phase[j] = std::exp(i_unit * (fiber.length * fiber.gvd * om * om / 2));
  }
  TpsaGrid out = in;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) out.at(j, k) = in.at(j, k) * phase[j] * phase[k];
  return out;
}

TpsaGrid apply_filter(const TpsaGrid& in, const FilterSpec& filter) {
  if (!(filter.fwhm > 0)) throw ConfigError("filter bandwidth must be positive");
  if (std::isinf(filter.fwhm)) return in;
  const int n = in.grid.n;
  const double sigma = filter.fwhm / constants::fwhm_per_sigma;
  std::vector<double> g(n);
  for (int j = 0; j < n; ++j) {
    const double d = in.grid.omega(j) - filter.center;
    // amplitude = sqrt of the intensity transmission Gaussian
    g[j] = std::exp(-d * d / (4 * sigma * sigma));
  }
  TpsaGrid out = in;
  out.norm = NormTag::none;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      out.at(j, k) = in.at(j, k) * (filter.channel == Channel::signal ? g[j] : g[k]);
  if (filter.renormalize) out.normalize();
  return out;
}

TpsaGrid rotate_to_pm(const TpsaGrid& in) {
  const int n = in.grid.n;
  const double step = in.grid.step();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  TpsaGrid out;
  out.grid = in.grid;
  out.norm = in.norm;
  out.values.resize(size_t(n) * n);
  for (int p = 0; p < n; ++p) {
    const double op = in.grid.omega(p); // Omega_+
    for (int m = 0; m < n; ++m) {
      const double om = in.grid.omega(m); // Omega_-
      const double os = (op - om) * inv_sqrt2;
      const double oi = (op + om) * inv_sqrt2;
      out.at(p, m) = sample_complex(in, (os + in.grid.omega_max) / step,
                                    (oi + in.grid.omega_max) / step);
    }
  }
  return out;
}

TptaGrid tpta_exact(const TpsaGrid& in) {
  const int n = in.grid.n;
  const double step = in.grid.step();
  TptaGrid out;
  out.n = n;
  out.dt = 2 * pi / (n * step);
  out.t0 = -(n / 2) * out.dt;
  out.norm = in.norm;
  out.values = in.values;

  // e^{+i Omega t} transform via FFTW BACKWARD:
  // sum_m F_m e^{i Omega_m t_j} = e^{i Omega_0 t_j} sum_m [(-1)^m F_m] e^{2 pi i m j / n}
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if ((j + k) & 1) out.at(j, k) = -out.at(j, k);
  execute_2d(out.values, n, FFTW_BACKWARD);

  const double omega0 = in.grid.omega(0);
  const double scale = step * step / (2 * pi); // Parseval-preserving
  std::vector<std::complex<double>> ph(n);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int j = 0; j < n; ++j) ph[j] = std::exp(i_unit * (omega0 * out.t(j)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) out.at(j, k) *= ph[j] * ph[k] * scale;
  return out;
}

TpsaGrid tpsa_from_tpta(const TptaGrid& in, const FrequencyGrid& grid) {
  const int n = in.n;
  if (grid.n != n)
    throw ConfigError("tpsa_from_tpta: grid size mismatch");
  const double step = grid.step();
  if (std::abs(in.dt * n * step - 2 * pi) > 1e-9 * 2 * pi)
    throw ConfigError("tpsa_from_tpta: grid does not match time axis");

  TpsaGrid out;
  out.grid = grid;
  out.norm = in.norm;
  out.values = in.values;

  const double omega0 = grid.omega(0);
  std::vector<std::complex<double>> ph(n);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int j = 0; j < n; ++j) ph[j] = std::exp(-i_unit * (omega0 * in.t(j)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) out.at(j, k) *= ph[j] * ph[k];
  execute_2d(out.values, n, FFTW_FORWARD);
  const double scale = in.dt * in.dt / (2 * pi);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      out.at(j, k) *= scale;
      if ((j + k) & 1) out.at(j, k) = -out.at(j, k);
    }
  return out;
}

TptaGrid tpta_far_field(const TpsaGrid& source, const FiberSpec& fiber) {
  if (!(fiber.length > 0))
    throw std::domain_error("far-field undefined: fiber length is zero");
  const double scale = fiber.gvd * fiber.length;
  TptaGrid out;
  out.n = source.grid.n;
  out.t0 = scale * source.grid.omega(0);
  out.dt = scale * source.grid.step();
  out.values = source.values;
  double peak = 0;
  for (const auto& v : out.values) peak = std::max(peak, std::abs(v));
  if (!(peak > 0)) throw std::domain_error("far-field of an all-zero grid");
  for (auto& v : out.values) v /= peak;
  out.norm = NormTag::peak;
  return out;
}

double far_field_discrepancy(const TpsaGrid& source, const FiberSpec& fiber) {
  TptaGrid exact;
  {
    TpsaGrid fibered = apply_fiber(source, fiber);
    exact = tpta_exact(fibered);
  }
  const int n = exact.n;
  const double scale = fiber.gvd * fiber.length;
  const double step = source.grid.step();
  const double omega_max = source.grid.omega_max;

  // pass 1: L2 norms of |exact| and of |source| resampled to t = k'' l Omega
  double sum_a2 = 0, sum_b2 = 0;
  for (int j = 0; j < n; ++j) {
    const double fj = (exact.t(j) / scale + omega_max) / step;
    for (int k = 0; k < n; ++k) {
      const double fk = (exact.t(k) / scale + omega_max) / step;
      sum_a2 += std::norm(exact.at(j, k));
      const double b = sample_abs(source, fj, fk);
      sum_b2 += b * b;
    }
  }
  if (!(sum_a2 > 0 && sum_b2 > 0))
    throw std::domain_error("far_field_discrepancy on an all-zero grid");
  const double na = 1.0 / std::sqrt(sum_a2), nb = 1.0 / std::sqrt(sum_b2);

  double sum_d2 = 0;
  for (int j = 0; j < n; ++j) {
    const double fj = (exact.t(j) / scale + omega_max) / step;
    for (int k = 0; k < n; ++k) {
      const double fk = (exact.t(k) / scale + omega_max) / step;
      const double d = std::abs(exact.at(j, k)) * na - sample_abs(source, fj, fk) * nb;
      sum_d2 += d * d;
    }
  }
  return std::sqrt(sum_d2);
}

bool far_field_valid(const FiberSpec& fiber, double feature_width) {
  if (!(feature_width > 0)) return false;
  return fiber.gvd * fiber.length >= 10.0 / (feature_width * feature_width);
}

double asymmetry(const TpsaGrid& in) {
  const int n = in.grid.n;
  double peak = 0, dev = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      peak = std::max(peak, std::abs(in.at(j, k)));
      dev = std::max(dev, std::abs(in.at(j, k) - in.at(k, j)));
    }
  if (!(peak > 0)) throw std::domain_error("asymmetry of an all-zero grid");
  return dev / peak;
}

} // namespace biphoton::tpsa
