#include "biphoton/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace biphoton::io {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_header(std::ofstream& out, const Header& header) {
  for (const auto& [key, value] : header) out << "# " << key << ": " << value << "\n";
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, mode);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = {}) {
  std::ifstream in(path, mode);
  if (!in) throw ConfigError("cannot open input file: " + path);
  return in;
}

void put_u32(std::ofstream& out, std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ofstream& out, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, sizeof v);
  if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap64(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::ifstream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
  return v;
}

double get_f64(std::ifstream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap64(v);
  double d;
  std::memcpy(&d, &v, sizeof d);
  return d;
}

} // namespace

void write_distribution_csv(const std::string& path, const DelayDistribution& dist,
                            const Header& header) {
  auto out = open_out(path);
  write_header(out, header);
  out << "delay_s,density\n";
  for (size_t i = 0; i < dist.density.size(); ++i)
    out << fmt(dist.t0 + double(i) * dist.dt) << "," << fmt(dist.density[i]) << "\n";
}

DelayDistribution read_distribution_csv(const std::string& path) {
  auto in = open_in(path);
  std::vector<double> t, v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    char* end = nullptr;
    const double x = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) continue; // column header
    t.push_back(x);
    v.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
  }
  if (t.size() < 2) throw ConfigError("CSV has fewer than 2 data rows: " + path);
  DelayDistribution d;
  d.t0 = t.front();
  d.dt = (t.back() - t.front()) / double(t.size() - 1);
  if (!(d.dt > 0)) throw ConfigError("CSV axis is not increasing: " + path);
  for (size_t i = 1; i < t.size(); ++i)
    if (std::abs(t[i] - t[i - 1] - d.dt) > 1e-6 * d.dt)
      throw ConfigError("CSV axis is not uniform: " + path);
  d.density = std::move(v);
  return d;
}

void write_histogram_csv(const std::string& path, const CoincidenceHistogram& hist,
                         const Header& header) {
  auto out = open_out(path);
  write_header(out, header);
  out << "# total_events: " << hist.total << "\n";
  out << "# seed: " << hist.seed << "\n";
  out << "delay_s,counts\n";
  for (size_t i = 0; i < hist.counts.size(); ++i)
    out << fmt(hist.t0 + double(i) * hist.dt) << "," << hist.counts[i] << "\n";
}

void write_tpsa_csv(const std::string& path, const TpsaGrid& tpsa,
                    const Header& header) {
  auto out = open_out(path);
  write_header(out, header);
  out << "omega_s_rad_s,omega_i_rad_s,re,im\n";
  const int n = tpsa.grid.n;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      out << fmt(tpsa.grid.omega(j)) << "," << fmt(tpsa.grid.omega(k)) << ","
          << fmt(tpsa.at(j, k).real()) << "," << fmt(tpsa.at(j, k).imag()) << "\n";
}

void write_tpsa_binary(const std::string& path, const TpsaGrid& tpsa) {
  auto out = open_out(path, std::ios::binary);
  out.write("BIPHGRID", 8);
  put_u32(out, 1);
  put_u32(out, std::uint32_t(tpsa.grid.n));
  put_f64(out, tpsa.grid.omega(0));
  put_f64(out, tpsa.grid.step());
  for (const auto& v : tpsa.values) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
}

TpsaGrid read_tpsa_binary(const std::string& path) {
  auto in = open_in(path, std::ios::binary);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "BIPHGRID", 8) != 0)
    throw ConfigError("not a grid dump (bad magic): " + path);
  const auto version = get_u32(in);
  if (version != 1) throw ConfigError("unsupported grid dump version: " + path);
  const int n = int(get_u32(in));
  const double omega0 = get_f64(in);
  const double step = get_f64(in);
  TpsaGrid g;
  g.grid = FrequencyGrid(n, -omega0);
  if (std::abs(g.grid.step() - step) > 1e-9 * step)
    throw ConfigError("grid dump axis metadata is inconsistent: " + path);
  g.values.resize(size_t(n) * n);
  for (auto& v : g.values) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v = {re, im};
  }
  if (!in) throw ConfigError("grid dump truncated: " + path);
  return g;
}

CompareResult compare_distributions(const DelayDistribution& a,
                                    const DelayDistribution& b) {
  const double a_end = a.t0 + (a.density.size() - 1) * a.dt;
  const double b_end = b.t0 + (b.density.size() - 1) * b.dt;
  const double lo = std::max(a.t0, b.t0);
  const double hi = std::min(a_end, b_end);
  if (!(hi > lo)) throw ConfigError("distribution axes do not overlap");

  auto interp = [](const DelayDistribution& d, double t) {
    const double x = (t - d.t0) / d.dt;
    const int i = std::clamp(int(x), 0, int(d.density.size()) - 2);
    const double f = x - i;
    return (1 - f) * d.density[i] + f * d.density[i + 1];
  };

  const int n = std::max(2, int(std::floor((hi - lo) / a.dt)) + 1);
  std::vector<double> ya(n), yb(n);
  double pa = 0, pb = 0;
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * double(i) / double(n - 1);
    ya[i] = interp(a, t);
    yb[i] = interp(b, t);
    pa = std::max(pa, ya[i]);
    pb = std::max(pb, yb[i]);
  }
  if (!(pa > 0 && pb > 0))
    throw std::domain_error("cannot compare all-zero distributions");

  CompareResult r;
  double sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double d = ya[i] / pa - yb[i] / pb;
    r.max_dev = std::max(r.max_dev, std::abs(d));
    sum2 += d * d;
  }
  r.l2_dev = std::sqrt(sum2 / n);
  return r;
}

} // namespace biphoton::io
