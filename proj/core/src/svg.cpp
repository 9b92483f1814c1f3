#include "biphoton/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace biphoton::svg {

namespace {

constexpr double width = 860, height = 520;
constexpr double ml = 90, mr = 30, mt = 48, mb = 64; // margins

const char* palette[] = {"#1f77b4", "#d62728", "#2c9f2c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Ticks {
  double lo, hi, step;
};

Ticks nice_ticks(double lo, double hi) {
  if (!(hi > lo)) hi = lo + 1;
  const double raw = (hi - lo) / 5;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step = frac < 1.5 ? 1 : frac < 3.5 ? 2 : frac < 7.5 ? 5 : 10;
  step *= mag;
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

void axes(std::ofstream& out, const Ticks& tx, const Ticks& ty,
          const std::string& title, const std::string& xlabel,
          const std::string& ylabel) {
  auto px = [&](double x) { return ml + (x - tx.lo) / (tx.hi - tx.lo) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - ty.lo) / (ty.hi - ty.lo) * (height - mt - mb); };

  out << "<rect x='" << ml << "' y='" << mt << "' width='" << width - ml - mr
      << "' height='" << height - mt - mb
      << "' fill='none' stroke='#333' stroke-width='1'/>\n";
  for (double x = tx.lo; x <= tx.hi + tx.step / 2; x += tx.step) {
    out << "<line x1='" << px(x) << "' y1='" << mt << "' x2='" << px(x) << "' y2='"
        << height - mb << "' stroke='#ddd' stroke-width='0.5'/>\n";
    out << "<text x='" << px(x) << "' y='" << height - mb + 18
        << "' font-size='12' text-anchor='middle'>" << num(x) << "</text>\n";
  }
  for (double y = ty.lo; y <= ty.hi + ty.step / 2; y += ty.step) {
    out << "<line x1='" << ml << "' y1='" << py(y) << "' x2='" << width - mr
        << "' y2='" << py(y) << "' stroke='#ddd' stroke-width='0.5'/>\n";
    out << "<text x='" << ml - 8 << "' y='" << py(y) + 4
        << "' font-size='12' text-anchor='end'>" << num(y) << "</text>\n";
  }
  out << "<text x='" << width / 2 << "' y='" << mt - 18
      << "' font-size='16' text-anchor='middle'>" << title << "</text>\n";
  out << "<text x='" << width / 2 << "' y='" << height - 18
      << "' font-size='13' text-anchor='middle'>" << xlabel << "</text>\n";
  out << "<text x='22' y='" << height / 2
      << "' font-size='13' text-anchor='middle' transform='rotate(-90 22 "
      << height / 2 << ")'>" << ylabel << "</text>\n";
}

// dark blue -> cyan -> yellow -> white
void colormap(double v, int& r, int& g, int& b) {
  v = std::clamp(v, 0.0, 1.0);
  const double stops[4][3] = {
      {0.05, 0.03, 0.30}, {0.10, 0.55, 0.75}, {0.95, 0.90, 0.15}, {1.0, 1.0, 1.0}};
  const double x = v * 3;
  const int i = std::min(int(x), 2);
  const double f = x - i;
  r = int(255 * ((1 - f) * stops[i][0] + f * stops[i + 1][0]));
  g = int(255 * ((1 - f) * stops[i][1] + f * stops[i + 1][1]));
  b = int(255 * ((1 - f) * stops[i][2] + f * stops[i + 1][2]));
}

} // namespace

void write_plot(const std::string& path, const std::string& title,
                const std::string& xlabel, const std::string& ylabel,
                const std::vector<Series>& series) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open SVG output: " + path);

  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  bool first = true;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        xlo = xhi = s.x[i];
        ylo = yhi = s.y[i];
        first = false;
      }
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  const Ticks tx = nice_ticks(xlo, xhi), ty = nice_ticks(ylo, yhi);

  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "' font-family='sans-serif'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  axes(out, tx, ty, title, xlabel, ylabel);

  auto px = [&](double x) { return ml + (x - tx.lo) / (tx.hi - tx.lo) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - ty.lo) / (ty.hi - ty.lo) * (height - mt - mb); };

  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const std::string color =
        s.color.empty() ? palette[si % std::size(palette)] : s.color;
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.6' points='";
    for (size_t i = 0; i < s.x.size(); ++i)
      out << px(s.x[i]) << "," << py(s.y[i]) << " ";
    out << "'/>\n";
    const double ly = mt + 20 + 18 * double(si);
    out << "<line x1='" << width - mr - 150 << "' y1='" << ly << "' x2='"
        << width - mr - 120 << "' y2='" << ly << "' stroke='" << color
        << "' stroke-width='2'/>\n";
    out << "<text x='" << width - mr - 112 << "' y='" << ly + 4
        << "' font-size='12'>" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

void write_heatmap(const std::string& path, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel,
                   int nx, int ny, double x0, double dx, double y0, double dy,
                   const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open SVG output: " + path);
  if (values.size() != size_t(nx) * ny)
    throw std::invalid_argument("heatmap value count mismatch");

  double peak = 0;
  for (double v : values) peak = std::max(peak, v);
  if (!(peak > 0)) peak = 1;

  const Ticks tx = nice_ticks(x0, x0 + (nx - 1) * dx);
  const Ticks ty = nice_ticks(y0, y0 + (ny - 1) * dy);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "' font-family='sans-serif'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";

  auto px = [&](double x) { return ml + (x - tx.lo) / (tx.hi - tx.lo) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - ty.lo) / (ty.hi - ty.lo) * (height - mt - mb); };

  const double cw = px(x0 + dx) - px(x0), ch = py(y0) - py(y0 + dy);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      int r, g, b;
      colormap(values[size_t(j) * nx + i] / peak, r, g, b);
      char color[10];
      std::snprintf(color, sizeof color, "#%02x%02x%02x", r, g, b);
      out << "<rect x='" << px(x0 + (i - 0.5) * dx) << "' y='"
          << py(y0 + (j + 0.5) * dy) << "' width='" << cw + 0.5 << "' height='"
          << ch + 0.5 << "' fill='" << color << "'/>\n";
    }
  axes(out, tx, ty, title, xlabel, ylabel);
  out << "</svg>\n";
}

} // namespace biphoton::svg
