#pragma once

#include <string>
#include <vector>

namespace biphoton::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color; // css color; auto-assigned when empty
};

void write_plot(const std::string& path, const std::string& title,
                const std::string& xlabel, const std::string& ylabel,
                const std::vector<Series>& series);

// values: ny rows * nx cols, row-major, normalized to [0,1] internally.
void write_heatmap(const std::string& path, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel,
                   int nx, int ny, double x0, double dx, double y0, double dy,
                   const std::vector<double>& values);

} // namespace biphoton::svg
