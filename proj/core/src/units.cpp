#include "biphoton/units.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <numbers>

namespace biphoton::units {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(unsigned(s[a]))) ++a;
  while (b > a && std::isspace(unsigned(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

const std::map<std::string, double>& unit_table(Dimension dim) {
  static const std::map<std::string, double> length{
      {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
  static const std::map<std::string, double> time{
      {"s", 1.0},   {"ms", 1e-3}, {"us", 1e-6},
      {"ns", 1e-9}, {"ps", 1e-12}, {"fs", 1e-15}};
  static const std::map<std::string, double> angle{
      {"rad", 1.0}, {"mrad", 1e-3}, {"deg", std::numbers::pi / 180}};
  static const std::map<std::string, double> gvd{
      {"s^2/m", 1.0}, {"s^2/cm", 1e2}, {"s^2/mm", 1e3}, {"fs^2/mm", 1e-27}};
  static const std::map<std::string, double> afreq{{"rad/s", 1.0}};
  static const std::map<std::string, double> none{{"", 1.0}};
  switch (dim) {
    case Dimension::length: return length;
    case Dimension::time: return time;
    case Dimension::angle: return angle;
    case Dimension::gvd: return gvd;
    case Dimension::angular_frequency: return afreq;
    default: return none;
  }
}

const char* dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::length: return "length";
    case Dimension::time: return "time";
    case Dimension::angle: return "angle";
    case Dimension::gvd: return "GVD";
    case Dimension::angular_frequency: return "angular frequency";
    default: return "dimensionless";
  }
}

} // namespace

double parse_quantity(const std::string& text, Dimension dim) {
  std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty quantity");

  double sign = 1.0;
  size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    if (s[pos] == '-') sign = -1.0;
    ++pos;
  }

  double value;
  const char* begin = s.c_str() + pos;
  char* end = nullptr;
  value = std::strtod(begin, &end);
  bool have_number = end != begin;
  if (!have_number) value = 1.0;
  pos += end - begin;

  // "pi", "2 pi", "-pi" ...
  std::string rest = trim(s.substr(pos));
  if (rest.rfind("pi", 0) == 0) {
    value *= std::numbers::pi;
    have_number = true;
    rest = trim(rest.substr(2));
  }
  if (!have_number)
    throw ConfigError("cannot parse numeric value in quantity '" + text + "'");

  const auto& table = unit_table(dim);
  const auto it = table.find(rest);
  if (it == table.end())
    throw ConfigError("unknown " + std::string(dimension_name(dim)) + " unit '" +
                      rest + "' in quantity '" + text + "'");
  return sign * value * it->second;
}

} // namespace biphoton::units
