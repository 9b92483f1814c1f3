#include "biphoton/sellmeier.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace biphoton {

namespace {

double principal_index(const SellmeierCoefficients& s, double lam_um) {
  const double l2 = lam_um * lam_um;
  const double n2 = s.a + s.b / (l2 - s.c) - s.d * l2;
  return std::sqrt(n2);
}

void check_window(double wavelength, const CrystalDispersion& disp) {
  if (!(wavelength >= disp.window_min && wavelength <= disp.window_max)) {
    std::ostringstream msg;
    msg << "wavelength " << wavelength << " m outside Sellmeier validity window ["
        << disp.window_min << ", " << disp.window_max << "] m";
    throw std::domain_error(msg.str());
  }
}

} // namespace

const CrystalDispersion& bbo() {
  // Eimerl et al., J. Appl. Phys. 62, 1968 (1987)
  static const CrystalDispersion d{
      {2.7405, 0.0184, 0.0179, 0.0155},
      {2.3730, 0.0128, 0.0156, 0.0044},
      0.3e-6,
      1.0e-6,
      "Eimerl 1987 handbook BBO coefficients"};
  return d;
}

CrystalDispersion load_dispersion(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dispersion constants file: " + path);
  nlohmann::json j;
  try {
    in >> j;
    CrystalDispersion d;
    auto coeffs = [&](const char* key) {
      const auto& c = j.at(key);
      return SellmeierCoefficients{c.at("A"), c.at("B"), c.at("C"), c.at("D")};
    };
    d.ordinary = coeffs("ordinary");
    d.extraordinary = coeffs("extraordinary");
    const auto& w = j.at("validity_window_um");
    d.window_min = double(w.at(0)) * 1e-6;
    d.window_max = double(w.at(1)) * 1e-6;
    d.source = j.value("source", "");
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed dispersion constants file " + path + ": " + e.what());
  }
}

double index(double wavelength, Polarization pol, const CrystalDispersion& disp) {
  check_window(wavelength, disp);
  const double lam_um = wavelength * 1e6;
  return principal_index(
      pol == Polarization::ordinary ? disp.ordinary : disp.extraordinary, lam_um);
}

double extraordinary_index(double wavelength, double theta,
                           const CrystalDispersion& disp) {
  const double no = index(wavelength, Polarization::ordinary, disp);
  const double ne = index(wavelength, Polarization::extraordinary, disp);
  const double ct = std::cos(theta), st = std::sin(theta);
  return 1.0 / std::sqrt(ct * ct / (no * no) + st * st / (ne * ne));
}

} // namespace biphoton
