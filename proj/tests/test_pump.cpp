#include <cmath>
#include <complex>
#include <numbers>

#include <doctest.h>

#include "biphoton/pump.hpp"

using namespace biphoton;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

double intensity(double omega, const PumpSpec& spec) {
  return std::norm(pump::pump_amplitude(omega, spec));
}
} // namespace

TEST_CASE("wavelength bandwidth conversion") {
  // d_omega = 2 pi c d_lambda / lambda^2, frozen for 2 nm at 404 nm
  CHECK(pump::bandwidth_to_delta_omega(2e-9, 404e-9) ==
        Approx(2.30817024e13).epsilon(1e-8));
  CHECK(pump::bandwidth_to_sigma(2e-9, 404e-9) ==
        Approx(2.30817024e13 / constants::fwhm_per_sigma).epsilon(1e-8));
  // linear in the bandwidth
  CHECK(pump::bandwidth_to_delta_omega(4e-9, 404e-9) ==
        Approx(2 * pump::bandwidth_to_delta_omega(2e-9, 404e-9)).epsilon(1e-12));
}

TEST_CASE("single pulse: declared bandwidth is the intensity FWHM") {
  PumpSpec spec;
  const double dw = pump::bandwidth_to_delta_omega(spec.bandwidth, spec.wavelength);
  CHECK(intensity(0.0, spec) == Approx(1.0));
  CHECK(intensity(dw / 2, spec) == Approx(0.5).epsilon(1e-12));
  CHECK(intensity(-dw / 2, spec) == Approx(0.5).epsilon(1e-12));
  // amplitude is real and even for an unmodulated pump
  CHECK(pump::pump_amplitude(1e13, spec).imag() == Approx(0.0));
  CHECK(intensity(1e13, spec) == Approx(intensity(-1e13, spec)).epsilon(1e-12));
}

TEST_CASE("double pulse: spectral fringes") {
  PumpSpec spec;
  spec.modulation = PumpModulation{5.2e-13, 0.0, 1.0};

  SUBCASE("in phase: maximum at the center, cosine envelope") {
    CHECK(intensity(0.0, spec) == Approx(1.0).epsilon(1e-12));
    // fringe period 2 pi / tau
    const double period = 2 * pi / spec.modulation->separation;
    CHECK(intensity(period, spec) ==
          Approx(std::exp(-period * period /
                          (2 * std::pow(pump::bandwidth_to_sigma(2e-9, 404e-9), 2))))
              .epsilon(1e-9));
    // first zero at half a period
    CHECK(intensity(period / 2, spec) == Approx(0.0).scale(1.0).epsilon(1e-20));
  }

  SUBCASE("anti-phase: exact null at the center") {
    spec.modulation->phase = pi;
    CHECK(intensity(0.0, spec) == Approx(0.0).scale(1.0).epsilon(1e-24));
    // maxima shifted by half a period
    const double period = 2 * pi / spec.modulation->separation;
    CHECK(intensity(period / 2, spec) > 0.5);
  }

  SUBCASE("unequal split never reaches a perfect null") {
    spec.modulation->phase = pi;
    spec.modulation->amplitude_ratio = 0.5;
    const double r = 0.5;
    CHECK(intensity(0.0, spec) ==
          Approx(std::pow((1 - r) / (1 + r), 2)).epsilon(1e-12));
  }
}

TEST_CASE("energy normalization makes the spectrum integrate to one") {
  for (double phase : {0.0, pi / 3, pi}) {
    PumpSpec spec;
    spec.modulation = PumpModulation{5.2e-13, phase, 1.0};
    spec.norm = PumpSpec::Norm::energy;
    const double sigma = pump::bandwidth_to_sigma(spec.bandwidth, spec.wavelength);
    double sum = 0.0;
    const double dw = sigma / 200;
    for (double w = -10 * sigma; w <= 10 * sigma; w += dw)
      sum += intensity(w, spec) * dw;
    CHECK(sum == Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("splitter-crystal separation") {
  const auto mod = pump::double_pulse_from_crystal(1e-3, pi, 404e-9);
  CHECK(mod.separation == Approx(3.500645e-13).epsilon(1e-5));
  CHECK(mod.phase == pi);
  CHECK(mod.amplitude_ratio == 1.0);
  // 5 mm gives five times the delay
  CHECK(pump::double_pulse_from_crystal(5e-3, 0.0, 404e-9).separation ==
        Approx(5 * mod.separation).epsilon(1e-12));
  CHECK(pump::double_pulse_from_crystal(0.0, 0.0, 404e-9).separation == 0.0);
}

TEST_CASE("validation rejects unphysical pump specs") {
  PumpSpec bad;
  bad.bandwidth = 0.0;
  CHECK_THROWS_AS(pump::validate(bad), ConfigError);
  bad = PumpSpec{};
  bad.wavelength = -404e-9;
  CHECK_THROWS_AS(pump::validate(bad), ConfigError);
  bad = PumpSpec{};
  bad.modulation = PumpModulation{5.2e-13, 0.0, 0.0};
  CHECK_THROWS_AS(pump::validate(bad), ConfigError);
  bad.modulation->amplitude_ratio = 1.5;
  CHECK_THROWS_AS(pump::validate(bad), ConfigError);
  PumpSpec ok;
  ok.modulation = PumpModulation{5.2e-13, 0.0, 1.0};
  CHECK_NOTHROW(pump::validate(ok));
}
