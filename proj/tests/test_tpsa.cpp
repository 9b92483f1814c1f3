#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "biphoton/tpsa_ops.hpp"

using namespace biphoton;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

const CrystalSpec paper_crystal{5e-3, 0.7248446216, 404e-9};

TpsaGrid analytic(const FrequencyGrid& grid,
                  const std::function<std::complex<double>(double, double)>& f) {
  TpsaGrid out;
  out.grid = grid;
  out.values.resize(size_t(grid.n) * grid.n);
  for (int j = 0; j < grid.n; ++j)
    for (int k = 0; k < grid.n; ++k)
      out.at(j, k) = f(grid.omega(j), grid.omega(k));
  return out;
}

double max_abs_diff(const TpsaGrid& a, const TpsaGrid& b) {
  double m = 0;
  for (size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}
} // namespace

TEST_CASE("frequency grid constructor enforces its contract") {
  CHECK_THROWS_AS(FrequencyGrid(32, 8e13), ConfigError);
  CHECK_THROWS_AS(FrequencyGrid(100, 8e13), ConfigError); // not a power of two
  CHECK_THROWS_AS(FrequencyGrid(256, 0.0), ConfigError);
  CHECK_THROWS_AS(FrequencyGrid(256, -1.0), ConfigError);
  const FrequencyGrid g(256, 8e13);
  CHECK(g.omega(0) == Approx(-8e13));
  CHECK(g.omega(255) == Approx(8e13));
  CHECK(g.step() == Approx(2 * 8e13 / 255));
}

TEST_CASE("build_tpsa matches the closed-form factorization") {
  const FrequencyGrid grid(128, 8e13);
  PumpSpec pump;
  const auto f = tpsa::build_tpsa(grid, pump, paper_crystal);
  CHECK(f.total_probability() == Approx(1.0).epsilon(1e-9));

  // ratio of two samples with equal Os + Oi isolates the sinc factor
  auto sinc = [](double x) { return x == 0 ? 1.0 : std::sin(x) / x; };
  const int a = 70, b = 58; // omega(a) + omega(b) == omega(b) + omega(a)
  const double ra = std::abs(f.at(a, b));
  const double rb = std::abs(f.at(b, a));
  const double sa =
      sinc(dispersion::phase_mismatch(grid.omega(a), grid.omega(b), paper_crystal) *
           paper_crystal.length / 2);
  const double sb =
      sinc(dispersion::phase_mismatch(grid.omega(b), grid.omega(a), paper_crystal) *
           paper_crystal.length / 2);
  // the library precomputes separable wavevector tables, so the agreement is
  // to rounding (amplified near sinc nulls), not bit-exact
  CHECK(ra / rb == Approx(std::abs(sa / sb)).epsilon(5e-4));
}

TEST_CASE("type-II amplitude is strongly exchange-asymmetric") {
  const FrequencyGrid grid(128, 8e13);
  const auto f = tpsa::build_tpsa(grid, PumpSpec{}, paper_crystal);
  CHECK(tpsa::asymmetry(f) > 0.1);
  // a symmetric test function has zero asymmetry
  const auto sym = analytic(grid, [](double s, double i) {
    return std::exp(-(s * s + i * i) / (2 * 4e26));
  });
  CHECK(tpsa::asymmetry(sym) == Approx(0.0));
}

TEST_CASE("sinc null location agrees with an independent root bracket") {
  const FrequencyGrid grid(512, 8e13);
  const auto f = tpsa::build_tpsa(grid, PumpSpec{}, paper_crystal);
  // walk along Oi at fixed Os = 0 to the first modulus minimum
  const int row = grid.n / 2;
  int null_idx = -1;
  for (int k = row; k < grid.n - 1; ++k)
    if (std::abs(f.at(row, k + 1)) > std::abs(f.at(row, k))) {
      null_idx = k;
      break;
    }
  REQUIRE(null_idx > row);
  // bisect |dk| L/2 = pi on the same cut; sign-agnostic
  auto g = [&](double oi) {
    return std::abs(dispersion::phase_mismatch(grid.omega(row), oi, paper_crystal)) *
               paper_crystal.length / 2 -
           pi;
  };
  double lo = grid.omega(row), hi = 8e13;
  REQUIRE(g(lo) * g(hi) < 0);
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(lo) * g(mid) <= 0 ? hi : lo) = mid;
  }
  CHECK(grid.omega(null_idx) == Approx(lo).epsilon(3 * grid.step() / lo));
}

TEST_CASE("span guard") {
  PumpSpec pump;
  // 4e12 half-span cannot hold the 2.3e13-wide pump
  CHECK_THROWS_AS(
      tpsa::build_tpsa(FrequencyGrid(128, 2e12), pump, paper_crystal), ConfigError);
  tpsa::BuildOptions opt;
  opt.enforce_span = false;
  CHECK_NOTHROW(tpsa::build_tpsa(FrequencyGrid(128, 2e12), pump, paper_crystal, opt));
}

TEST_CASE("fiber phase") {
  const FrequencyGrid grid(64, 6.3e14); // step 2e13, +/-1e13 on grid
  const auto f = analytic(grid, [](double s, double i) {
    return std::exp(-(s * s + i * i) / (2 * 1e29));
  });

  SUBCASE("zero length is the identity") {
    const auto out = tpsa::apply_fiber(f, FiberSpec{0.0});
    CHECK(max_abs_diff(out, f) == 0.0);
  }

  SUBCASE("pure phase: modulus and total probability preserved") {
    const auto out = tpsa::apply_fiber(f, FiberSpec{500.0});
    CHECK(out.total_probability() == Approx(f.total_probability()).epsilon(1e-12));
    for (int j = 0; j < grid.n; j += 7)
      for (int k = 0; k < grid.n; k += 7)
        CHECK(std::abs(out.at(j, k)) == Approx(std::abs(f.at(j, k))).epsilon(1e-12));
  }

  SUBCASE("accumulated phase is l k'' (Os^2 + Oi^2)/2") {
    const auto out = tpsa::apply_fiber(f, FiberSpec{500.0});
    const int j = 31, k = 32; // omega = -1e13, +1e13
    REQUIRE(grid.omega(j) == Approx(-1e13));
    REQUIRE(grid.omega(k) == Approx(1e13));
    const double expected = 500.0 * constants::default_fiber_gvd * 2e26 / 2; // 2150
    const double got = std::arg(out.at(j, k) / f.at(j, k));
    CHECK(std::remainder(got - expected, 2 * pi) == Approx(0.0).scale(1.0).epsilon(1e-6));
  }
}

TEST_CASE("exact time transform of a separable Gaussian") {
  const FrequencyGrid grid(256, 8e13);
  const double a = 5e12; // amplitude std in rad/s
  const auto f = analytic(grid, [a](double s, double i) {
    return std::exp(-(s * s + i * i) / (2 * a * a));
  });
  const auto ft = tpsa::tpta_exact(f);

  SUBCASE("Parseval") {
    CHECK(ft.total_probability() == Approx(f.total_probability()).epsilon(1e-9));
  }

  SUBCASE("reciprocal-width Gaussian with the analytic prefactor") {
    // continuum result: F(ts, ti) = a^2 exp(-a^2 (ts^2 + ti^2)/2)
    const int c = grid.n / 2;
    CHECK(ft.t(c) == Approx(0.0).scale(1e-12));
    CHECK(std::abs(ft.at(c, c)) == Approx(a * a).epsilon(1e-6));
    const int off = c + 10;
    const double ts = ft.t(off);
    CHECK(std::abs(ft.at(off, c)) ==
          Approx(a * a * std::exp(-a * a * ts * ts / 2)).epsilon(1e-6));
    // imaginary part vanishes for a real even input
    CHECK(std::abs(ft.at(off, c).imag()) < 1e-9 * a * a);
  }

  SUBCASE("round trip restores the input") {
    const auto back = tpsa::tpsa_from_tpta(ft, grid);
    CHECK(max_abs_diff(back, f) < 1e-12);
  }

  SUBCASE("inverse rejects a mismatched grid") {
    CHECK_THROWS_AS(tpsa::tpsa_from_tpta(ft, FrequencyGrid(128, 8e13)), ConfigError);
    CHECK_THROWS_AS(tpsa::tpsa_from_tpta(ft, FrequencyGrid(256, 4e13)), ConfigError);
  }
}

TEST_CASE("far-field axis and validity") {
  const FrequencyGrid grid(64, 1e13);
  const auto f = analytic(grid, [](double s, double i) {
    return std::exp(-(s * s + i * i) / (2 * 1e25));
  });
  CHECK_THROWS_WITH_AS(tpsa::tpta_far_field(f, FiberSpec{0.0}),
                       doctest::Contains("far-field"), std::domain_error);
  const FiberSpec fiber{500.0};
  const auto ff = tpsa::tpta_far_field(f, fiber);
  const double scale = fiber.length * fiber.gvd;
  CHECK(ff.t(0) == Approx(scale * grid.omega(0)).epsilon(1e-12));
  CHECK(ff.dt == Approx(scale * grid.step()).epsilon(1e-12));
  // peak-normalized copy of the source shape
  const int c = grid.n / 2;
  CHECK(std::abs(ff.at(c, c)) <= 1.0 + 1e-12);
  CHECK(std::abs(ff.at(c + 5, c - 3)) ==
        Approx(std::abs(f.at(c + 5, c - 3)) / std::abs(f.at(c, c))).epsilon(1e-12));

  CHECK(tpsa::far_field_valid(FiberSpec{500.0}, 1.44e12));
  CHECK_FALSE(tpsa::far_field_valid(FiberSpec{50.0}, 1e11));
}

TEST_CASE("far-field discrepancy decreases with fiber length") {
  const FrequencyGrid grid(1024, 4e12);
  PumpSpec pump;
  tpsa::BuildOptions opt;
  opt.enforce_span = false;
  auto f = tpsa::build_tpsa(grid, pump, paper_crystal, opt);
  const double fw = 2 * pi * constants::c_light * 0.5e-9 / (808e-9 * 808e-9);
  f = tpsa::apply_filter(f, FilterSpec{Channel::signal, 0.0, fw});
  f = tpsa::apply_filter(f, FilterSpec{Channel::idler, 0.0, fw});

  double prev = 2.0;
  for (double l : {50.0, 150.0, 500.0, 1500.0}) {
    const double d = tpsa::far_field_discrepancy(f, FiberSpec{l});
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.05); // essentially converged at 1500 m
}

TEST_CASE("rotation to the +/- frame") {
  const FrequencyGrid grid(128, 8e13);

  SUBCASE("an isotropic Gaussian is invariant") {
    const auto f = analytic(grid, [](double s, double i) {
      return std::exp(-(s * s + i * i) / (2 * 1e26));
    });
    const auto rot = tpsa::rotate_to_pm(f);
    for (int j = 20; j < grid.n - 20; j += 9)
      for (int k = 20; k < grid.n - 20; k += 9)
        CHECK(std::abs(rot.at(j, k)) ==
              Approx(std::abs(f.at(j, k))).epsilon(5e-3).scale(1.0));
  }

  SUBCASE("an antidiagonal ridge becomes a function of the row only") {
    // narrow in O+ (a), wide in O- (b)
    const double a = 6e12, b = 3e13;
    const auto f = analytic(grid, [&](double s, double i) {
      const double op = (s + i) / std::sqrt(2.0), om = (i - s) / std::sqrt(2.0);
      return std::exp(-op * op / (2 * a * a) - om * om / (2 * b * b));
    });
    const auto rot = tpsa::rotate_to_pm(f);
    // stay within ~2 sigma of the ridge: bilinear resampling overshoots in
    // the convex far tails
    for (int j = 54; j <= 74; j += 4) {
      const double expect = std::exp(-std::pow(grid.omega(j), 2) / (2 * a * a));
      for (int k = 32; k < 96; k += 9) {
        const double envelope =
            std::exp(-std::pow(grid.omega(k), 2) / (2 * b * b));
        CHECK(std::abs(rot.at(j, k)) ==
              Approx(expect * envelope).epsilon(0.02).scale(1e-3));
      }
    }
  }

  SUBCASE("probability approximately preserved for compact support") {
    const auto f = analytic(grid, [](double s, double i) {
      return std::exp(-(s * s + i * i) / (2 * 4e25));
    });
    const auto rot = tpsa::rotate_to_pm(f);
    CHECK(rot.total_probability() ==
          Approx(f.total_probability()).epsilon(0.01));
  }
}

TEST_CASE("spectral filters") {
  const FrequencyGrid grid(128, 8e13);
  const auto f = analytic(grid, [](double s, double i) {
    return std::exp(-(s * s + i * i) / (2 * 4e26));
  });

  SUBCASE("invalid bandwidth") {
    CHECK_THROWS_AS(tpsa::apply_filter(f, FilterSpec{Channel::signal, 0.0, 0.0}),
                    ConfigError);
    CHECK_THROWS_AS(tpsa::apply_filter(f, FilterSpec{Channel::idler, 0.0, -1.0}),
                    ConfigError);
  }

  SUBCASE("infinite bandwidth is the identity") {
    const auto out = tpsa::apply_filter(
        f, FilterSpec{Channel::signal, 0.0, std::numeric_limits<double>::infinity()});
    CHECK(max_abs_diff(out, f) == 0.0);
  }

  SUBCASE("declared bandwidth is the intensity FWHM on the filtered axis") {
    const double fw = 2.88521280e12; // 1 nm at 808 nm, frozen conversion
    const auto out = tpsa::apply_filter(f, FilterSpec{Channel::signal, 0.0, fw});
    const int c = grid.n / 2;
    for (int j = 30; j < grid.n - 30; j += 13) {
      const double d = grid.omega(j);
      const double sigma = fw / constants::fwhm_per_sigma;
      const double ratio = std::norm(out.at(j, c)) / std::norm(f.at(j, c));
      CHECK(ratio == Approx(std::exp(-d * d / (2 * sigma * sigma))).epsilon(1e-9));
      // idler axis untouched
      CHECK(std::norm(out.at(c, j)) / std::norm(f.at(c, j)) ==
            Approx(std::norm(out.at(c, c)) / std::norm(f.at(c, c))).epsilon(1e-9));
    }
  }

  SUBCASE("filter and fiber commute in modulus") {
    const FilterSpec filt{Channel::idler, 5e12, 2e13};
    const auto ab = tpsa::apply_filter(tpsa::apply_fiber(f, FiberSpec{500.0}), filt);
    const auto ba = tpsa::apply_fiber(tpsa::apply_filter(f, filt), FiberSpec{500.0});
    double m = 0;
    for (size_t i = 0; i < ab.values.size(); ++i)
      m = std::max(m, std::abs(std::abs(ab.values[i]) - std::abs(ba.values[i])));
    CHECK(m < 1e-12);
  }
}
