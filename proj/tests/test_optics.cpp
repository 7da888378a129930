#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hybrid/optics.hpp"
#include "oracles.hpp"

using namespace hybrid;
using std::numbers::pi;

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(pi)) < 1e-16);
  CHECK(sinc(pi / 2.0) == doctest::Approx(2.0 / pi).epsilon(1e-15));
  CHECK(sinc(0.636620) == doctest::Approx(std::sin(0.636620) / 0.636620));
  CHECK(sinc(1e-9) == doctest::Approx(1.0));
  CHECK(sinc(-2.0) == sinc(2.0));
}

TEST_CASE("default geometry constants") {
  const SlitGeometry g = SlitGeometry::standard();
  CHECK(g.fringe_period() == doctest::Approx(1.179e-3).epsilon(1e-3));
  CHECK(g.envelope_null() == doctest::Approx(3.686e-3).epsilon(1e-3));
  CHECK(g.envelope_constant() * g.envelope_null() == doctest::Approx(pi));
  CHECK(2.0 * g.fringe_constant() * g.fringe_period() == doctest::Approx(2.0 * pi));
  CHECK(g.kappa() == doctest::Approx(2.0 * g.envelope_constant() / (pi * pi)));

  CHECK_THROWS_AS(SlitGeometry(40e-6, 60e-6, 702e-9, 0.42), std::invalid_argument);
  CHECK_THROWS_AS(SlitGeometry(-1e-6, 250e-6, 702e-9, 0.42), std::invalid_argument);
  CHECK_THROWS_AS(SlitGeometry(40e-6, 250e-6, 0.0, 0.42), std::invalid_argument);
}

TEST_CASE("slit kernel") {
  const SlitGeometry g = SlitGeometry::standard();
  CHECK(std::abs(slit_kernel(g, 0.0, Slit::Upper) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(slit_kernel(g, 0.0, Slit::Lower) - Complex(1.0, 0.0)) < 1e-15);
  const double x = pi / (2.0 * g.fringe_constant());
  const Complex expected = -kJ * sinc(g.envelope_constant() * x);
  CHECK(std::abs(slit_kernel(g, x, Slit::Upper) - expected) < 1e-15);

  // Against direct integration of the aperture.
  const oracle::Geometry og;
  for (double xx : {-4.1e-3, -1.3e-3, -2e-4, 0.0, 3.3e-4, 1.7e-3, 5.2e-3}) {
    CHECK(std::abs(slit_kernel(g, xx, Slit::Upper)) == doctest::Approx(std::abs(slit_kernel(g, xx, Slit::Lower))));
    CHECK(std::abs(slit_kernel(g, xx, Slit::Upper) - oracle::slit_field(og, og.d / 2.0, xx)) < 1e-10);
    CHECK(std::abs(slit_kernel(g, xx, Slit::Lower) - oracle::slit_field(og, -og.d / 2.0, xx)) < 1e-10);
  }
}

TEST_CASE("mode amplitudes") {
  const SlitGeometry g = SlitGeometry::standard();
  CHECK(std::abs(mode_amplitude(g, 0.0, SpatialMode::A)) == 0.0);
  const double peak = std::norm(mode_amplitude(g, 0.0, SpatialMode::F));
  CHECK(peak == doctest::Approx(2.0 * g.k() * g.a() / (pi * g.z())).epsilon(1e-14));
  CHECK(peak == doctest::Approx(542.6).epsilon(2e-4));
  CHECK(std::abs(mode_amplitude(g, g.envelope_null(), SpatialMode::F)) < 1e-12);

  const oracle::Geometry og;
  for (double x = -6e-3; x <= 6e-3; x += 7.3e-4) {
    const auto ref = oracle::modes(og, x);
    CHECK(std::abs(mode_amplitude(g, x, SpatialMode::F) - ref[0]) < 1e-8);
    CHECK(std::abs(mode_amplitude(g, x, SpatialMode::A) - ref[1]) < 1e-8);
  }
}

TEST_CASE("simpson") {
  CHECK(simpson([](double x) { return x * x * x; }, 0.0, 2.0, 2) == doctest::Approx(4.0));
  CHECK(simpson([](double x) { return std::sin(x); }, 0.0, pi, 200) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS(simpson([](double) { return 1.0; }, 0.0, 1.0, 3), std::invalid_argument);
}

TEST_CASE("detection-line integral against a long brute-force sum") {
  const SlitGeometry g = SlitGeometry::standard();
  const oracle::Geometry og;
  const double A = g.envelope_constant();
  const double B = g.fringe_constant();
  struct Case {
    double c0, c1, c2;
  };
  for (const Case c : {Case{1.0, 0.0, 0.0}, Case{1.0, 0.7, 0.0}, Case{0.4, -0.3, 0.25}, Case{2.0, 0.0, -1.9}}) {
    auto f = [&](double x) {
      const double s = sinc(A * x);
      return s * s * (c.c0 + c.c1 * std::cos(2.0 * B * x) + c.c2 * std::sin(2.0 * B * x));
    };
    const double fast = detector_line_integral(g, f);
    const double slow = oracle::line_integral(og, f, c.c0);
    // Exact: c0 pi / A; the fringe terms vanish because 2B > 2A.
    CHECK(fast == doctest::Approx(c.c0 * pi / A).epsilon(1e-9));
    CHECK(slow == doctest::Approx(c.c0 * pi / A).epsilon(1e-7));
  }
}
