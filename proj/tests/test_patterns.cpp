#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hybrid/optics.hpp"
#include "hybrid/patterns.hpp"
#include "hybrid/verify.hpp"
#include "oracles.hpp"

using namespace hybrid;
using std::numbers::pi;

namespace {

const SlitGeometry geom = SlitGeometry::standard();
const HybridState hmes(PolarizationProjection::left_circular());
const HybridState product(1.0, 0.0, 0.0);

}  // namespace

TEST_CASE("joint density examples") {
  const double k = geom.kappa();
  CHECK(p_cc(hmes, geom, pi / 2.0, 0.0) == doctest::Approx(k / 2.0).epsilon(1e-14));
  const double dark = pi * geom.z() / (geom.k() * geom.d());
  CHECK(std::abs(p_cc(hmes, geom, pi / 2.0, dark)) < 1e-12 * k);
  for (double x : {-2e-3, 0.0, 4e-4, 2.5e-3}) CHECK(std::abs(p_cc(product, geom, 0.0, x)) < 1e-14 * k);
}

TEST_CASE("joint density against the aperture-integral oracle") {
  const oracle::Geometry og;
  for (int i = 0; i < 40; ++i) {
    const HybridState s = random_hybrid_state(99, static_cast<std::uint64_t>(i));
    const auto psi = oracle::hybrid_amplitudes(s.alpha(), s.beta(), s.phi_p());
    const double theta = 0.37 * i;
    const double x = -5e-3 + 2.6e-4 * i;
    CHECK(p_cc(s, geom, theta, x) == doctest::Approx(oracle::joint_density(og, psi, theta, x)).epsilon(1e-8));
    CHECK(closed_form::p_cc(s, geom, theta, x) == doctest::Approx(p_cc(s, geom, theta, x)).epsilon(1e-12));
  }
}

TEST_CASE("one-photon spatial density") {
  for (double x : {-3e-3, -1e-3, 0.0, 7e-4, 2.2e-3}) {
    const double env = sinc(geom.envelope_constant() * x);
    CHECK(p_1s(hmes, geom, x) == doctest::Approx(geom.envelope_constant() / pi * env * env).epsilon(1e-13));
  }
  // Product state: full-contrast fringes with zeros at the dark fringes.
  CHECK(p_1s(product, geom, 0.0) == doctest::Approx(2.0 * geom.envelope_constant() / pi));
  CHECK(std::abs(p_1s(product, geom, geom.fringe_period() / 2.0)) < 1e-12);

  const oracle::Geometry og;
  for (const HybridState& s : {hmes, product, hes_from_xi(0.17)}) {
    const double c0 = geom.envelope_constant() / pi;
    CHECK(oracle::line_integral(og, [&](double x) { return p_1s(s, geom, x); }, c0) ==
          doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("one-photon polarization density") {
  CHECK(p_1p(hmes, 0.3) == doctest::Approx(1.0 / (2.0 * pi)));
  CHECK(std::abs(p_1p(product, 0.0)) < 1e-16);
  for (int i = 0; i < 10; ++i) {
    const HybridState s = random_hybrid_state(7, static_cast<std::uint64_t>(i));
    CHECK(simpson([&](double t) { return p_1p(s, t); }, 0.0, 2.0 * pi, 64) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("marginalizing the analyzer angle gives the one-photon pattern") {
  // The joint density is per unit angle over [0, 2pi); integrating it out
  // is pi times the sum over two orthogonal analyzer settings.
  for (int i = 0; i < 20; ++i) {
    const HybridState s = random_hybrid_state(17, static_cast<std::uint64_t>(i));
    for (double x : {-2.1e-3, -3e-4, 0.0, 1.4e-3}) {
      const double integral = simpson([&](double t) { return p_cc(s, geom, t, x); }, 0.0, 2.0 * pi, 64);
      CHECK(integral == doctest::Approx(p_1s(s, geom, x)).epsilon(1e-12));
      const double pair = p_cc(s, geom, 0.4, x) + p_cc(s, geom, 0.4 + pi / 2.0, x);
      CHECK(pi * pair == doctest::Approx(p_1s(s, geom, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("bucket detection closes on the polarization marginal") {
  const oracle::Geometry og;
  for (int i = 0; i < 3; ++i) {
    const HybridState s = random_hybrid_state(23, static_cast<std::uint64_t>(i));
    for (double theta : {0.0, 0.9, 2.0}) {
      const double c0 = geom.kappa() / 2.0 * (s.beta() * s.beta() * std::cos(theta) * std::cos(theta) +
                                               s.alpha() * s.alpha() * std::sin(theta) * std::sin(theta));
      const double slow = oracle::line_integral(og, [&](double x) { return p_cc(s, geom, theta, x); }, c0);
      CHECK(slow == doctest::Approx(p_1p(s, theta)).epsilon(1e-6));
      CHECK(p_cc_bucket(s, theta) == doctest::Approx(p_1p(s, theta)).epsilon(1e-14));
    }
  }
}

TEST_CASE("corrected joint density") {
  const double q = geom.kappa() / 4.0;
  const HybridState x10 = hes_from_xi(10.0 * pi / 180.0);
  const double c2 = x10.concurrence() * x10.concurrence();
  for (double x : {-1.7e-3, 0.0, 2.9e-4, 1.1e-3}) {
    const double env = sinc(geom.envelope_constant() * x);
    const double arg = 2.0 * geom.fringe_constant() * x;
    CHECK(p_cc_corrected(x10, geom, pi / 2.0, x) == doctest::Approx(q * env * env * (1.0 + c2 * std::cos(arg))));
    for (double t : {0.0, 0.8, 2.1}) {
      CHECK(p_cc_corrected(product, geom, t, x) == doctest::Approx(q * env * env).epsilon(1e-12));
    }
  }
  for (double t : {0.0, 0.5, 1.2, 3.0}) {
    CHECK(p_cc_corrected(x10, geom, t, 0.0) == doctest::Approx(q * (1.0 - c2 * std::cos(2.0 * t))).epsilon(1e-13));
  }
  for (int i = 0; i < 50; ++i) {
    const HybridState s = random_hybrid_state(31, static_cast<std::uint64_t>(i));
    for (double x : {-8e-4, 0.0, 2.3e-3}) {
      const double t = 0.21 * i;
      const double assembled = p_cc(s, geom, t, x) - p_1s(s, geom, x) * p_1p(s, t) +
                               q * sinc(geom.envelope_constant() * x) * sinc(geom.envelope_constant() * x);
      CHECK(p_cc_corrected(s, geom, t, x) == doctest::Approx(assembled).epsilon(1e-12));
      CHECK(closed_form::p_cc_corrected(s, geom, t, x) == doctest::Approx(assembled).epsilon(1e-11));
    }
  }
}
