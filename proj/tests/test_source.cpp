#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hybrid/source.hpp"
#include "oracles.hpp"

using namespace hybrid;
using std::numbers::pi;

namespace {

const double s2 = 1.0 / std::sqrt(2.0);
double deg(double d) { return d * pi / 180.0; }

}  // namespace

TEST_CASE("polarization Bell state") {
  const auto b0 = bell_psi(0.0);
  const double expected0[] = {0.0, s2, s2, 0.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(b0.amps()(i) - expected0[i]) < 1e-15);
  const auto bpi = bell_psi(pi);
  CHECK(std::abs(bpi.amps()(2) + s2) < 1e-15);
  CHECK(concurrence_pure(b0) == doctest::Approx(1.0));
}

TEST_CASE("idler spatial factor") {
  const auto s0 = attach_idler_spatial(bell_psi(0.0), 0.0);
  CHECK(s0.labels() == std::vector<Qubit>{Qubit::SignalPol, Qubit::IdlerPol, Qubit::IdlerPath});
  CHECK(std::abs(s0.amplitude({basis::kH, basis::kV, basis::kF}) - s2) < 1e-15);
  CHECK(std::abs(s0.amplitude({basis::kH, basis::kV, basis::kA})) < 1e-15);

  const auto spi = attach_idler_spatial(bell_psi(0.0), pi);
  CHECK(std::abs(spi.amplitude({basis::kH, basis::kV, basis::kF})) < 1e-15);
  CHECK(std::abs(spi.amplitude({basis::kH, basis::kV, basis::kA}) - s2) < 1e-15);

  // Generic phases give four nonzero amplitudes of magnitude 1/2 for pi/2.
  const auto half = attach_idler_spatial(bell_psi(0.0), pi / 2.0);
  int nonzero = 0;
  for (int i = 0; i < 8; ++i) {
    if (std::abs(half.amps()(i)) > 1e-12) {
      ++nonzero;
      CHECK(std::abs(half.amps()(i)) == doctest::Approx(0.5));
    }
  }
  CHECK(nonzero == 4);
}

TEST_CASE("birefringent double slit gives the GHZ-type state") {
  const auto ghz = apply_bds(attach_idler_spatial(bell_psi(0.0), 0.0));
  // (|V>_s|H>_i|F>_i + j|H>_s|V>_i|A>_i)/sqrt2
  CHECK(std::abs(ghz.amplitude({basis::kV, basis::kH, basis::kF}) - s2) < 1e-15);
  CHECK(std::abs(ghz.amplitude({basis::kH, basis::kV, basis::kA}) - kJ * s2) < 1e-15);
  CHECK(ghz.norm_squared() == doctest::Approx(1.0));

  // Control H leaves the path alone; applying twice multiplies V by j^2.
  std::mt19937_64 gen(3);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(8);
  for (int i = 0; i < 8; ++i) v(i) = {g(gen), g(gen)};
  const QubitRegisterState psi({Qubit::SignalPol, Qubit::IdlerPol, Qubit::IdlerPath}, v);
  const auto once = apply_bds(psi);
  const auto twice = apply_bds(once);
  for (int s = 0; s < 2; ++s) {
    for (int path = 0; path < 2; ++path) {
      CHECK(std::abs(once.amplitude({s, basis::kH, path}) - psi.amplitude({s, basis::kH, path})) < 1e-15);
      CHECK(std::abs(twice.amplitude({s, basis::kV, path}) + psi.amplitude({s, basis::kV, path})) < 1e-14);
      CHECK(std::abs(once.amplitude({s, basis::kV, 1 - path}) - kJ * psi.amplitude({s, basis::kV, path})) < 1e-14);
    }
  }
}

TEST_CASE("idler projection prepares the hybrid states") {
  const auto lc = prepare_hybrid_state(PolarizationProjection::left_circular());
  CHECK(lc.success_probability == doctest::Approx(0.5));
  // (|VF> + |HA>)/sqrt2
  const auto& v = lc.state.vector();
  CHECK(std::abs(v.amplitude({basis::kV, basis::kF}) - s2) < 1e-15);
  CHECK(std::abs(v.amplitude({basis::kH, basis::kA}) - s2) < 1e-15);

  const auto prod = prepare_hybrid_state(PolarizationProjection(1.0, 0.0, 0.0));
  CHECK(std::abs(prod.state.vector().amplitude({basis::kV, basis::kF}) - 1.0) < 1e-15);
  CHECK(prod.state.concurrence() == 0.0);

  // Random projections: success 1/2 and the hand-written canonical state.
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> t(0.0, pi / 2.0);
  std::uniform_real_distribution<double> ph(-pi, pi);
  for (int trial = 0; trial < 500; ++trial) {
    const double th = t(gen);
    const PolarizationProjection p(std::cos(th), std::sin(th), ph(gen));
    const auto out = prepare_hybrid_state(p);
    CHECK(out.success_probability == doctest::Approx(0.5).epsilon(1e-12));
    const auto ref = oracle::hybrid_amplitudes(p.alpha, p.beta, p.phi_p);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(out.state.vector().amps()(i) - ref[static_cast<std::size_t>(i)]) < 1e-12);
  }
}

TEST_CASE("projection rejects foreign or annihilated inputs") {
  const auto ghz = apply_bds(attach_idler_spatial(bell_psi(0.0), 0.0));
  CHECK_THROWS_AS(project_idler_polarization(bell_psi(0.0), PolarizationProjection(1.0, 0.0, 0.0)),
                  std::invalid_argument);
  const auto skewed = apply_bds(attach_idler_spatial(bell_psi(0.0), 0.4));
  CHECK_THROWS_AS(project_idler_polarization(skewed, PolarizationProjection(s2, s2, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(PolarizationProjection(0.6, 0.6, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PolarizationProjection(-0.6, 0.8, 0.0), std::invalid_argument);
  CHECK_NOTHROW(project_idler_polarization(ghz, PolarizationProjection(0.6, 0.8, 1.0)));
}

TEST_CASE("linear-projection state family") {
  CHECK(hes_from_xi(0.0).concurrence() == 0.0);
  CHECK(hes_from_xi(deg(10.0)).concurrence() == doctest::Approx(std::sin(deg(40.0))).epsilon(1e-14));
  CHECK(hes_from_xi(deg(10.0)).concurrence() == doctest::Approx(0.642788).epsilon(1e-6));
  const auto x5 = cvp_triple(hes_from_xi(deg(5.0)));
  CHECK(x5.visibility == doctest::Approx(0.939693).epsilon(1e-6));
  CHECK(hes_from_xi(deg(22.5)).concurrence() == doctest::Approx(1.0));
  // Beyond 45 deg the cosine turns negative and the sign lands in phi_p.
  const auto far = hes_from_xi(deg(60.0));
  CHECK(far.alpha() >= 0.0);
  CHECK(far.phi_p() == doctest::Approx(pi));
}

TEST_CASE("concurrence, visibility, predictability") {
  const auto hmes = cvp_triple(HybridState(PolarizationProjection::left_circular()));
  CHECK(hmes.concurrence == doctest::Approx(1.0));
  CHECK(std::abs(hmes.visibility) < 1e-15);
  CHECK(std::abs(hmes.predictability) < 1e-15);

  const auto prod = cvp_triple(hes_from_xi(0.0));
  CHECK(prod.concurrence == 0.0);
  CHECK(prod.visibility == doctest::Approx(1.0));
  CHECK(std::abs(prod.predictability) < 1e-15);

  const auto x10 = cvp_triple(hes_from_xi(deg(10.0)));
  CHECK(x10.concurrence == doctest::Approx(0.642788).epsilon(1e-6));
  CHECK(x10.visibility == doctest::Approx(0.766044).epsilon(1e-6));
  CHECK(std::abs(x10.predictability) < 1e-15);
}
