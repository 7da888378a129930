#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hybrid/hilbert.hpp"

using namespace hybrid;

namespace {

const double s2 = 1.0 / std::sqrt(2.0);

QubitRegisterState ket(Qubit q, Complex c0, Complex c1) {
  Eigen::VectorXcd v(2);
  v << c0, c1;
  return {{q}, v};
}

Eigen::VectorXcd random_amps(std::mt19937_64& gen, int n) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = {g(gen), g(gen)};
  return v / v.norm();
}

// Reduced state of a 3-qubit vector on qubits (i, j) by explicit index sums.
Eigen::Matrix4cd reduce_pair(const Eigen::VectorXcd& psi, int qi, int qj) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  const int other = 3 - qi - qj;
  auto bit = [](int idx, int q) { return (idx >> (2 - q)) & 1; };
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      if (bit(r, other) != bit(c, other)) continue;
      rho(2 * bit(r, qi) + bit(r, qj), 2 * bit(c, qi) + bit(c, qj)) += psi(r) * std::conj(psi(c));
    }
  }
  return rho;
}

}  // namespace

TEST_CASE("tensor of basis kets") {
  const auto s = tensor(QubitRegisterState::basis_state(Qubit::SignalPol, basis::kH),
                        QubitRegisterState::basis_state(Qubit::IdlerPath, basis::kF));
  CHECK(s.amps().size() == 4);
  CHECK(std::abs(s.amplitude({basis::kH, basis::kF}) - 1.0) < 1e-15);
  CHECK(s.amps().squaredNorm() == doctest::Approx(1.0));
}

TEST_CASE("tensor distributes over superpositions") {
  const auto s = tensor(ket(Qubit::SignalPol, s2, s2), QubitRegisterState::basis_state(Qubit::IdlerPath, basis::kF));
  const Complex expected[] = {s2, 0.0, s2, 0.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(s.amps()(i) - expected[i]) < 1e-15);
}

TEST_CASE("tensor rejects repeated labels and oversized registers") {
  const auto h = QubitRegisterState::basis_state(Qubit::SignalPol, basis::kH);
  CHECK_THROWS_AS(tensor(h, h), std::invalid_argument);
  CHECK_THROWS_AS(QubitRegisterState({Qubit::SignalPol}, Eigen::VectorXcd::Zero(4)), std::invalid_argument);
  CHECK_THROWS_AS(QubitRegisterState::basis_state(Qubit::SignalPol, 2), std::invalid_argument);
}

TEST_CASE("partial trace examples") {
  Eigen::VectorXcd hmes(4);
  hmes << 0.0, s2, s2, 0.0;  // (|HA> + |VF>)/sqrt2
  const QubitRegisterState psi({Qubit::SignalPol, Qubit::IdlerPath}, hmes);
  const Qubit path[] = {Qubit::IdlerPath};
  const Qubit pol[] = {Qubit::SignalPol};

  const DensityOp rho_path = partial_trace(psi, path);
  CHECK((rho_path.matrix() - 0.5 * Eigen::Matrix2cd::Identity()).norm() < 1e-15);
  CHECK(purity(rho_path) == doctest::Approx(0.5).epsilon(1e-15));

  Eigen::VectorXcd prod(4);
  prod << 0.0, 0.0, 1.0, 0.0;  // |V>|F>
  const DensityOp rho_v = partial_trace(QubitRegisterState({Qubit::SignalPol, Qubit::IdlerPath}, prod), pol);
  CHECK(std::abs(rho_v.matrix()(1, 1) - 1.0) < 1e-15);
  CHECK(purity(rho_v) == doctest::Approx(1.0));

  const double al = std::cos(0.3);
  const double be = std::sin(0.3);
  Eigen::VectorXcd hes(4);
  hes << 0.0, kJ * be * std::exp(-kJ * 0.7), al, 0.0;
  const DensityOp rho_s = partial_trace(QubitRegisterState({Qubit::SignalPol, Qubit::IdlerPath}, hes), pol);
  CHECK(std::abs(rho_s.matrix()(0, 0) - be * be) < 1e-15);
  CHECK(std::abs(rho_s.matrix()(1, 1) - al * al) < 1e-15);
  CHECK(std::abs(rho_s.matrix()(0, 1)) < 1e-15);
}

TEST_CASE("partial trace of random three-qubit states matches index sums") {
  std::mt19937_64 gen(11);
  const std::vector<Qubit> labels = {Qubit::SignalPol, Qubit::IdlerPol, Qubit::IdlerPath};
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXcd v = random_amps(gen, 8);
    const QubitRegisterState psi(labels, v);
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      const Qubit keep[] = {labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]};
      const DensityOp rho = partial_trace(psi, keep);
      CHECK((rho.matrix() - reduce_pair(v, i, j)).norm() < 1e-13);
      CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-13);
      CHECK(rho.eigenvalues().minCoeff() > -1e-12);
      // Tracing a further qubit from the pair equals tracing it from the start.
      const Qubit single[] = {keep[0]};
      CHECK((partial_trace(rho, single).matrix() - partial_trace(psi, single).matrix()).norm() < 1e-13);
    }
  }
}

TEST_CASE("concurrence") {
  Eigen::VectorXcd hmes(4);
  hmes << 0.0, s2, s2, 0.0;
  CHECK(concurrence_pure(QubitRegisterState({Qubit::SignalPol, Qubit::IdlerPath}, hmes)) == doctest::Approx(1.0));
  Eigen::VectorXcd prod(4);
  prod << 0.0, 0.0, 1.0, 0.0;
  CHECK(concurrence_pure(QubitRegisterState({Qubit::SignalPol, Qubit::IdlerPath}, prod)) == 0.0);
  const double c20 = std::cos(20.0 * std::numbers::pi / 180.0);
  const double s20 = std::sin(20.0 * std::numbers::pi / 180.0);
  Eigen::VectorXcd hes(4);
  hes << 0.0, kJ * s20, c20, 0.0;
  CHECK(concurrence_pure(QubitRegisterState({Qubit::SignalPol, Qubit::IdlerPath}, hes)) ==
        doctest::Approx(0.642788).epsilon(1e-6));

  // Pure two-qubit states: C^2 = 2 (1 - Tr rho_A^2).
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const QubitRegisterState psi({Qubit::SignalPol, Qubit::IdlerPath}, random_amps(gen, 4));
    const Qubit pol[] = {Qubit::SignalPol};
    const double c = concurrence_pure(psi);
    CHECK(c * c == doctest::Approx(2.0 * (1.0 - purity(partial_trace(psi, pol)))).epsilon(1e-12));
  }

  const QubitRegisterState unnormalized({Qubit::SignalPol, Qubit::IdlerPath}, 2.0 * hmes);
  CHECK_THROWS_AS(concurrence_pure(unnormalized), std::invalid_argument);
}

TEST_CASE("fidelity and projection") {
  Eigen::VectorXcd bell(4);
  bell << 0.0, s2, s2, 0.0;
  const QubitRegisterState psi({Qubit::SignalPol, Qubit::IdlerPol}, bell);
  CHECK(fidelity_pure(psi, psi) == doctest::Approx(1.0));

  Eigen::Vector2cd h;
  h << 1.0, 0.0;
  const QubitRegisterState rest = project_qubit(psi, Qubit::SignalPol, h);
  CHECK(rest.labels() == std::vector<Qubit>{Qubit::IdlerPol});
  CHECK(rest.norm_squared() == doctest::Approx(0.5));
  CHECK(std::abs(rest.amps()(1) - s2) < 1e-15);
}

TEST_CASE("density operator validation") {
  Eigen::Matrix2cd bad_trace = Eigen::Matrix2cd::Identity();
  CHECK_THROWS_AS(DensityOp({Qubit::IdlerPath}, bad_trace), std::invalid_argument);
  Eigen::Matrix2cd non_hermitian;
  non_hermitian << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS(DensityOp({Qubit::IdlerPath}, non_hermitian), std::invalid_argument);
  Eigen::Matrix2cd negative;
  negative << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityOp({Qubit::IdlerPath}, negative), std::invalid_argument);
}

TEST_CASE("slit basis change") {
  // |F> = (|+> + |->)/sqrt2 has full coherence between the slits.
  Eigen::Matrix2cd f = Eigen::Matrix2cd::Zero();
  f(0, 0) = 1.0;
  const Eigen::Matrix2cd s = to_slit_basis(f);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) CHECK(std::abs(s(r, c) - 0.5) < 1e-15);
  }
  CHECK((to_slit_basis(to_slit_basis(f)) - f).norm() < 1e-15);
}
