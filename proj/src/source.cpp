#include "hybrid/source.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hybrid {
namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kCanonicalTol = 1e-10;

void check_amplitudes(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < 0.0 || beta < 0.0) {
    throw std::invalid_argument("alpha and beta must be finite and non-negative");
  }
  if (std::abs(alpha * alpha + beta * beta - 1.0) > kUnitTol) {
    throw std::invalid_argument("alpha^2 + beta^2 must equal 1");
  }
}

Eigen::VectorXcd canonical_amplitudes(double alpha, double beta, double phi_p) {
  // Ordering (HF, HA, VF, VA) over (signal-pol, idler-path).
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(1) = kJ * beta * std::exp(-kJ * phi_p);
  v(2) = alpha;
  return v;
}

}  // namespace

PolarizationProjection::PolarizationProjection(double a, double b, double phi)
    : alpha(a), beta(b), phi_p(phi) {
  check_amplitudes(alpha, beta);
  if (!std::isfinite(phi_p)) throw std::invalid_argument("phi_p must be finite");
}

PolarizationProjection PolarizationProjection::left_circular() {
  return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), std::numbers::pi / 2.0};
}

PolarizationProjection PolarizationProjection::linear(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  // Opposite signs are a relative phase of pi; equal signs a global phase.
  const double phi = (c < 0.0) != (s < 0.0) && c != 0.0 && s != 0.0 ? std::numbers::pi : 0.0;
  const double a = std::abs(c);
  const double b = std::abs(s);
  const double n = std::hypot(a, b);
  return {a / n, b / n, phi};
}

HybridState::HybridState(double alpha, double beta, double phi_p)
    : alpha_(alpha),
      beta_(beta),
      phi_p_(phi_p),
      vector_({Qubit::SignalPol, Qubit::IdlerPath}, canonical_amplitudes(alpha, beta, phi_p)) {
  check_amplitudes(alpha, beta);
  if (!std::isfinite(phi_p)) throw std::invalid_argument("phi_p must be finite");
}

QubitRegisterState bell_psi(double phi_pol) {
  using namespace basis;
  QubitRegisterState hv = tensor(QubitRegisterState::basis_state(Qubit::SignalPol, kH),
                                 QubitRegisterState::basis_state(Qubit::IdlerPol, kV));
  QubitRegisterState vh = tensor(QubitRegisterState::basis_state(Qubit::SignalPol, kV),
                                 QubitRegisterState::basis_state(Qubit::IdlerPol, kH));
  Eigen::VectorXcd amps = (hv.amps() + std::exp(kJ * phi_pol) * vh.amps()) / std::sqrt(2.0);
  return {hv.labels(), amps};
}

QubitRegisterState attach_idler_spatial(const QubitRegisterState& state, double phi_spa) {
  // (|+> + e^{j phi}|->)/sqrt2 with |+-> = (|F> +- |A>)/sqrt2.
  const Complex e = std::exp(kJ * phi_spa);
  Eigen::VectorXcd path(2);
  path(basis::kF) = (1.0 + e) / 2.0;
  path(basis::kA) = (1.0 - e) / 2.0;
  return tensor(state, QubitRegisterState({Qubit::IdlerPath}, path));
}

QubitRegisterState apply_bds(const QubitRegisterState& state) {
  const int n = state.num_qubits();
  const int pol = state.position(Qubit::IdlerPol);
  const int path = state.position(Qubit::IdlerPath);
  const std::size_t pol_mask = std::size_t{1} << (n - 1 - pol);
  const std::size_t path_mask = std::size_t{1} << (n - 1 - path);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amps().size());
  for (Eigen::Index i = 0; i < state.amps().size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (idx & pol_mask) {
      out(static_cast<Eigen::Index>(idx ^ path_mask)) += kJ * state.amps()(i);
    } else {
      out(i) += state.amps()(i);
    }
  }
  return {state.labels(), out};
}

ProjectionOutcome project_idler_polarization(const QubitRegisterState& state,
                                             const PolarizationProjection& proj) {
  Eigen::Vector2cd ket;
  ket(basis::kH) = proj.alpha;
  ket(basis::kV) = proj.beta * std::exp(kJ * proj.phi_p);
  const QubitRegisterState projected = project_qubit(state, Qubit::IdlerPol, ket);
  const double prob = projected.norm_squared();
  if (prob < 1e-14) throw std::invalid_argument("idler polarization projection annihilates the state");
  if (projected.labels() != std::vector<Qubit>{Qubit::SignalPol, Qubit::IdlerPath}) {
    throw std::invalid_argument("expected a (signal-pol, idler-pol, idler-path) register");
  }
  HybridState hes(proj);
  const auto unit = projected.normalized();
  if ((unit.amps() - hes.vector().amps()).cwiseAbs().maxCoeff() > kCanonicalTol) {
    throw std::invalid_argument("projected state is not of canonical hybrid form");
  }
  return {hes, prob};
}

ProjectionOutcome prepare_hybrid_state(const PolarizationProjection& proj) {
  return project_idler_polarization(apply_bds(attach_idler_spatial(bell_psi(0.0), 0.0)), proj);
}

HybridState hes_from_xi(double xi) {
  return HybridState(PolarizationProjection::linear(2.0 * xi));
}

CvpTriple cvp_triple(const HybridState& state) {
  const Qubit keep[] = {Qubit::IdlerPath};
  const DensityOp rho = partial_trace(state.vector(), keep);
  const Eigen::Matrix2cd slit = to_slit_basis(rho.matrix());
  return {concurrence_pure(state.vector()), 2.0 * std::abs(slit(0, 1)),
          std::abs(slit(0, 0).real() - slit(1, 1).real())};
}

}  // namespace hybrid
