#include "hybrid/patterns.hpp"

#include <cmath>
#include <numbers>

namespace hybrid {
namespace {

using std::numbers::pi;

Eigen::Vector2cd analyzer_ket(double theta_s) {
  Eigen::Vector2cd ket;
  ket(basis::kH) = std::cos(theta_s);
  ket(basis::kV) = std::sin(theta_s);
  return ket;
}

double sinc2(const SlitGeometry& geom, double x) {
  const double s = sinc(geom.envelope_constant() * x);
  return s * s;
}

}  // namespace

double p_cc(const HybridState& state, const SlitGeometry& geom, double theta_s, double x) {
  const auto& v = state.vector();
  const Complex uf = mode_amplitude(geom, x, SpatialMode::F);
  const Complex ua = mode_amplitude(geom, x, SpatialMode::A);
  const double c = std::cos(theta_s);
  const double s = std::sin(theta_s);
  using namespace basis;
  const Complex amp = c * (v.amplitude({kH, kF}) * uf + v.amplitude({kH, kA}) * ua) +
                      s * (v.amplitude({kV, kF}) * uf + v.amplitude({kV, kA}) * ua);
  return std::norm(amp) / pi;
}

double p_1s(const HybridState& state, const SlitGeometry& geom, double x) {
  const Qubit keep[] = {Qubit::IdlerPath};
  const DensityOp rho = partial_trace(state.vector(), keep);
  Eigen::Vector2cd u;
  u(basis::kF) = mode_amplitude(geom, x, SpatialMode::F);
  u(basis::kA) = mode_amplitude(geom, x, SpatialMode::A);
  // Detection amplitude for mode m is u_m(x); density is sum rho_mn u_m conj(u_n).
  return (u.transpose() * rho.matrix() * u.conjugate()).value().real();
}

double p_1p(const HybridState& state, double theta_s) {
  const Qubit keep[] = {Qubit::SignalPol};
  const DensityOp rho = partial_trace(state.vector(), keep);
  const Eigen::Vector2cd k = analyzer_ket(theta_s);
  return (k.adjoint() * rho.matrix() * k).value().real() / pi;
}

double p_cc_corrected(const HybridState& state, const SlitGeometry& geom, double theta_s, double x) {
  return p_cc(state, geom, theta_s, x) - p_1s(state, geom, x) * p_1p(state, theta_s) +
         0.25 * geom.kappa() * sinc2(geom, x);
}

double p_cc_bucket(const HybridState& state, double theta_s) {
  const QubitRegisterState rest = project_qubit(state.vector(), Qubit::SignalPol, analyzer_ket(theta_s));
  return rest.norm_squared() / pi;
}

namespace closed_form {

double p_cc(const HybridState& state, const SlitGeometry& geom, double theta_s, double x) {
  const double a = state.alpha();
  const double b = state.beta();
  const double bx = geom.fringe_constant() * x;
  const double ct = std::cos(theta_s);
  const double st = std::sin(theta_s);
  const double sb = std::sin(bx);
  const double cb = std::cos(bx);
  return geom.kappa() * sinc2(geom, x) *
         (b * b * ct * ct * sb * sb + a * a * st * st * cb * cb +
          0.5 * a * b * std::sin(2.0 * theta_s) * std::sin(2.0 * bx) * std::cos(state.phi_p()));
}

double p_1s(const HybridState& state, const SlitGeometry& geom, double x) {
  const double a = state.alpha();
  const double b = state.beta();
  return geom.envelope_constant() / pi * sinc2(geom, x) *
         (1.0 + (a * a - b * b) * std::cos(2.0 * geom.fringe_constant() * x));
}

double p_1p(const HybridState& state, double theta_s) {
  const double a = state.alpha();
  const double b = state.beta();
  return (1.0 + (b * b - a * a) * std::cos(2.0 * theta_s)) / (2.0 * pi);
}

double p_cc_corrected(const HybridState& state, const SlitGeometry& geom, double theta_s, double x) {
  const double c = state.concurrence();
  const double bx2 = 2.0 * geom.fringe_constant() * x;
  return 0.25 * geom.kappa() * sinc2(geom, x) *
         (1.0 + c * std::sin(2.0 * theta_s) * std::sin(bx2) * std::cos(state.phi_p()) -
          c * c * std::cos(2.0 * theta_s) * std::cos(bx2));
}

}  // namespace closed_form

}  // namespace hybrid
