#include "hybrid/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hybrid {
namespace {

using std::numbers::pi;

constexpr double kVanishing = 1e-14;
constexpr double kEnvelopeFloor = 1e-6;

// Offset-plus-sinusoid visibility R/M, clamped against rounding.
double contrast(double offset, double amplitude) { return std::min(amplitude / offset, 1.0); }

}  // namespace

std::string to_string(ScanKind kind) { return kind == ScanKind::Spatial ? "spatial" : "polarization"; }

VisibilityReport visibility_analytic(const HybridState& state, const SlitGeometry& geom, ScanKind kind,
                                     double fixed_setting, std::string state_id) {
  VisibilityReport r;
  r.scan_kind = kind;
  r.fixed_setting = fixed_setting;
  r.state_id = std::move(state_id);

  const double a2 = state.alpha() * state.alpha();
  const double b2 = state.beta() * state.beta();
  const double diff = a2 - b2;
  const double conc = state.concurrence();
  const double cphi = std::cos(state.phi_p());

  // Both joint patterns are (common factor) x [M + R cos(arg - delta)].
  double raw_offset = 0.0;
  double raw_amp = 0.0;
  double cor_amp = 0.0;
  if (kind == ScanKind::Spatial) {
    const double c2t = std::cos(2.0 * fixed_setting);
    const double s2t = std::sin(2.0 * fixed_setting);
    raw_offset = 1.0 - diff * c2t;
    raw_amp = std::hypot(diff - c2t, conc * s2t * cphi);
    cor_amp = std::hypot(conc * s2t * cphi, conc * conc * c2t);
  } else {
    const double arg = 2.0 * geom.fringe_constant() * fixed_setting;
    const double c2b = std::cos(arg);
    const double s2b = std::sin(arg);
    if (std::abs(sinc(geom.envelope_constant() * fixed_setting)) < kEnvelopeFloor) {
      r.defined = false;
      return r;
    }
    raw_offset = 1.0 + diff * c2b;
    raw_amp = std::hypot(diff + c2b, conc * s2b * cphi);
    cor_amp = std::hypot(conc * s2b * cphi, conc * conc * c2b);
  }

  if (raw_offset < kVanishing) {
    r.defined = false;
  } else {
    r.v_raw = contrast(raw_offset, raw_amp);
  }
  r.v_corrected = std::min(cor_amp, 1.0);
  return r;
}

V12Bounds v12_bounds(const HybridState& state) {
  const double c = state.concurrence();
  const bool attainable = std::abs(std::abs(std::cos(state.phi_p())) - 1.0) < 1e-12;
  return {c * c, c, attainable, pi / 4.0};
}

double complementarity_residual(double v12, double v1) { return v12 * v12 + v1 * v1 - 1.0; }

double one_photon_visibility(const HybridState& state) {
  return std::abs(state.alpha() * state.alpha() - state.beta() * state.beta());
}

BestSetting best_spatial_setting(const HybridState& state) {
  const double c = state.concurrence();
  const double diag = c * std::abs(std::cos(state.phi_p()));
  if (diag >= c * c) return {pi / 4.0, diag};
  return {pi / 2.0, c * c};
}

BestSetting best_polarization_setting(const HybridState& state, const SlitGeometry& geom) {
  const double c = state.concurrence();
  const double diag = c * std::abs(std::cos(state.phi_p()));
  if (diag >= c * c) return {pi / (4.0 * geom.fringe_constant()), diag};
  return {0.0, c * c};
}

}  // namespace hybrid
