#pragma once

#include <string>

#include "hybrid/optics.hpp"
#include "hybrid/source.hpp"

namespace hybrid {

enum class ScanKind { Spatial, Polarization };

std::string to_string(ScanKind kind);

/// Visibilities of one scan. `fixed_setting` is theta_s (rad) for spatial
/// scans and the detector position x (m) for polarization scans.
struct VisibilityReport {
  double v_raw = 0.0;
  double v_corrected = 0.0;
  ScanKind scan_kind = ScanKind::Spatial;
  double fixed_setting = 0.0;
  std::string state_id;
  double uncertainty = 0.0;
  /// False when the scanned pattern vanishes identically (raw or corrected
  /// visibility then reported as 0).
  bool defined = true;
};

/// Raw and corrected visibilities of the joint pattern from its exact
/// extrema. Spatial visibilities are taken on the envelope-normalized fringe.
VisibilityReport visibility_analytic(const HybridState& state, const SlitGeometry& geom, ScanKind kind,
                                     double fixed_setting, std::string state_id = {});

struct V12Bounds {
  double low;
  double high;
  /// The upper bound C is reached by some theta_s only if cos phi_p = +-1.
  bool high_attainable;
  /// theta_s that attains `high` (pi/4) when attainable.
  double maximizing_theta;
};

/// (C^2, C).
V12Bounds v12_bounds(const HybridState& state);

/// v12^2 + v1^2 - 1.
double complementarity_residual(double v12, double v1);

/// |alpha^2 - beta^2| = sqrt(1 - C^2).
double one_photon_visibility(const HybridState& state);

struct BestSetting {
  double setting;
  double v_corrected;
};

/// theta_s maximizing the corrected spatial visibility (analyzer phase 0):
/// pi/4 when C|cos phi_p| >= C^2, else pi/2.
BestSetting best_spatial_setting(const HybridState& state);

/// Detector position maximizing the corrected polarization visibility:
/// 2Bx = pi/2 when C|cos phi_p| >= C^2, else x = 0.
BestSetting best_polarization_setting(const HybridState& state, const SlitGeometry& geom);

}  // namespace hybrid
