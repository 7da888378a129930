#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hybrid/fit.hpp"
#include "hybrid/scan.hpp"
#include "hybrid/source.hpp"

namespace hybrid {

struct CorrectedCurve {
  ScanKind kind = ScanKind::Spatial;
  double fixed_setting = 0.0;
  std::vector<double> settings;
  std::vector<double> values;
  std::vector<double> sigmas;
};

/// Corrected joint density assembled from measured curves: the two-photon
/// curve is fitted and rescaled so that its integral over the scanned
/// variable equals the fitted one-photon marginal of the other variable,
/// then p_cc - p_1s p_1p + (kappa/4) sinc^2(Ax) is formed point by point with
/// the one-photon densities taken from their fits. Sigmas carry the
/// rescaled sqrt(count) errors of the two-photon curve.
CorrectedCurve corrected_curve_from_data(const CountCurve& pcc, const FitResult& p1s_fit, const FitResult& p1p_fit,
                                         const SlitGeometry& geom, Observable observable = Observable::Counts);

FitResult fit_corrected(const CorrectedCurve& curve, const SlitGeometry& geom);

/// Normalized one-photon densities described by a fit of the matching
/// one-photon curve.
double fitted_p1s(const FitResult& p1s_fit, const SlitGeometry& geom, double x);
double fitted_p1p(const FitResult& p1p_fit, double theta_s);

struct NamedState {
  std::string id;
  HybridState state;
};

/// Left-circular HMES and the linear-projection states xi = 10, 5, 0 deg.
std::vector<NamedState> standard_states();

/// Named states for a list of xi values (rad) and explicit projections.
std::vector<NamedState> make_states(const std::vector<double>& xis,
                                    const std::vector<PolarizationProjection>& projections);

struct ExperimentOptions {
  double counts_per_curve = 1e4;
  std::uint64_t seed = 1;
  /// Idler detector slit for the point-like curves; 0 samples points.
  double aperture_width = 0.0;
  int spatial_steps = 61;
  double spatial_half_range = 3e-3;
  int polarization_steps = 37;
  unsigned threads = 1;
};

struct CurveRecord {
  std::string name;
  CountCurve curve;
  FitResult fit;
};

struct CorrectedRecord {
  std::string name;
  CorrectedCurve curve;
  FitResult fit;
};

/// One panel of the two-photon vs one-photon comparison.
struct Pairing {
  std::string panel;
  ScanKind one_photon;
  ScanKind two_photon;
  double v1;
  double v12;
  double v12_max_setting;
  double residual_standard_setting;
  double residual_max_setting;
};

struct StateReport {
  std::string id;
  double alpha = 0.0;
  double beta = 0.0;
  double phi_p = 0.0;
  double concurrence = 0.0;
  double best_theta = 0.0;
  double best_x = 0.0;

  /// one_photon_spatial, two_photon_spatial, one_photon_polarization,
  /// two_photon_polarization at the standard settings (theta_s = pi/2, x = 0).
  std::vector<CurveRecord> curves;
  /// two_photon_spatial and two_photon_polarization at the best settings.
  std::vector<CurveRecord> max_setting_curves;
  /// corrected_spatial, corrected_polarization, and their _max variants.
  std::vector<CorrectedRecord> corrected;

  double v1_spatial = 0.0;
  double v1_polarization = 0.0;
  double v12_raw_spatial = 0.0;
  double v12_raw_polarization = 0.0;
  double v12_spatial = 0.0;
  double v12_polarization = 0.0;
  double v12_spatial_max = 0.0;
  double v12_polarization_max = 0.0;

  std::vector<Pairing> pairings;

  /// The state's single (V1, V12) point: each visibility averaged over its
  /// spatial and polarization estimates.
  double pair_v1 = 0.0;
  double pair_v12 = 0.0;
  double pair_v12_max = 0.0;
  double pair_residual_standard_setting = 0.0;
  double pair_residual_max_setting = 0.0;

  bool ok = true;
  std::vector<std::string> warnings;
};

struct ExperimentReport {
  SlitGeometry geometry = SlitGeometry::standard();
  ExperimentOptions options;
  std::vector<StateReport> states;
};

/// Runs the four-curve measurement program for each state, fits every
/// curve, assembles the corrected two-photon curves and reports the
/// one-/two-photon visibility pairs with their complementarity residuals.
/// A failing state is reported with ok = false; the sweep continues.
ExperimentReport complementarity_experiment(const std::vector<NamedState>& states, const SlitGeometry& geom,
                                            const ExperimentOptions& options);

}  // namespace hybrid
