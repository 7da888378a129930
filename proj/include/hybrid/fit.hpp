#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hybrid/optics.hpp"
#include "hybrid/scan.hpp"

namespace hybrid {

/// Fit models. A and B come from the geometry and are not fitted.
///   SpatialFringe      R sinc^2(A(x - x0)) [1 + V cos(2B(x - x0) + phi)]
///                      parameters: amplitude, visibility, center, phase
///   PolarizationCosine R [1 + V cos(2(theta - theta0))]
///                      parameters: amplitude, visibility, center
enum class FitModel { SpatialFringe, PolarizationCosine };

std::string to_string(FitModel model);
FitModel model_for(ScanKind kind);

struct FitResult {
  FitModel model = FitModel::SpatialFringe;
  std::vector<std::string> names;
  Eigen::VectorXd params;
  /// Covariance of `params`, (J^T W J)^{-1} at the solution.
  Eigen::MatrixXd covariance;
  double chi2 = 0.0;
  int dof = 0;
  int iterations = 0;
  bool converged = false;
  std::string message;

  double param(std::string_view name) const;
  double error(std::string_view name) const;
  double visibility() const { return param("visibility"); }
  double visibility_error() const { return error("visibility"); }
};

/// Model value at `setting` for parameter vector p.
double model_value(FitModel model, const Eigen::VectorXd& p, const SlitGeometry& geom, double setting);

/// Integral of the fitted model over one full period of its independent
/// variable domain: the whole detection line (spatial) or [0, 2pi).
double model_integral(const FitResult& fit, const SlitGeometry& geom);

/// Weighted Levenberg-Marquardt fit with visibility held in [0, 1]
/// (negative visibilities are folded into the phase). Stops when an accepted
/// step improves chi^2 by less than 1e-10 relative or no descent remains;
/// gives up unconverged after 200 iterations. Singular normal equations at
/// the solution mark the result unconverged.
FitResult fit_model(std::span<const double> settings, std::span<const double> values,
                    std::span<const double> sigmas, FitModel model, const SlitGeometry& geom);

enum class Observable { Counts, Expected };

/// Fits the counts (or the noiseless expected values) of a scan with
/// sigma_i = sqrt(max(y_i, 1)). Requires >= 5 points and a model matching the
/// scan kind.
FitResult fit_curve(const CountCurve& curve, FitModel model, const SlitGeometry& geom,
                    Observable observable = Observable::Counts);

/// Values of a curve as doubles.
std::vector<double> observed_values(const CountCurve& curve, Observable observable);

}  // namespace hybrid
