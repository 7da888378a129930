#include "hybrid/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hybrid {
namespace {

using std::numbers::pi;

constexpr int kMaxIterations = 200;
constexpr double kRelImprovement = 1e-10;
constexpr double kMaxDamping = 1e16;
constexpr double kSingularRatio = 1e-14;

enum Param : Eigen::Index { kAmplitude = 0, kVisibility = 1, kCenter = 2, kPhase = 3 };

Eigen::Index param_count(FitModel m) { return m == FitModel::SpatialFringe ? 4 : 3; }

// Folds V < 0 into the phase and clamps V <= 1.
void canonicalize(FitModel model, Eigen::VectorXd& p) {
  if (p(kVisibility) < 0.0) {
    p(kVisibility) = -p(kVisibility);
    if (model == FitModel::SpatialFringe) {
      p(kPhase) += pi;
    } else {
      p(kCenter) += pi / 2.0;
    }
  }
  p(kVisibility) = std::min(p(kVisibility), 1.0);
  if (model == FitModel::SpatialFringe) {
    p(kPhase) = std::remainder(p(kPhase), 2.0 * pi);
  } else {
    p(kCenter) = std::remainder(p(kCenter), pi);
  }
}

// Weighted linear least squares for R, RV cos, RV sin at zero offset.
Eigen::VectorXd initial_guess(std::span<const double> xs, std::span<const double> ys, std::span<const double> sig,
                              FitModel model, const SlitGeometry& geom) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), 3);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    double env = 1.0;
    double arg = 2.0 * xs[i];
    if (model == FitModel::SpatialFringe) {
      const double s = sinc(geom.envelope_constant() * xs[i]);
      env = s * s;
      arg = 2.0 * geom.fringe_constant() * xs[i];
    }
    m(r, 0) = env / sig[i];
    m(r, 1) = env * std::cos(arg) / sig[i];
    m(r, 2) = env * std::sin(arg) / sig[i];
    rhs(r) = ys[i] / sig[i];
  }
  const Eigen::Vector3d c = m.colPivHouseholderQr().solve(rhs);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(param_count(model));
  double amp = c(0);
  if (!(amp > 0.0) || !std::isfinite(amp)) {
    amp = 0.0;
    for (double y : ys) amp += std::abs(y);
    amp = std::max(amp / static_cast<double>(ys.size()), 1e-300);
  }
  p(kAmplitude) = amp;
  p(kVisibility) = std::min(std::hypot(c(1), c(2)) / amp, 1.0);
  if (model == FitModel::SpatialFringe) {
    p(kCenter) = 0.0;
    p(kPhase) = std::atan2(-c(2), c(1));
  } else {
    p(kCenter) = 0.5 * std::atan2(c(2), c(1));
  }
  return p;
}

double chi_square(std::span<const double> xs, std::span<const double> ys, std::span<const double> sig, FitModel model,
                  const Eigen::VectorXd& p, const SlitGeometry& geom) {
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = (ys[i] - model_value(model, p, geom, xs[i])) / sig[i];
    acc += r * r;
  }
  return acc;
}

// Central-difference Jacobian of the weighted model, plus weighted residuals.
void linearize(std::span<const double> xs, std::span<const double> ys, std::span<const double> sig, FitModel model,
               const Eigen::VectorXd& p, const SlitGeometry& geom, Eigen::MatrixXd& jac, Eigen::VectorXd& res) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  const Eigen::Index np = p.size();
  jac.resize(n, np);
  res.resize(n);
  Eigen::VectorXd step(np);
  step(kAmplitude) = 1e-6 * std::max(std::abs(p(kAmplitude)), 1e-300);
  step(kVisibility) = 1e-6;
  step(kCenter) = model == FitModel::SpatialFringe ? 1e-6 / geom.envelope_constant() : 1e-6;
  if (model == FitModel::SpatialFringe) step(kPhase) = 1e-6;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    res(i) = (ys[ui] - model_value(model, p, geom, xs[ui])) / sig[ui];
  }
  for (Eigen::Index j = 0; j < np; ++j) {
    Eigen::VectorXd hi = p;
    Eigen::VectorXd lo = p;
    hi(j) += step(j);
    lo(j) -= step(j);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      jac(i, j) = (model_value(model, hi, geom, xs[ui]) - model_value(model, lo, geom, xs[ui])) /
                  (2.0 * step(j) * sig[ui]);
    }
  }
}

}  // namespace

std::string to_string(FitModel model) {
  return model == FitModel::SpatialFringe ? "spatial-fringe" : "polarization-cosine";
}

FitModel model_for(ScanKind kind) {
  return kind == ScanKind::Spatial ? FitModel::SpatialFringe : FitModel::PolarizationCosine;
}

double FitResult::param(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return params(static_cast<Eigen::Index>(i));
  }
  throw std::out_of_range("no fit parameter named " + std::string(name));
}

double FitResult::error(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (names[i] == name) return std::sqrt(std::max(covariance(k, k), 0.0));
  }
  throw std::out_of_range("no fit parameter named " + std::string(name));
}

double model_value(FitModel model, const Eigen::VectorXd& p, const SlitGeometry& geom, double setting) {
  if (model == FitModel::SpatialFringe) {
    const double u = setting - p(kCenter);
    const double s = sinc(geom.envelope_constant() * u);
    return p(kAmplitude) * s * s *
           (1.0 + p(kVisibility) * std::cos(2.0 * geom.fringe_constant() * u + p(kPhase)));
  }
  return p(kAmplitude) * (1.0 + p(kVisibility) * std::cos(2.0 * (setting - p(kCenter))));
}

double model_integral(const FitResult& fit, const SlitGeometry& geom) {
  // The fringe term integrates to zero against sinc^2 because d > 2a.
  if (fit.model == FitModel::SpatialFringe) return fit.params(kAmplitude) * pi / geom.envelope_constant();
  return 2.0 * pi * fit.params(kAmplitude);
}

FitResult fit_model(std::span<const double> xs, std::span<const double> ys, std::span<const double> sig,
                    FitModel model, const SlitGeometry& geom) {
  if (xs.size() != ys.size() || xs.size() != sig.size()) throw std::invalid_argument("fit inputs differ in length");
  const Eigen::Index np = param_count(model);
  if (static_cast<Eigen::Index>(xs.size()) < std::max<Eigen::Index>(5, np + 1)) {
    throw std::invalid_argument("fit needs at least 5 points");
  }
  for (double s : sig) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("fit sigmas must be positive");
  }

  FitResult out;
  out.model = model;
  out.names = {"amplitude", "visibility", "center"};
  if (model == FitModel::SpatialFringe) out.names.emplace_back("phase");
  out.dof = static_cast<int>(xs.size()) - static_cast<int>(np);

  Eigen::VectorXd p = initial_guess(xs, ys, sig, model, geom);
  double chi2 = chi_square(xs, ys, sig, model, p, geom);
  double damping = 1e-3;
  Eigen::MatrixXd jac;
  Eigen::VectorXd res;

  bool done = false;
  int iter = 0;
  for (; iter < kMaxIterations && !done; ++iter) {
    linearize(xs, ys, sig, model, p, geom, jac, res);
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * res;
    const double floor = 1e-12 * normal.diagonal().maxCoeff();

    bool accepted = false;
    while (!accepted && damping <= kMaxDamping) {
      Eigen::MatrixXd lhs = normal;
      for (Eigen::Index j = 0; j < np; ++j) lhs(j, j) += damping * std::max(normal(j, j), floor);
      Eigen::LDLT<Eigen::MatrixXd> ldlt(lhs);
      if (ldlt.info() != Eigen::Success) {
        damping *= 10.0;
        continue;
      }
      Eigen::VectorXd delta = ldlt.solve(grad);
      // At the V = 1 bound a step pushing V outward would be clipped; take the
      // step in the remaining parameters instead.
      if (p(kVisibility) >= 1.0 && delta(kVisibility) > 0.0) {
        Eigen::VectorXd g = grad;
        lhs.row(kVisibility).setZero();
        lhs.col(kVisibility).setZero();
        lhs(kVisibility, kVisibility) = 1.0;
        g(kVisibility) = 0.0;
        ldlt.compute(lhs);
        if (ldlt.info() != Eigen::Success) {
          damping *= 10.0;
          continue;
        }
        delta = ldlt.solve(g);
      }
      Eigen::VectorXd trial = p + delta;
      canonicalize(model, trial);
      const double trial_chi2 = chi_square(xs, ys, sig, model, trial, geom);
      if (std::isfinite(trial_chi2) && trial_chi2 < chi2) {
        const double rel = (chi2 - trial_chi2) / std::max(chi2, std::numeric_limits<double>::min());
        p = trial;
        chi2 = trial_chi2;
        damping = std::max(damping / 10.0, 1e-12);
        accepted = true;
        if (rel < kRelImprovement || chi2 == 0.0) done = true;
      } else {
        damping *= 10.0;
      }
    }
    // No descent direction left: stationary point (possibly on the V = 1 bound).
    if (!accepted) done = true;
  }

  out.params = p;
  out.chi2 = chi2;
  out.iterations = iter;
  out.converged = done;
  if (!done) out.message = "no convergence within 200 iterations";

  linearize(xs, ys, sig, model, p, geom, jac, res);
  const Eigen::MatrixXd normal = jac.transpose() * jac;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
  const Eigen::VectorXd d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || !(d.minCoeff() > kSingularRatio * dmax)) {
    out.converged = false;
    out.message = "singular normal equations at the solution";
    out.covariance = Eigen::MatrixXd::Constant(np, np, std::numeric_limits<double>::quiet_NaN());
  } else {
    out.covariance = ldlt.solve(Eigen::MatrixXd::Identity(np, np));
    out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  }
  return out;
}

std::vector<double> observed_values(const CountCurve& curve, Observable observable) {
  if (observable == Observable::Expected) return curve.expected;
  return {curve.counts.begin(), curve.counts.end()};
}

FitResult fit_curve(const CountCurve& curve, FitModel model, const SlitGeometry& geom, Observable observable) {
  if (model != model_for(curve.config.kind)) {
    throw std::invalid_argument("fit model " + to_string(model) + " does not match a " +
                                to_string(curve.config.kind) + " scan");
  }
  const std::vector<double> ys = observed_values(curve, observable);
  std::vector<double> sig(ys.size());
  std::transform(ys.begin(), ys.end(), sig.begin(), [](double y) { return std::sqrt(std::max(y, 1.0)); });
  return fit_model(curve.settings, ys, sig, model, geom);
}

}  // namespace hybrid
