#include "hybrid/experiment.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hybrid/analysis.hpp"

namespace hybrid {
namespace {

using std::numbers::pi;

std::string degrees_label(double rad) {
  const double deg = rad * 180.0 / pi;
  const double rounded = std::round(deg * 1000.0) / 1000.0;
  std::string s = std::to_string(rounded);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

ScanConfig with_options(ScanConfig c, const ExperimentOptions& o, std::uint64_t stream) {
  if (c.kind == ScanKind::Spatial) {
    c.start = -o.spatial_half_range;
    c.stop = o.spatial_half_range;
    c.steps = o.spatial_steps;
  } else {
    c.steps = o.polarization_steps;
  }
  if (!c.bucket) c.aperture_width = o.aperture_width;
  c.expected_total_counts = o.counts_per_curve;
  c.seed = derive_seed(o.seed, stream);
  return c;
}

CurveRecord measure(const NamedState& s, const SlitGeometry& geom, const ScanConfig& config, unsigned threads,
                    std::vector<std::string>& warnings, const std::string& suffix = "") {
  CurveRecord rec;
  rec.name = curve_name(config) + suffix;
  rec.curve = simulate_scan(s.state, geom, config, threads);
  rec.fit = fit_curve(rec.curve, model_for(config.kind), geom);
  if (!rec.fit.converged) warnings.push_back(rec.name + " fit: " + rec.fit.message);
  return rec;
}

CorrectedRecord correct(const std::string& name, const CountCurve& pcc, const FitResult& p1s, const FitResult& p1p,
                        const SlitGeometry& geom, std::vector<std::string>& warnings) {
  CorrectedRecord rec;
  rec.name = name;
  rec.curve = corrected_curve_from_data(pcc, p1s, p1p, geom);
  rec.fit = fit_corrected(rec.curve, geom);
  if (!rec.fit.converged) warnings.push_back(name + " fit: " + rec.fit.message);
  return rec;
}

}  // namespace

double fitted_p1s(const FitResult& p1s_fit, const SlitGeometry& geom, double x) {
  return model_value(p1s_fit.model, p1s_fit.params, geom, x) / model_integral(p1s_fit, geom);
}

double fitted_p1p(const FitResult& p1p_fit, double theta_s) {
  const double v = p1p_fit.param("visibility");
  const double c = p1p_fit.param("center");
  return (1.0 + v * std::cos(2.0 * (theta_s - c))) / (2.0 * pi);
}

CorrectedCurve corrected_curve_from_data(const CountCurve& pcc, const FitResult& p1s_fit, const FitResult& p1p_fit,
                                         const SlitGeometry& geom, Observable observable) {
  if (!pcc.config.two_photon()) throw std::invalid_argument("corrected curve needs a two-photon scan");
  if (p1s_fit.model != FitModel::SpatialFringe || p1p_fit.model != FitModel::PolarizationCosine) {
    throw std::invalid_argument("one-photon fits must be spatial-fringe and polarization-cosine");
  }
  if (!p1s_fit.converged || !p1p_fit.converged) {
    throw std::invalid_argument("one-photon fits did not converge");
  }
  const FitResult cc_fit = fit_curve(pcc, model_for(pcc.config.kind), geom, observable);
  if (!cc_fit.converged) throw std::invalid_argument("two-photon fit did not converge: " + cc_fit.message);

  const std::vector<double> ys = observed_values(pcc, observable);
  const double restore = 0.25 * geom.kappa();
  const double env_k = geom.envelope_constant();
  const double fixed = pcc.config.fixed_setting;

  CorrectedCurve out;
  out.kind = pcc.config.kind;
  out.fixed_setting = fixed;
  out.settings = pcc.settings;
  out.values.resize(ys.size());
  out.sigmas.resize(ys.size());

  // The joint density integrates over the scanned variable to the marginal
  // of the fixed one.
  const bool spatial = pcc.config.kind == ScanKind::Spatial;
  const double marginal = spatial ? fitted_p1p(p1p_fit, fixed) : fitted_p1s(p1s_fit, geom, fixed);
  const double scale = marginal / model_integral(cc_fit, geom);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double s = pcc.settings[i];
    const double x = spatial ? s : fixed;
    const double theta = spatial ? fixed : s;
    const double env = sinc(env_k * x);
    out.values[i] = scale * ys[i] - fitted_p1s(p1s_fit, geom, x) * fitted_p1p(p1p_fit, theta) + restore * env * env;
    out.sigmas[i] = scale * std::sqrt(std::max(ys[i], 1.0));
  }
  return out;
}

FitResult fit_corrected(const CorrectedCurve& curve, const SlitGeometry& geom) {
  return fit_model(curve.settings, curve.values, curve.sigmas, model_for(curve.kind), geom);
}

std::vector<NamedState> standard_states() {
  std::vector<NamedState> out;
  out.push_back({"left-circular", HybridState(PolarizationProjection::left_circular())});
  for (double deg : {10.0, 5.0, 0.0}) {
    out.push_back({"xi=" + degrees_label(deg * pi / 180.0), hes_from_xi(deg * pi / 180.0)});
  }
  return out;
}

std::vector<NamedState> make_states(const std::vector<double>& xis,
                                    const std::vector<PolarizationProjection>& projections) {
  std::vector<NamedState> out;
  for (const auto& p : projections) {
    out.push_back({"alpha=" + std::to_string(p.alpha) + ",beta=" + std::to_string(p.beta) +
                       ",phi_p=" + degrees_label(p.phi_p),
                   prepare_hybrid_state(p).state});
  }
  for (double xi : xis) out.push_back({"xi=" + degrees_label(xi), hes_from_xi(xi)});
  return out;
}

ExperimentReport complementarity_experiment(const std::vector<NamedState>& states, const SlitGeometry& geom,
                                            const ExperimentOptions& options) {
  if (states.empty()) throw std::invalid_argument("experiment needs at least one state");
  ExperimentReport report;
  report.geometry = geom;
  report.options = options;

  for (std::size_t si = 0; si < states.size(); ++si) {
    const NamedState& ns = states[si];
    StateReport r;
    r.id = ns.id;
    r.alpha = ns.state.alpha();
    r.beta = ns.state.beta();
    r.phi_p = ns.state.phi_p();
    r.concurrence = ns.state.concurrence();
    r.best_theta = best_spatial_setting(ns.state).setting;
    r.best_x = best_polarization_setting(ns.state, geom).setting;
    const std::uint64_t base = si * 8;

    try {
      auto& w = r.warnings;
      const unsigned th = options.threads;
      r.curves.push_back(measure(ns, geom, with_options(ScanConfig::spatial_one_photon(), options, base + 0), th, w));
      r.curves.push_back(measure(ns, geom, with_options(ScanConfig::spatial(pi / 2.0), options, base + 1), th, w));
      r.curves.push_back(measure(ns, geom, with_options(ScanConfig::polarization_bucket(), options, base + 2), th, w));
      r.curves.push_back(measure(ns, geom, with_options(ScanConfig::polarization(0.0), options, base + 3), th, w));
      r.max_setting_curves.push_back(
          measure(ns, geom, with_options(ScanConfig::spatial(r.best_theta), options, base + 4), th, w, "_max"));
      r.max_setting_curves.push_back(
          measure(ns, geom, with_options(ScanConfig::polarization(r.best_x), options, base + 5), th, w, "_max"));

      const FitResult& p1s = r.curves[0].fit;
      const FitResult& p1p = r.curves[2].fit;
      r.corrected.push_back(correct("corrected_spatial", r.curves[1].curve, p1s, p1p, geom, w));
      r.corrected.push_back(correct("corrected_polarization", r.curves[3].curve, p1s, p1p, geom, w));
      r.corrected.push_back(correct("corrected_spatial_max", r.max_setting_curves[0].curve, p1s, p1p, geom, w));
      r.corrected.push_back(correct("corrected_polarization_max", r.max_setting_curves[1].curve, p1s, p1p, geom, w));

      r.v1_spatial = p1s.visibility();
      r.v1_polarization = p1p.visibility();
      r.v12_raw_spatial = r.curves[1].fit.visibility();
      r.v12_raw_polarization = r.curves[3].fit.visibility();
      r.v12_spatial = r.corrected[0].fit.visibility();
      r.v12_polarization = r.corrected[1].fit.visibility();
      r.v12_spatial_max = r.corrected[2].fit.visibility();
      r.v12_polarization_max = r.corrected[3].fit.visibility();

      struct Panel {
        const char* name;
        ScanKind one;
        ScanKind two;
      };
      const Panel panels[] = {{"a", ScanKind::Spatial, ScanKind::Spatial},
                              {"b", ScanKind::Polarization, ScanKind::Spatial},
                              {"c", ScanKind::Spatial, ScanKind::Polarization},
                              {"d", ScanKind::Polarization, ScanKind::Polarization}};
      for (const Panel& p : panels) {
        Pairing pr{p.name, p.one, p.two, 0, 0, 0, 0, 0};
        pr.v1 = p.one == ScanKind::Spatial ? r.v1_spatial : r.v1_polarization;
        pr.v12 = p.two == ScanKind::Spatial ? r.v12_spatial : r.v12_polarization;
        pr.v12_max_setting = p.two == ScanKind::Spatial ? r.v12_spatial_max : r.v12_polarization_max;
        pr.residual_standard_setting = complementarity_residual(pr.v12, pr.v1);
        pr.residual_max_setting = complementarity_residual(pr.v12_max_setting, pr.v1);
        r.pairings.push_back(pr);
      }
      r.pair_v1 = 0.5 * (r.v1_spatial + r.v1_polarization);
      r.pair_v12 = 0.5 * (r.v12_spatial + r.v12_polarization);
      r.pair_v12_max = 0.5 * (r.v12_spatial_max + r.v12_polarization_max);
      r.pair_residual_standard_setting = complementarity_residual(r.pair_v12, r.pair_v1);
      r.pair_residual_max_setting = complementarity_residual(r.pair_v12_max, r.pair_v1);
      r.ok = r.warnings.empty();
    } catch (const std::exception& e) {
      r.ok = false;
      r.warnings.emplace_back(e.what());
    }
    report.states.push_back(std::move(r));
  }
  return report;
}

}  // namespace hybrid
