#include "hybrid/cli/report.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace hybrid::cli {
namespace {

using json = nlohmann::ordered_json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double read_number(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw std::runtime_error("expected a number, got " + j.dump());
  return j.get<double>();
}

json number_map(const std::map<std::string, double>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = number(v);
  return out;
}

std::map<std::string, double> read_number_map(const json& j) {
  if (!j.is_object()) throw std::runtime_error("expected an object, got " + j.dump());
  std::map<std::string, double> out;
  for (const auto& [k, v] : j.items()) out[k] = read_number(v);
  return out;
}

// Requires the object to carry exactly `keys`.
const json& expect(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw std::runtime_error(where + ": expected an object");
  std::set<std::string> wanted(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!wanted.contains(k)) throw std::runtime_error(where + ": unknown field '" + k + "'");
  }
  for (const auto& k : wanted) {
    if (!j.contains(k)) throw std::runtime_error(where + ": missing field '" + k + "'");
  }
  return j;
}

FitSummary summarize_fit(const FitResult& f) {
  FitSummary s;
  s.model = to_string(f.model);
  for (std::size_t i = 0; i < f.names.size(); ++i) {
    s.params[f.names[i]] = f.params(static_cast<Eigen::Index>(i));
    s.errors[f.names[i]] = f.error(f.names[i]);
  }
  s.chi2 = f.chi2;
  s.dof = f.dof;
  s.converged = f.converged;
  return s;
}

json fit_json(const FitSummary& f) {
  return json{{"model", f.model},      {"params", number_map(f.params)}, {"errors", number_map(f.errors)},
              {"chi2", number(f.chi2)}, {"dof", f.dof},                   {"converged", f.converged}};
}

FitSummary read_fit(const json& j, const std::string& where) {
  expect(j, {"model", "params", "errors", "chi2", "dof", "converged"}, where);
  FitSummary f;
  f.model = j.at("model").get<std::string>();
  f.params = read_number_map(j.at("params"));
  f.errors = read_number_map(j.at("errors"));
  f.chi2 = read_number(j.at("chi2"));
  f.dof = j.at("dof").get<int>();
  f.converged = j.at("converged").get<bool>();
  return f;
}

}  // namespace

ReportSummary summarize(const ExperimentReport& report) {
  ReportSummary out;
  out.a = report.geometry.a();
  out.d = report.geometry.d();
  out.lambda = report.geometry.lambda();
  out.z = report.geometry.z();
  out.counts_per_curve = report.options.counts_per_curve;
  out.seed = report.options.seed;
  out.aperture = report.options.aperture_width;
  out.spatial_steps = report.options.spatial_steps;
  out.spatial_half_range = report.options.spatial_half_range;
  out.polarization_steps = report.options.polarization_steps;
  for (const StateReport& r : report.states) {
    StateSummary s;
    s.id = r.id;
    s.alpha = r.alpha;
    s.beta = r.beta;
    s.phi_p = r.phi_p;
    s.concurrence = r.concurrence;
    s.standard_theta = std::numbers::pi / 2.0;
    s.standard_x = 0.0;
    s.max_theta = r.best_theta;
    s.max_x = r.best_x;
    for (const auto& c : r.curves) s.fits[c.name] = summarize_fit(c.fit);
    for (const auto& c : r.max_setting_curves) s.fits[c.name] = summarize_fit(c.fit);
    for (const auto& c : r.corrected) s.fits[c.name] = summarize_fit(c.fit);
    const bool measured = !r.pairings.empty();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.raw = {{"spatial", measured ? r.v12_raw_spatial : nan}, {"polarization", measured ? r.v12_raw_polarization : nan}};
    s.corrected = {{"spatial", measured ? r.v12_spatial : nan},
                   {"polarization", measured ? r.v12_polarization : nan},
                   {"spatial_max", measured ? r.v12_spatial_max : nan},
                   {"polarization_max", measured ? r.v12_polarization_max : nan}};
    s.one_photon = {{"spatial", measured ? r.v1_spatial : nan}, {"polarization", measured ? r.v1_polarization : nan}};
    s.pair = {{"v1", measured ? r.pair_v1 : nan},
              {"v12_standard_setting", measured ? r.pair_v12 : nan},
              {"v12_max_setting", measured ? r.pair_v12_max : nan}};
    for (const Pairing& p : r.pairings) {
      s.residual_standard_setting[p.panel] = p.residual_standard_setting;
      s.residual_max_setting[p.panel] = p.residual_max_setting;
    }
    if (measured) {
      s.residual_standard_setting["pair"] = r.pair_residual_standard_setting;
      s.residual_max_setting["pair"] = r.pair_residual_max_setting;
    }
    s.ok = r.ok;
    s.warnings = r.warnings;
    out.states.push_back(std::move(s));
  }
  return out;
}

nlohmann::ordered_json to_json(const ReportSummary& r) {
  json states = json::array();
  for (const StateSummary& s : r.states) {
    json fits = json::object();
    for (const auto& [name, f] : s.fits) fits[name] = fit_json(f);
    states.push_back(json{
        {"state",
         {{"id", s.id},
          {"alpha", number(s.alpha)},
          {"beta", number(s.beta)},
          {"phi_p_rad", number(s.phi_p)},
          {"concurrence", number(s.concurrence)}}},
        {"settings",
         {{"standard_theta_rad", number(s.standard_theta)},
          {"standard_x_m", number(s.standard_x)},
          {"max_theta_rad", number(s.max_theta)},
          {"max_x_m", number(s.max_x)}}},
        {"fits", fits},
        {"visibilities",
         {{"raw", number_map(s.raw)}, {"corrected", number_map(s.corrected)}, {"one_photon", number_map(s.one_photon)},
          {"pair", number_map(s.pair)}}},
        {"residuals",
         {{"standard_setting", number_map(s.residual_standard_setting)},
          {"max_setting", number_map(s.residual_max_setting)}}},
        {"ok", s.ok},
        {"warnings", s.warnings}});
  }
  return json{{"schema", "hybridsim.experiment-report"},
              {"schema_version", r.schema_version},
              {"geometry", {{"a_m", number(r.a)}, {"d_m", number(r.d)}, {"lambda_m", number(r.lambda)}, {"z_m", number(r.z)}}},
              {"options",
               {{"counts_per_curve", number(r.counts_per_curve)},
                {"seed", r.seed},
                {"aperture_m", number(r.aperture)},
                {"spatial_steps", r.spatial_steps},
                {"spatial_half_range_m", number(r.spatial_half_range)},
                {"polarization_steps", r.polarization_steps}}},
              {"states", states}};
}

ReportSummary report_from_json(const nlohmann::ordered_json& j) {
  expect(j, {"schema", "schema_version", "geometry", "options", "states"}, "report");
  if (j.at("schema") != "hybridsim.experiment-report") throw std::runtime_error("report: unexpected schema name");
  ReportSummary r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kReportSchemaVersion) {
    throw std::runtime_error("report: unsupported schema_version " + std::to_string(r.schema_version));
  }
  const json& g = expect(j.at("geometry"), {"a_m", "d_m", "lambda_m", "z_m"}, "geometry");
  r.a = read_number(g.at("a_m"));
  r.d = read_number(g.at("d_m"));
  r.lambda = read_number(g.at("lambda_m"));
  r.z = read_number(g.at("z_m"));
  const json& o = expect(j.at("options"),
                         {"counts_per_curve", "seed", "aperture_m", "spatial_steps", "spatial_half_range_m",
                          "polarization_steps"},
                         "options");
  r.counts_per_curve = read_number(o.at("counts_per_curve"));
  r.seed = o.at("seed").get<std::uint64_t>();
  r.aperture = read_number(o.at("aperture_m"));
  r.spatial_steps = o.at("spatial_steps").get<int>();
  r.spatial_half_range = read_number(o.at("spatial_half_range_m"));
  r.polarization_steps = o.at("polarization_steps").get<int>();

  if (!j.at("states").is_array()) throw std::runtime_error("states: expected an array");
  for (const json& sj : j.at("states")) {
    expect(sj, {"state", "settings", "fits", "visibilities", "residuals", "ok", "warnings"}, "states[]");
    StateSummary s;
    const json& st = expect(sj.at("state"), {"id", "alpha", "beta", "phi_p_rad", "concurrence"}, "state");
    s.id = st.at("id").get<std::string>();
    s.alpha = read_number(st.at("alpha"));
    s.beta = read_number(st.at("beta"));
    s.phi_p = read_number(st.at("phi_p_rad"));
    s.concurrence = read_number(st.at("concurrence"));
    const json& se = expect(sj.at("settings"), {"standard_theta_rad", "standard_x_m", "max_theta_rad", "max_x_m"}, "settings");
    s.standard_theta = read_number(se.at("standard_theta_rad"));
    s.standard_x = read_number(se.at("standard_x_m"));
    s.max_theta = read_number(se.at("max_theta_rad"));
    s.max_x = read_number(se.at("max_x_m"));
    if (!sj.at("fits").is_object()) throw std::runtime_error("fits: expected an object");
    for (const auto& [name, fj] : sj.at("fits").items()) s.fits[name] = read_fit(fj, "fits." + name);
    const json& v = expect(sj.at("visibilities"), {"raw", "corrected", "one_photon", "pair"}, "visibilities");
    s.raw = read_number_map(v.at("raw"));
    s.corrected = read_number_map(v.at("corrected"));
    s.one_photon = read_number_map(v.at("one_photon"));
    s.pair = read_number_map(v.at("pair"));
    const json& res = expect(sj.at("residuals"), {"standard_setting", "max_setting"}, "residuals");
    s.residual_standard_setting = read_number_map(res.at("standard_setting"));
    s.residual_max_setting = read_number_map(res.at("max_setting"));
    s.ok = sj.at("ok").get<bool>();
    s.warnings = sj.at("warnings").get<std::vector<std::string>>();
    r.states.push_back(std::move(s));
  }
  return r;
}

}  // namespace hybrid::cli
