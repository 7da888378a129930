#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "hybrid/experiment.hpp"

namespace hybrid::cli {

inline constexpr int kReportSchemaVersion = 1;

struct FitSummary {
  std::string model;
  std::map<std::string, double> params;
  std::map<std::string, double> errors;
  double chi2 = 0.0;
  int dof = 0;
  bool converged = false;
};

struct StateSummary {
  std::string id;
  double alpha = 0.0;
  double beta = 0.0;
  double phi_p = 0.0;
  double concurrence = 0.0;
  double standard_theta = 0.0;
  double standard_x = 0.0;
  double max_theta = 0.0;
  double max_x = 0.0;
  /// Keyed by curve name: one_photon_spatial, ..., corrected_polarization_max.
  std::map<std::string, FitSummary> fits;
  /// spatial, polarization
  std::map<std::string, double> raw;
  /// spatial, polarization, spatial_max, polarization_max
  std::map<std::string, double> corrected;
  /// spatial, polarization
  std::map<std::string, double> one_photon;
  /// v1, v12_standard_setting, v12_max_setting
  std::map<std::string, double> pair;
  /// Complementarity residuals V12^2 + V1^2 - 1 keyed by panel a..d, plus
  /// "pair" for the state's averaged point.
  std::map<std::string, double> residual_standard_setting;
  std::map<std::string, double> residual_max_setting;
  bool ok = true;
  std::vector<std::string> warnings;
};

/// Everything report.json carries. Non-finite numbers are written as null
/// and read back as NaN.
struct ReportSummary {
  int schema_version = kReportSchemaVersion;
  double a = 0.0;
  double d = 0.0;
  double lambda = 0.0;
  double z = 0.0;
  double counts_per_curve = 0.0;
  std::uint64_t seed = 0;
  double aperture = 0.0;
  int spatial_steps = 0;
  double spatial_half_range = 0.0;
  int polarization_steps = 0;
  std::vector<StateSummary> states;
};

ReportSummary summarize(const ExperimentReport& report);

nlohmann::ordered_json to_json(const ReportSummary& summary);
/// Strict inverse of to_json: missing or unknown fields and a different
/// schema version throw std::runtime_error.
ReportSummary report_from_json(const nlohmann::ordered_json& j);

}  // namespace hybrid::cli
