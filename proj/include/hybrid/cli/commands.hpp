#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hybrid/cli/config.hpp"
#include "hybrid/verify.hpp"

namespace hybrid::cli {

/// Raised when an output file cannot be written; maps to exit code 3.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Analytic densities along the configured scan: setting, p_cc, p_1s (spatial)
/// or p_1p (polarization), p_cc_corrected; one row per scan step.
void write_pattern_csv(const RunConfig& config, std::ostream& out);

/// Writes <output_dir>/pattern.csv and returns its path.
std::filesystem::path cmd_pattern(const RunConfig& config);

/// Runs the measurement program over config.states and writes curves.csv,
/// curves_max_setting.csv, corrected.csv and report.json into output_dir.
/// Fit problems are reported as warnings on `log` and in the JSON.
ExperimentReport cmd_experiment(const RunConfig& config, std::ostream& log);

/// Prints the invariant table; returns 0 iff every check passes.
int cmd_verify(Mutation mutation, std::ostream& out, const VerifyOptions& options = {});

void write_curves_csv(const RunConfig& config, const ExperimentReport& report, bool max_setting, std::ostream& out);
void write_corrected_csv(const RunConfig& config, const ExperimentReport& report, std::ostream& out);

}  // namespace hybrid::cli
