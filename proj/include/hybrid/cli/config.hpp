#pragma once

#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybrid/experiment.hpp"
#include "hybrid/optics.hpp"
#include "hybrid/scan.hpp"

namespace hybrid::cli {

/// Raised for malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully resolved run configuration. Angles are radians, lengths meters.
struct RunConfig {
  SlitGeometry geometry = SlitGeometry::standard();
  /// Source for `pattern`.
  NamedState state{"left-circular", HybridState(PolarizationProjection::left_circular())};
  /// Scan for `pattern` (counts and seed are echoed but unused there).
  ScanConfig scan = ScanConfig::spatial(std::numbers::pi / 2.0);
  /// State list for `experiment`.
  std::vector<NamedState> states = standard_states();
  ExperimentOptions experiment;
  std::filesystem::path output_dir = ".";
  /// Keys as they appeared in the file, for the CSV header echo.
  std::vector<std::pair<std::string, std::string>> entries;
};

/// Parses "key = value" lines; '#' starts a comment. Unknown or repeated keys
/// are errors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// "250um", "0.42 m", "702nm", "3e-3" (bare numbers are meters).
double parse_length(std::string_view text);
/// Degrees, with an optional "deg" suffix; "rad" selects radians.
double parse_angle(std::string_view text);
/// "left-circular" | "xi:<deg>" | "proj:<alpha>,<beta>,<phi_p deg>".
NamedState parse_state(std::string_view text);

/// Resolved settings, one "key = value" per line, in SI units.
std::vector<std::string> describe(const RunConfig& config);

}  // namespace hybrid::cli
