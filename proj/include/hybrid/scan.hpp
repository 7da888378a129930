#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hybrid/analysis.hpp"
#include "hybrid/optics.hpp"
#include "hybrid/source.hpp"

namespace hybrid {

/// One measurement scan.
///
/// Spatial scans move the idler detector over [start, stop] (m) with the
/// signal analyzer at `fixed_setting` (rad); with `analyzer` off the signal
/// polarization is traced out and the curve is the one-photon spatial
/// pattern. Polarization scans rotate the analyzer over [start, stop] (rad)
/// with the idler detector at `fixed_setting` (m); with `bucket` on the idler
/// detector integrates the whole pattern (one-photon polarization curve).
struct ScanConfig {
  ScanKind kind = ScanKind::Spatial;
  double start = -3e-3;
  double stop = 3e-3;
  int steps = 61;
  double fixed_setting = 0.0;
  /// Idler detector slit width (m); 0 samples the density at a point.
  double aperture_width = 0.0;
  bool bucket = false;
  bool analyzer = true;
  double expected_total_counts = 1e4;
  std::uint64_t seed = 1;

  /// x in [-3, 3] mm, 61 points, analyzer at theta_s.
  static ScanConfig spatial(double theta_s);
  /// x in [-3, 3] mm, 61 points, analyzer removed.
  static ScanConfig spatial_one_photon();
  /// theta_s in [0, pi], 37 points, idler detector at x.
  static ScanConfig polarization(double x);
  /// theta_s in [0, pi], 37 points, bucket idler detector.
  static ScanConfig polarization_bucket();

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
  bool two_photon() const { return kind == ScanKind::Spatial ? analyzer : !bucket; }
};

/// "one_photon_spatial", "two_photon_polarization", ...
std::string curve_name(const ScanConfig& config);

struct CountCurve {
  std::vector<double> settings;
  std::vector<std::uint64_t> counts;
  std::vector<double> expected;
  ScanConfig config;
};

/// Detection rate (density integrated over the idler aperture) at one
/// setting of the scan.
double scan_rate(const HybridState& state, const SlitGeometry& geom, const ScanConfig& config, double setting);

/// Simulates the scan: expected counts are the rates rescaled to
/// `expected_total_counts`; each count is a Poisson draw keyed by
/// (seed, point index), so the result does not depend on evaluation order or
/// the number of worker threads.
CountCurve simulate_scan(const HybridState& state, const SlitGeometry& geom, const ScanConfig& config,
                         unsigned threads = 1);

/// Counter-based Poisson draw for point `index` of the stream `seed`.
std::uint64_t poisson_draw(std::uint64_t seed, std::uint64_t index, double mean);

/// Derives an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace hybrid
