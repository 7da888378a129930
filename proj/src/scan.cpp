#include "hybrid/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "hybrid/patterns.hpp"

namespace hybrid {
namespace {

using std::numbers::pi;

constexpr int kApertureIntervals = 64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

}  // namespace

ScanConfig ScanConfig::spatial(double theta_s) {
  ScanConfig c;
  c.fixed_setting = theta_s;
  return c;
}

ScanConfig ScanConfig::spatial_one_photon() {
  ScanConfig c;
  c.analyzer = false;
  return c;
}

ScanConfig ScanConfig::polarization(double x) {
  ScanConfig c;
  c.kind = ScanKind::Polarization;
  c.start = 0.0;
  c.stop = pi;
  c.steps = 37;
  c.fixed_setting = x;
  return c;
}

ScanConfig ScanConfig::polarization_bucket() {
  ScanConfig c = polarization(0.0);
  c.bucket = true;
  return c;
}

void ScanConfig::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
    throw std::invalid_argument("scan range must satisfy start < stop");
  }
  if (steps < 2) throw std::invalid_argument("scan needs at least 2 steps");
  if (!std::isfinite(fixed_setting)) throw std::invalid_argument("fixed setting must be finite");
  if (!std::isfinite(aperture_width) || aperture_width < 0.0) {
    throw std::invalid_argument("aperture width must be >= 0");
  }
  if (!std::isfinite(expected_total_counts) || expected_total_counts <= 0.0) {
    throw std::invalid_argument("expected total counts must be > 0");
  }
  if (kind == ScanKind::Spatial && bucket) {
    throw std::invalid_argument("a bucket detector cannot scan a spatial pattern");
  }
  if (kind == ScanKind::Polarization && !analyzer) {
    throw std::invalid_argument("a polarization scan needs the signal analyzer");
  }
}

std::string curve_name(const ScanConfig& config) {
  return std::string(config.two_photon() ? "two_photon_" : "one_photon_") + to_string(config.kind);
}

double scan_rate(const HybridState& state, const SlitGeometry& geom, const ScanConfig& config, double setting) {
  if (config.kind == ScanKind::Polarization && config.bucket) return p_cc_bucket(state, setting);

  const double centre = config.kind == ScanKind::Spatial ? setting : config.fixed_setting;
  auto density = [&](double x) {
    if (config.kind == ScanKind::Spatial) {
      return config.analyzer ? p_cc(state, geom, config.fixed_setting, x) : p_1s(state, geom, x);
    }
    return p_cc(state, geom, setting, x);
  };
  if (config.aperture_width == 0.0) return density(centre);
  const double half = 0.5 * config.aperture_width;
  return simpson(density, centre - half, centre + half, kApertureIntervals) / config.aperture_width;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t poisson_draw(std::uint64_t seed, std::uint64_t index, double mean) {
  if (!(mean > 0.0)) return 0;
  std::mt19937_64 gen(derive_seed(seed, index));
  std::poisson_distribution<long long> dist(mean);
  return static_cast<std::uint64_t>(dist(gen));
}

CountCurve simulate_scan(const HybridState& state, const SlitGeometry& geom, const ScanConfig& config,
                         unsigned threads) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.steps);
  CountCurve curve;
  curve.config = config;
  curve.settings.resize(n);
  curve.expected.resize(n);
  curve.counts.resize(n);

  const double step = (config.stop - config.start) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) curve.settings[i] = config.start + step * static_cast<double>(i);

  auto fill_rates = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) curve.expected[i] = scan_rate(state, geom, config, curve.settings[i]);
  };
  threads = std::clamp(threads, 1U, static_cast<unsigned>(n));
  if (threads == 1) {
    fill_rates(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t lo = 0; lo < n; lo += chunk) pool.emplace_back(fill_rates, lo, std::min(n, lo + chunk));
  }

  double total = 0.0;
  for (double r : curve.expected) total += r;
  if (!(total > 0.0)) throw std::invalid_argument("scan rates are all zero");
  for (std::size_t i = 0; i < n; ++i) {
    curve.expected[i] *= config.expected_total_counts / total;
    curve.counts[i] = poisson_draw(config.seed, i, curve.expected[i]);
  }
  return curve;
}

}  // namespace hybrid
