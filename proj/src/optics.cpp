#include "hybrid/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hybrid {
namespace {

using std::numbers::pi;

// Integral of cos(w u)/u^2 over [x, inf). Asymptotic expansion, accurate to
// ~1e-13 relative for w*x >= 40.
double cosine_tail(double w, double x) {
  if (w == 0.0) return 1.0 / x;
  const double y = w * x;
  const double y2 = y * y;
  const double even = (2.0 - (24.0 - (720.0 - 40320.0 / y2) / y2) / y2) / y2;
  const double odd = (1.0 - (6.0 - (120.0 - 5040.0 / y2) / y2) / y2) / y;
  return (std::cos(y) * even - std::sin(y) * odd) / x;
}

constexpr double kMinTailPhase = 40.0;

}  // namespace

SlitGeometry::SlitGeometry(double a, double d, double lambda, double z)
    : a_(a), d_(d), lambda_(lambda), z_(z) {
  for (double v : {a, d, lambda, z}) {
    if (!std::isfinite(v) || v <= 0.0) throw std::invalid_argument("slit geometry lengths must be positive");
  }
  if (d <= 2.0 * a) throw std::invalid_argument("slits overlap: need d > 2a");
}

SlitGeometry SlitGeometry::standard() { return {40e-6, 250e-6, 702e-9, 0.42}; }

double SlitGeometry::k() const { return 2.0 * pi / lambda_; }
double SlitGeometry::envelope_constant() const { return k() * a_ / z_; }
double SlitGeometry::fringe_constant() const { return k() * d_ / (2.0 * z_); }
double SlitGeometry::kappa() const { return 2.0 * k() * a_ / (pi * pi * z_); }
double SlitGeometry::fringe_period() const { return lambda_ * z_ / d_; }
double SlitGeometry::envelope_null() const { return lambda_ * z_ / (2.0 * a_); }

double sinc(double u) {
  if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

Complex slit_kernel(const SlitGeometry& geom, double x, Slit which) {
  const double phase = geom.fringe_constant() * x;
  const double env = sinc(geom.envelope_constant() * x);
  return env * std::exp(which == Slit::Upper ? -kJ * phase : kJ * phase);
}

Complex mode_amplitude(const SlitGeometry& geom, double x, SpatialMode mode) {
  // (upper +- lower)/sqrt2 scaled by sqrt(ka/(pi z)) = sqrt(A/pi).
  const double norm = std::sqrt(geom.envelope_constant() / pi);
  const Complex up = slit_kernel(geom, x, Slit::Upper);
  const Complex lo = slit_kernel(geom, x, Slit::Lower);
  const Complex sum = mode == SpatialMode::F ? up + lo : up - lo;
  return norm * sum / std::sqrt(2.0);
}

double simpson(const std::function<double(double)>& f, double lo, double hi, int intervals) {
  if (intervals < 2 || intervals % 2 != 0) throw std::invalid_argument("simpson needs an even interval count");
  const double h = (hi - lo) / intervals;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) {
    acc += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
  }
  return acc * h / 3.0;
}

double detector_line_integral(const SlitGeometry& geom, const std::function<double(double)>& f,
                              double envelopes, int intervals) {
  const double env = geom.envelope_constant();
  const double fr = geom.fringe_constant();

  // Read c0, c1 off three samples at 2Bx = 0, 2pi/3, 4pi/3.
  double c0 = 0.0;
  double c1 = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double x = j * pi / (3.0 * fr);
    const double s = sinc(env * x);
    const double t = f(x) / (s * s);
    const double ph = 2.0 * pi * j / 3.0;
    c0 += t / 3.0;
    c1 += 2.0 * t * std::cos(ph) / 3.0;
  }

  const double w_min = std::min(2.0 * env, 2.0 * (fr - env));
  const double base = envelopes * pi / env;
  const double half = std::max(base, kMinTailPhase / w_min);
  int n = static_cast<int>(std::ceil(intervals * half / base));
  n += n % 2;

  const double core = simpson(f, -half, half, n);
  const double tail = (c0 * cosine_tail(0.0, half) - c0 * cosine_tail(2.0 * env, half) +
                       c1 * cosine_tail(2.0 * fr, half) -
                       0.5 * c1 * (cosine_tail(2.0 * (fr + env), half) + cosine_tail(2.0 * (fr - env), half))) /
                      (2.0 * env * env);
  return core + 2.0 * tail;
}

}  // namespace hybrid
