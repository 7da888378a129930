#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's density or quadrature code: states are written out by hand,
// slit fields come from direct numerical integration over the aperture, and
// line integrals use a long plain Simpson sum.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using cd = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr cd j{0.0, 1.0};

struct Geometry {
  double a = 40e-6;
  double d = 250e-6;
  double lambda = 702e-9;
  double z = 0.42;
  double k() const { return 2.0 * pi / lambda; }
  double A() const { return k() * a / z; }
  double B() const { return k() * d / (2.0 * z); }
};

/// Amplitudes on (HF, HA, VF, VA) of alpha|VF> + j beta e^{-j phi}|HA>.
inline std::array<cd, 4> hybrid_amplitudes(double alpha, double beta, double phi) {
  return {cd{0.0}, j * beta * std::exp(-j * phi), cd{alpha}, cd{0.0}};
}

/// Far field of one slit of width 2a centred at `centre`, normalized to 1 on
/// axis, by Simpson integration of exp(-j k x' x / z) across the aperture.
inline cd slit_field(const Geometry& g, double centre, double x, int n = 2000) {
  const double lo = centre - g.a;
  const double h = 2.0 * g.a / n;
  cd acc{0.0};
  for (int i = 0; i <= n; ++i) {
    const double xp = lo + h * i;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * std::exp(-j * g.k() * xp * x / g.z);
  }
  return acc * h / 3.0 / (2.0 * g.a);
}

/// u_F and u_A as normalized symmetric / antisymmetric slit superpositions,
/// scaled so that |u|^2 integrates to one over the detection line.
inline std::array<cd, 2> modes(const Geometry& g, double x) {
  const cd up = slit_field(g, +g.d / 2.0, x);
  const cd lo = slit_field(g, -g.d / 2.0, x);
  const double norm = std::sqrt(g.A() / pi);
  return {norm * (up + lo) / std::sqrt(2.0), norm * (up - lo) / std::sqrt(2.0)};
}

/// (1/pi) |<theta|_s <x| psi>|^2 from the amplitudes and oracle modes.
inline double joint_density(const Geometry& g, const std::array<cd, 4>& psi, double theta, double x) {
  const auto u = modes(g, x);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cd amp = c * (psi[0] * u[0] + psi[1] * u[1]) + s * (psi[2] * u[0] + psi[3] * u[1]);
  return std::norm(amp) / pi;
}

/// Integral of f over the real line for f = sinc^2(Ax) (c0 + oscillating):
/// Simpson over +-L plus the leading tail c0 / (A^2 L) on both sides.
/// `c0` is the non-oscillating coefficient, supplied by the caller.
inline double line_integral(const Geometry& g, const std::function<double(double)>& f, double c0,
                            double envelopes = 4000.0, int per_fringe = 24) {
  const double L = envelopes * pi / g.A();
  const double period = pi / g.B();
  long n = static_cast<long>(2.0 * L / period) * per_fringe;
  if (n % 2) ++n;
  const double h = 2.0 * L / static_cast<double>(n);
  double acc = f(-L) + f(L);
  for (long i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(-L + h * static_cast<double>(i));
  return acc * h / 3.0 + c0 / (g.A() * g.A() * L);
}

}  // namespace oracle
