#pragma once

#include <functional>

#include "hybrid/hilbert.hpp"

namespace hybrid {

/// Double-slit geometry in SI metres. `a` is the slit half-width, `d` the
/// centre-to-centre separation, `z` the slit-to-detector distance.
class SlitGeometry {
 public:
  /// Throws unless every length is finite and positive and d > 2a.
  SlitGeometry(double a, double d, double lambda, double z);

  /// a = 40 um, d = 250 um, lambda = 702 nm, z = 42 cm.
  static SlitGeometry standard();

  double a() const { return a_; }
  double d() const { return d_; }
  double lambda() const { return lambda_; }
  double z() const { return z_; }

  double k() const;
  /// Envelope constant ka/z.
  double envelope_constant() const;
  /// Fringe constant kd/(2z).
  double fringe_constant() const;
  /// Joint-density prefactor 2ka/(pi^2 z).
  double kappa() const;

  /// lambda z / d.
  double fringe_period() const;
  /// lambda z / (2a): first zero of the single-slit envelope.
  double envelope_null() const;

 private:
  double a_;
  double d_;
  double lambda_;
  double z_;
};

enum class Slit { Upper, Lower };
enum class SpatialMode { F, A };

/// sin(u)/u with sinc(0) = 1.
double sinc(double u);

/// Far-field amplitude e^{-+ jBx} sinc(Ax) of the upper/lower slit, with the
/// common quadratic phase dropped and both envelopes centred on the axis.
Complex slit_kernel(const SlitGeometry& geom, double x, Slit which);

/// Normalized detection-plane amplitude of the F or A mode:
///   u_F = sqrt(2ka/(pi z)) cos(Bx) sinc(Ax)
///   u_A = -j sqrt(2ka/(pi z)) sin(Bx) sinc(Ax)
Complex mode_amplitude(const SlitGeometry& geom, double x, SpatialMode mode);

/// Integral over the whole detection line of f(x), where f has the form
/// sinc^2(Ax) * (c0 + c1 cos 2Bx + c2 sin 2Bx). Composite Simpson over
/// +-`envelopes` envelope widths, plus the exact tail beyond, whose
/// coefficients are read off f itself.
double detector_line_integral(const SlitGeometry& geom, const std::function<double(double)>& f,
                              double envelopes = 20.0, int intervals = 40000);

/// Composite Simpson rule on [lo, hi] with an even number of intervals.
double simpson(const std::function<double(double)>& f, double lo, double hi, int intervals);

}  // namespace hybrid
