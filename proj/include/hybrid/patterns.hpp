#pragma once

#include "hybrid/optics.hpp"
#include "hybrid/source.hpp"

namespace hybrid {

// Detection densities. Joint densities are per metre per radian with the
// analyzer angle normalized over [0, 2pi); spatial marginals are per metre,
// polarization marginals per radian. The analyzer phase phi_s is fixed at 0.

/// Joint coincidence density, computed as (1/pi)|<theta_s|<x|psi>|^2 from the
/// state vector and the mode amplitudes.
double p_cc(const HybridState& state, const SlitGeometry& geom, double theta_s, double x);

/// Idler single-detection density <u(x)|rho_path|u(x)> from the reduced
/// idler path state.
double p_1s(const HybridState& state, const SlitGeometry& geom, double x);

/// Signal polarization density (1/pi)<theta_s|rho_signal|theta_s>.
double p_1p(const HybridState& state, double theta_s);

/// p_cc - p_1s p_1p + (kappa/4) sinc^2(Ax).
double p_cc_corrected(const HybridState& state, const SlitGeometry& geom, double theta_s, double x);

/// Coincidence rate with the idler detector opened to a bucket: the
/// polarization-projected state's squared norm over pi. Equals the
/// line integral of p_cc, since u_F and u_A are orthonormal.
double p_cc_bucket(const HybridState& state, double theta_s);

/// Closed-form expressions, kept as independent references for the
/// amplitude-route functions above.
namespace closed_form {

/// kappa sinc^2(Ax) [b^2 cos^2 t sin^2 Bx + a^2 sin^2 t cos^2 Bx
///                   + (1/2) a b sin 2t sin 2Bx cos phi_p]
double p_cc(const HybridState& state, const SlitGeometry& geom, double theta_s, double x);

/// (ka/(pi z)) sinc^2(Ax) [1 + (a^2 - b^2) cos 2Bx]
double p_1s(const HybridState& state, const SlitGeometry& geom, double x);

/// (1/2pi) [1 + (b^2 - a^2) cos 2t]
double p_1p(const HybridState& state, double theta_s);

/// (kappa/4) sinc^2(Ax) [1 + C sin 2t sin 2Bx cos phi_p - C^2 cos 2t cos 2Bx]
double p_cc_corrected(const HybridState& state, const SlitGeometry& geom, double theta_s, double x);

}  // namespace closed_form

}  // namespace hybrid
