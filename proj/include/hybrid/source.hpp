#pragma once

#include "hybrid/hilbert.hpp"

namespace hybrid {

/// Idler polarization projector |P> = alpha|H> + beta e^{j phi_p}|V>.
struct PolarizationProjection {
  double alpha;
  double beta;
  double phi_p;

  /// Requires alpha, beta >= 0 and alpha^2 + beta^2 = 1 within 1e-12.
  PolarizationProjection(double alpha, double beta, double phi_p);

  static PolarizationProjection left_circular();
  /// Linear polarizer at `angle` from horizontal. Negative components are
  /// folded into phi_p so alpha, beta stay non-negative.
  static PolarizationProjection linear(double angle);
};

/// Hybrid entangled state over (signal polarization, idler path) in the
/// canonical form
///   alpha |V>_s |F>_i + j beta e^{-j phi_p} |H>_s |A>_i .
class HybridState {
 public:
  HybridState(double alpha, double beta, double phi_p);
  explicit HybridState(const PolarizationProjection& p) : HybridState(p.alpha, p.beta, p.phi_p) {}

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double phi_p() const { return phi_p_; }
  const QubitRegisterState& vector() const { return vector_; }

  /// 2 alpha beta.
  double concurrence() const { return 2.0 * alpha_ * beta_; }

 private:
  double alpha_;
  double beta_;
  double phi_p_;
  QubitRegisterState vector_;
};

/// (|H>_s|V>_i + e^{j phi_pol}|V>_s|H>_i)/sqrt2 over (signal-pol, idler-pol).
QubitRegisterState bell_psi(double phi_pol = 0.0);

/// Appends the idler path qubit (|+> + e^{j phi_spa}|->)/sqrt2, expressed in
/// the F/A basis. The signal spatial factor |F>_s is dropped as factorable.
QubitRegisterState attach_idler_spatial(const QubitRegisterState& state, double phi_spa = 0.0);

/// Birefringent double slit: CNOT-like gate with idler polarization as
/// control and idler path as target.
///   |H>|F> -> |H>|F>,  |H>|A> -> |H>|A>,  |V>|F> -> j|V>|A>,  |V>|A> -> j|V>|F>
QubitRegisterState apply_bds(const QubitRegisterState& state);

struct ProjectionOutcome {
  HybridState state;
  double success_probability;
};

/// Projects the idler polarization of the three-qubit GHZ-type state onto
/// `proj`. Throws if the projection annihilates the state or if the result is
/// not of canonical hybrid form (i.e. the input was not the ideal pipeline
/// output).
ProjectionOutcome project_idler_polarization(const QubitRegisterState& state,
                                             const PolarizationProjection& proj);

/// Full preparation chain with phi_pol = phi_spa = 0.
ProjectionOutcome prepare_hybrid_state(const PolarizationProjection& proj);

/// State prepared by a linear idler projection at 2*xi: alpha = cos 2xi,
/// beta = sin 2xi, phi_p = 0 (signs folded into phi_p).
HybridState hes_from_xi(double xi);

struct CvpTriple {
  double concurrence;
  double visibility;
  double predictability;
};

/// Concurrence, slit-basis visibility and path predictability of the idler
/// path's reduced state. C^2 + V^2 + P^2 = 1 for pure states.
CvpTriple cvp_triple(const HybridState& state);

}  // namespace hybrid
