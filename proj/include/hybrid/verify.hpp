#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hybrid/optics.hpp"
#include "hybrid/source.hpp"

namespace hybrid {

/// Reference formulas checked by the invariant suite. Swapping one of them
/// for a deliberately wrong variant must make the suite fail.
struct ReferenceFormulas {
  std::function<double(const HybridState&, const SlitGeometry&, double)> p_1s;
  std::function<double(const HybridState&, const SlitGeometry&, double, double)> p_cc_corrected;

  static ReferenceFormulas standard();
};

/// Deliberate errors used to show the suite has teeth.
enum class Mutation {
  None,
  /// One-photon spatial fringe with argument Bx instead of 2Bx.
  FringeArgument,
  /// Corrected closed form with +C^2 cos 2t cos 2Bx.
  CorrectedSign,
};

ReferenceFormulas mutated(Mutation m);
Mutation parse_mutation(const std::string& name);

struct CheckResult {
  std::string name;
  double max_error;
  double tolerance;
  bool passed;
};

struct VerifyOptions {
  int random_states = 1000;
  std::uint64_t seed = 20240101;
  SlitGeometry geometry = SlitGeometry::standard();
};

/// Analytic invariant suite: marginalization over the analyzer angle,
/// amplitude route vs closed-form joint density, corrected assembly vs
/// closed form, line-integral closure of p_1s and p_cc, the C/V/P triple,
/// and complementarity at the best setting.
std::vector<CheckResult> run_invariant_suite(const ReferenceFormulas& formulas, const VerifyOptions& options = {});

/// Random normalized hybrid state with phi_p uniform in [0, 2pi).
HybridState random_hybrid_state(std::uint64_t seed, std::uint64_t index);
/// Same, with phi_p = 0.
HybridState random_real_hybrid_state(std::uint64_t seed, std::uint64_t index);

}  // namespace hybrid
