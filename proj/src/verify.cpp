#include "hybrid/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hybrid/analysis.hpp"
#include "hybrid/patterns.hpp"
#include "hybrid/scan.hpp"

namespace hybrid {
namespace {

using std::numbers::pi;

class Check {
 public:
  Check(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}
  void observe(double err) {
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    max_ = std::max(max_, err);
  }
  CheckResult result() const { return {name_, max_, tol_, max_ <= tol_}; }

 private:
  std::string name_;
  double tol_;
  double max_ = 0.0;
};

}  // namespace

ReferenceFormulas ReferenceFormulas::standard() {
  return {[](const HybridState& s, const SlitGeometry& g, double x) { return closed_form::p_1s(s, g, x); },
          [](const HybridState& s, const SlitGeometry& g, double t, double x) {
            return closed_form::p_cc_corrected(s, g, t, x);
          }};
}

ReferenceFormulas mutated(Mutation m) {
  ReferenceFormulas f = ReferenceFormulas::standard();
  switch (m) {
    case Mutation::None:
      break;
    case Mutation::FringeArgument:
      f.p_1s = [](const HybridState& s, const SlitGeometry& g, double x) {
        const double env = sinc(g.envelope_constant() * x);
        const double diff = s.alpha() * s.alpha() - s.beta() * s.beta();
        return g.envelope_constant() / pi * env * env * (1.0 + diff * std::cos(g.fringe_constant() * x));
      };
      break;
    case Mutation::CorrectedSign:
      f.p_cc_corrected = [](const HybridState& s, const SlitGeometry& g, double t, double x) {
        const double c = s.concurrence();
        const double env = sinc(g.envelope_constant() * x);
        const double arg = 2.0 * g.fringe_constant() * x;
        return 0.25 * g.kappa() * env * env *
               (1.0 + c * std::sin(2.0 * t) * std::sin(arg) * std::cos(s.phi_p()) +
                c * c * std::cos(2.0 * t) * std::cos(arg));
      };
      break;
  }
  return f;
}

Mutation parse_mutation(const std::string& name) {
  if (name.empty() || name == "none") return Mutation::None;
  if (name == "fringe-argument") return Mutation::FringeArgument;
  if (name == "corrected-sign") return Mutation::CorrectedSign;
  throw std::invalid_argument("unknown mutation '" + name + "' (none, fringe-argument, corrected-sign)");
}

HybridState random_hybrid_state(std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 gen(derive_seed(seed, index));
  std::uniform_real_distribution<double> angle(0.0, pi / 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  const double t = angle(gen);
  return {std::cos(t), std::sin(t), phase(gen)};
}

HybridState random_real_hybrid_state(std::uint64_t seed, std::uint64_t index) {
  const HybridState s = random_hybrid_state(seed, index);
  return {s.alpha(), s.beta(), 0.0};
}

std::vector<CheckResult> run_invariant_suite(const ReferenceFormulas& formulas, const VerifyOptions& options) {
  const SlitGeometry& geom = options.geometry;
  const double density_scale = geom.envelope_constant() / pi;
  const double kappa = geom.kappa();

  Check marginal("marginalization over the analyzer angle", 1e-12);
  Check joint("joint density: amplitude route vs closed form", 1e-12);
  Check corrected("corrected density: assembly vs closed form", 1e-12);
  Check triple("C^2 + V^2 + P^2 = 1", 1e-12);
  Check comp("complementarity at best setting (phi_p = 0)", 1e-12);
  Check onephoton("one-photon visibility: reduced state vs |a^2 - b^2|", 1e-12);
  Check norm("line integral of p_1s = 1", 1e-6);
  Check bucket("line integral of p_cc = p_1p", 1e-6);

  const double span = 1.2 * geom.envelope_null();
  for (int i = 0; i < options.random_states; ++i) {
    const HybridState s = random_hybrid_state(options.seed, static_cast<std::uint64_t>(i));
    for (int ti = 0; ti < 7; ++ti) {
      const double theta = pi * ti / 7.0 + 0.1;
      for (int xi = 0; xi < 9; ++xi) {
        const double x = -span + 2.0 * span * xi / 8.0 + 1e-5;
        const double pair = p_cc(s, geom, theta, x) + p_cc(s, geom, theta + pi / 2.0, x);
        marginal.observe(std::abs(pi * pair - formulas.p_1s(s, geom, x)) / density_scale);
        joint.observe(std::abs(p_cc(s, geom, theta, x) - closed_form::p_cc(s, geom, theta, x)) / kappa);
        corrected.observe(std::abs(p_cc_corrected(s, geom, theta, x) - formulas.p_cc_corrected(s, geom, theta, x)) /
                          kappa);
      }
    }
    const CvpTriple t = cvp_triple(s);
    triple.observe(std::abs(t.concurrence * t.concurrence + t.visibility * t.visibility +
                            t.predictability * t.predictability - 1.0));
    onephoton.observe(std::abs(t.visibility - one_photon_visibility(s)));

    const HybridState r = random_real_hybrid_state(options.seed, static_cast<std::uint64_t>(i));
    const double v12 = visibility_analytic(r, geom, ScanKind::Spatial, best_spatial_setting(r).setting).v_corrected;
    comp.observe(std::abs(complementarity_residual(v12, one_photon_visibility(r))));
  }

  for (int i = 0; i < 5; ++i) {
    const HybridState s = random_hybrid_state(options.seed ^ 0x5eedULL, static_cast<std::uint64_t>(i));
    norm.observe(std::abs(detector_line_integral(geom, [&](double x) { return formulas.p_1s(s, geom, x); }) - 1.0));
    for (double theta : {0.0, 0.4, pi / 4.0, 1.3}) {
      const double integral = detector_line_integral(geom, [&](double x) { return p_cc(s, geom, theta, x); });
      bucket.observe(std::abs(integral - closed_form::p_1p(s, theta)) * 2.0 * pi);
    }
  }

  return {marginal.result(), joint.result(),     corrected.result(), triple.result(),
          comp.result(),     onephoton.result(), norm.result(),      bucket.result()};
}

}  // namespace hybrid
