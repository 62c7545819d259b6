#pragma once
// Class-level singularity analysis for the normalized flow on the target:
// the moving class is [eta_0] + t * 2pi c1(K_Y), and the only inputs are
// three pairings against omega^{n-1} on the source.  No flow is integrated;
// everything here is arithmetic on those pairings.

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "inequalities.hpp"

namespace chernlab {

struct FlowClassData {
  double lambda_total = 0.0;  // integral of lambda_omega omega^n
  double eta0_pairing = 0.0;  // integral of f* eta0 ^ omega^{n-1}, > 0
  double ky_pairing = 0.0;    // integral of f* c1(K_Y) ^ omega^{n-1}, >= 0
  int dim_source = 1;
};

inline void validate_class_data(const FlowClassData& d) {
  if (!(std::isfinite(d.lambda_total) && std::isfinite(d.eta0_pairing) &&
        std::isfinite(d.ky_pairing)))
    throw InvalidClassData("class pairings must be finite");
  if (!(d.eta0_pairing > 0.0))
    throw InvalidClassData("reference class pairing must be positive, got " +
                           std::to_string(d.eta0_pairing));
  if (d.ky_pairing < 0.0)
    throw InvalidClassData("canonical class pairing must be nonnegative, got " +
                           std::to_string(d.ky_pairing));
  if (d.dim_source < 1) throw InvalidClassData("source dimension must be >= 1");
}

// lower bound for sup H along the flow at time t:
// (lambda_total / n) / (eta0_pairing + t * 2pi * ky_pairing)
inline double flow_bound(const FlowClassData& d, double t) {
  validate_class_data(d);
  if (!(t >= 0.0)) throw ConfigInvalid("flow time must be nonnegative");
  const double denom = d.eta0_pairing + t * 2.0 * kPi * d.ky_pairing;
  if (!(denom > 0.0))
    throw NonPositiveDenominator("class pairing denominator " +
                                 std::to_string(denom) + " at t = " +
                                 std::to_string(t));
  return (d.lambda_total / d.dim_source) / denom;
}

enum class FlowType { TypeIIbForced, TypeIIbOrIIIaForced, Inconclusive };

inline const char* flow_type_name(FlowType t) {
  switch (t) {
    case FlowType::TypeIIbForced: return "TypeIIbForced";
    case FlowType::TypeIIbOrIIIaForced: return "TypeIIbOrIIIaForced";
    case FlowType::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct SingularityVerdict {
  std::function<double(double)> bound_fn;
  double limsup_t_times_bound = 0.0;  // +/-inf representable
  FlowType classification = FlowType::Inconclusive;
};

inline SingularityVerdict classify_flow(const FlowClassData& d) {
  validate_class_data(d);
  SingularityVerdict v;
  v.bound_fn = [d](double t) { return flow_bound(d, t); };
  const double inf = std::numeric_limits<double>::infinity();
  if (d.ky_pairing > 0.0) {
    v.limsup_t_times_bound =
        d.lambda_total / (2.0 * kPi * d.dim_source * d.ky_pairing);
  } else if (d.lambda_total > 0.0) {
    v.limsup_t_times_bound = inf;
  } else if (d.lambda_total < 0.0) {
    v.limsup_t_times_bound = -inf;
  } else {
    v.limsup_t_times_bound = 0.0;
  }
  if (d.lambda_total > 0.0)
    v.classification = d.ky_pairing == 0.0 ? FlowType::TypeIIbForced
                                           : FlowType::TypeIIbOrIIIaForced;
  else
    v.classification = FlowType::Inconclusive;
  return v;
}

// mu_alpha >= lambda_total / (n * alpha_pairing)
inline double mu_lower_bound(double lambda_total, double alpha_pairing, int n) {
  if (!(alpha_pairing > 0.0))
    throw NonPositivePairing("reference pairing must be positive, got " +
                             std::to_string(alpha_pairing));
  if (n < 1) throw InvalidClassData("dimension must be >= 1");
  return lambda_total / (n * alpha_pairing);
}

// nu_alpha >= scal_total / (n * alpha_pairing)
inline double nu_lower_bound(double scal_total, double alpha_pairing, int n) {
  if (!(alpha_pairing > 0.0))
    throw NonPositivePairing("reference pairing must be positive, got " +
                             std::to_string(alpha_pairing));
  if (n < 1) throw InvalidClassData("dimension must be >= 1");
  return scal_total / (n * alpha_pairing);
}

// Declared class metadata for a flow scenario.  Declared values win over the
// quadrature route (the pairings are cohomological, so a scenario may state
// them directly); whenever both are available the computed value is recorded
// next to the declared one.
struct FlowScenarioInput {
  std::optional<double> declared_lambda_total;
  std::optional<double> declared_eta0_pairing;
  std::optional<double> declared_ky_pairing;
  std::optional<bool> declared_ky_nef;
  int resolution = 0;
  std::uint64_t seed = 2024;
};

struct FlowScenarioResult {
  FlowClassData data;
  SingularityVerdict verdict;
  double mu_alpha = 0.0;       // against alpha = [eta0]
  double nu_alpha = 0.0;
  double scal_total = 0.0;
  std::map<std::string, double> details;
};

inline FlowScenarioResult end_to_end_flow_scenario(
    const HolomorphicMapModel& f, const HermitianMetricField& omega,
    const HermitianMetricField& eta0, const FlowScenarioInput& in = {}) {
  const ManifoldModel& x = *f.source;
  const ManifoldModel& y = *f.target;
  if (!omega.gauduchon_known)
    throw ConfigInvalid("flow scenarios need a Gauduchon-flagged source metric, '" +
                        omega.name + "' is not");
  if (!eta0.kahler_known)
    throw ConfigInvalid("reference class must come from a Kahler-flagged metric, '" +
                        eta0.name + "' is not");
  const MapClass cls = classify_map(f, omega, eta0);
  if (cls.constancy == Constancy::Constant)
    throw ConstantMapRejected("flow scenarios need a non-constant map");

  const bool nef = in.declared_ky_nef ? *in.declared_ky_nef
                                      : y.topo.canonical_nef.value_or(false);
  if (!nef)
    throw TargetNotNef("canonical class of '" + y.name +
                       "' is not nef; classification hypotheses fail");

  FlowScenarioResult out;
  const int n = x.dim;
  out.data.dim_source = n;

  const QuadratureScheme q = build_scheme(x, in.resolution);
  const double lambda_computed = integrate_top(q, omega, [&](const ChartPoint& p) {
    return lambda_first_eigenvalue(omega, p).lambda_min;
  });
  out.scal_total = integrate_top(q, omega, [&](const ChartPoint& p) {
    return chern_curvature(omega, p).scalar;
  });
  const double eta0_computed =
      pair_form(q, omega, pullback_form(f, eta0), nullptr);
  out.details["computed_lambda_total"] = lambda_computed;
  out.details["computed_eta0_pairing"] = eta0_computed;

  out.data.lambda_total = in.declared_lambda_total.value_or(lambda_computed);
  out.data.eta0_pairing = in.declared_eta0_pairing.value_or(eta0_computed);

  if (in.declared_ky_pairing) {
    out.data.ky_pairing = *in.declared_ky_pairing;
  } else {
    // canonical class as a stated multiple of the target's default metric
    // class: 2pi c1(K_Y) = ratio * [eta_default]
    if (!y.topo.two_pi_c1_canonical_ratio)
      throw ConfigInvalid("target '" + y.name +
                          "' carries no canonical class ratio; declare "
                          "declared_ky_pairing instead");
    const double ratio = *y.topo.two_pi_c1_canonical_ratio;
    const HermitianMetricField& eta_def = model_metric(y, "");
    const double ref_pairing =
        pair_form(q, omega, pullback_form(f, eta_def), nullptr);
    out.data.ky_pairing = (ratio / (2.0 * kPi)) * ref_pairing;
    out.details["computed_ky_pairing"] = out.data.ky_pairing;
  }
  if (out.data.ky_pairing < 0.0)
    throw TargetNotNef("canonical pairing " +
                       std::to_string(out.data.ky_pairing) +
                       " is negative for target '" + y.name + "'");
  if (std::abs(out.data.ky_pairing) < 1e-10) out.data.ky_pairing = 0.0;

  out.verdict = classify_flow(out.data);
  out.mu_alpha = mu_lower_bound(out.data.lambda_total, out.data.eta0_pairing, n);
  out.nu_alpha = nu_lower_bound(out.scal_total, out.data.eta0_pairing, n);
  out.details["limsup_t_times_bound"] = out.verdict.limsup_t_times_bound;
  out.details["bound_t0"] = flow_bound(out.data, 0.0);
  return out;
}

}  // namespace chernlab
