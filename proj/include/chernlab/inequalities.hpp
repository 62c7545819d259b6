#pragma once
// Both sides of the integral inequalities, assembled into verdicts with
// explicit margins and tolerances, plus the pointwise screened-Laplacian
// residual check.
//
// Tolerance policy: tol = max(min_tol, 10 * estimated quadrature error),
// where the estimate is the difference between the integral at the working
// resolution and at the halved mesh (quartered sample count for QMC).  Both
// numbers are stored on the report.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "functionals.hpp"
#include "maps.hpp"
#include "quadrature.hpp"

namespace chernlab {

enum class Verdict {
  Holds,
  HoldsWithEquality,
  FailsWithinTolerance,
  Fails,
  NotApplicable
};

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::HoldsWithEquality: return "HoldsWithEquality";
    case Verdict::FailsWithinTolerance: return "FailsWithinTolerance";
    case Verdict::Fails: return "Fails";
    case Verdict::NotApplicable: return "NotApplicable";
  }
  return "?";
}

inline Verdict verdict_for(double margin, double tol, bool loose = false) {
  if (margin > tol) return Verdict::Holds;
  if (margin < -tol) return Verdict::Fails;
  if (loose && margin < 0.0) return Verdict::FailsWithinTolerance;
  return Verdict::HoldsWithEquality;
}

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double tolerance = 0.0;
  Verdict verdict = Verdict::NotApplicable;
  bool boundary = false;
  std::string provenance;
  std::map<std::string, double> details;
};

struct VerifyOptions {
  int resolution = 0;  // 0 = model default
  std::uint64_t seed = 2024;
  double min_tol = 1e-8;
  bool loose = false;
  // per-node direction suprema inside integrals run a reduced ascent with no
  // sweep; one full-strength certified evaluation audits them per check
  int inner_starts = 8;
  int inner_iters = 60;
  std::size_t scan_budget = 256;
  SupOptions certify;
};

inline SupOptions inner_sup_options(const VerifyOptions& vo) {
  SupOptions o;
  o.starts = vo.inner_starts;
  o.max_iters = vo.inner_iters;
  o.dense_samples = 0;
  o.seed = vo.seed;
  return o;
}

inline double weight_factor(const std::function<double(const ChartPoint&)>& phi,
                            int n, const ChartPoint& p) {
  if (!phi || n == 1) return phi ? std::exp((n - 1.0) * phi(p)) : 1.0;
  return std::exp((n - 1.0) * phi(p));
}

inline double kappa_at_image(const HolomorphicMapModel& f,
                             const HermitianMetricField& eta,
                             const ChartPoint& p, const SupOptions& opts) {
  const ChartPoint im = f.eval(p);
  return kappa(chern_curvature(eta, im), eta.kahler_known, opts).value;
}

// the reduced in-loop ascent must agree with a fully certified run at an
// audit point; a mismatch means the cheap settings cannot be trusted
inline void audit_inner_kappa(const HolomorphicMapModel& f,
                              const HermitianMetricField& eta,
                              const VerifyOptions& vo) {
  Rng rng(vo.seed ^ 0x5eedULL);
  const ChartPoint p = f.source->sample_point(rng);
  const ChartPoint im = f.eval(p);
  const CurvaturePack c = chern_curvature(eta, im);
  const double quick = kappa(c, eta.kahler_known, inner_sup_options(vo)).value;
  const double full = kappa(c, eta.kahler_known, vo.certify).value;
  if (std::abs(full - quick) > 1e-6 * (1.0 + std::abs(full)))
    throw OptimizerInconsistent(
        "reduced in-loop ascent drifted from the certified optimum: " +
        std::to_string(quick) + " vs " + std::to_string(full));
}

inline InequalityReport assemble_report(const std::string& name, double lhs,
                                        double rhs, double err_est,
                                        const VerifyOptions& vo) {
  InequalityReport r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = std::max(vo.min_tol, 10.0 * err_est);
  r.verdict = verdict_for(r.margin, r.tolerance, vo.loose);
  r.details["error_estimate"] = err_est;
  return r;
}

// lhs = integral of lambda_omega e^{(n-1)phi} omega^n
// rhs = integral of (kappa_eta at image) Lambda e^{(n-1)phi} omega^n
inline InequalityReport verify_main_inequality(
    const HolomorphicMapModel& f, const HermitianMetricField& omega,
    const HermitianMetricField& eta,
    const std::function<double(const ChartPoint&)>& weight_phi,
    const VerifyOptions& vo = {}) {
  const ManifoldModel& x = *f.source;
  const int n = x.dim;
  const MapClass cls = classify_map(f, omega, eta);
  if (cls.constancy == Constancy::Constant)
    throw ConstantMapRejected("map '" + f.name + "' has max energy " +
                              std::to_string(cls.max_energy) + " over " +
                              std::to_string(cls.samples) + " samples");
  audit_inner_kappa(f, eta, vo);
  const SupOptions inner = inner_sup_options(vo);
  auto lhs_fn = [&](const ChartPoint& p) {
    return lambda_first_eigenvalue(omega, p).lambda_min *
           weight_factor(weight_phi, n, p);
  };
  auto rhs_fn = [&](const ChartPoint& p) {
    return kappa_at_image(f, eta, p, inner) * energy_density(f, omega, eta, p) *
           weight_factor(weight_phi, n, p);
  };
  const IntegralEstimate lhs = integrate_top_est(x, omega, lhs_fn, vo.resolution);
  const IntegralEstimate rhs = integrate_top_est(x, omega, rhs_fn, vo.resolution);
  InequalityReport r = assemble_report(
      "main_inequality", lhs.value, rhs.value,
      lhs.error_estimate + rhs.error_estimate, vo);
  r.details["lhs_coarse"] = lhs.coarse_value;
  r.details["rhs_coarse"] = rhs.coarse_value;
  r.details["resolution"] = lhs.resolution;
  r.provenance = "map=" + f.name + " source=" + x.name +
                 " res=" + std::to_string(lhs.resolution) +
                 " seed=" + std::to_string(vo.seed);
  return r;
}

// max of sup H over target quadrature nodes plus supplied extra points, with
// a half-budget rerun quantifying scan stability and one certified ascent at
// the best point
struct SupScan {
  double value = 0.0;
  double stability_gap = 0.0;
  int points = 0;
  ChartPoint argmax;
};

inline SupScan scan_sup_hsc(const ManifoldModel& y,
                            const HermitianMetricField& eta,
                            const std::vector<ChartPoint>& extra,
                            const VerifyOptions& vo) {
  std::vector<ChartPoint> pts;
  try {
    const QuadratureScheme q = build_scheme(y, 0);
    pts = subsample_nodes(q, vo.scan_budget);
  } catch (const QuadratureUnavailable&) {
  }
  pts.insert(pts.end(), extra.begin(), extra.end());
  if (pts.empty()) throw QuadratureUnavailable("no points to scan over");
  const SupOptions inner = inner_sup_options(vo);
  SupScan out;
  double best = -std::numeric_limits<double>::infinity();
  double best_half = -std::numeric_limits<double>::infinity();
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double h = sup_hsc(eta, pts[i], inner).value;
    if (h > best) {
      best = h;
      argmax = i;
    }
    if (i % 2 == 0) best_half = std::max(best_half, h);
  }
  const double certified = sup_hsc(eta, pts[argmax], vo.certify).value;
  out.value = std::max(best, certified);
  out.stability_gap = std::abs(best - best_half);
  out.points = static_cast<int>(pts.size());
  out.argmax = pts[argmax];
  // halving the scan may not move the estimate appreciably, else the sampled
  // sup cannot stand in for the true one
  if (out.stability_gap > 1e-3 * (1.0 + std::abs(out.value)))
    throw OptimizerInconsistent(
        "sampled curvature supremum is unstable under scan refinement: gap " +
        std::to_string(out.stability_gap) + " at value " +
        std::to_string(out.value));
  return out;
}

inline std::vector<ChartPoint> image_samples(const HolomorphicMapModel& f,
                                             std::size_t budget) {
  std::vector<ChartPoint> out;
  try {
    const QuadratureScheme q = build_scheme(*f.source, 0);
    for (const ChartPoint& p : subsample_nodes(q, budget))
      out.push_back(f.eval(p));
  } catch (const QuadratureUnavailable&) {
  }
  return out;
}

// pairing integral of weight * alpha ^ omega^{n-1} with an error estimate
inline IntegralEstimate pair_form_est(
    const ManifoldModel& model, const HermitianMetricField& omega,
    const Form11Field& alpha,
    const std::function<double(const ChartPoint&)>& weight, int resolution,
    bool allow_signed = false) {
  const QuadratureScheme fine = build_scheme(model, resolution);
  const QuadratureScheme coarse = build_scheme(model, coarse_resolution(fine));
  IntegralEstimate e;
  e.value = pair_form(fine, omega, alpha, weight, allow_signed);
  e.coarse_value = pair_form(coarse, omega, alpha, weight, allow_signed);
  e.error_estimate = std::abs(e.value - e.coarse_value);
  e.resolution = fine.resolution;
  return e;
}

inline Form11Field pullback_form(const HolomorphicMapModel& f,
                                 const HermitianMetricField& eta) {
  Form11Field a;
  a.dim = f.source->dim;
  a.eval = [&f, &eta](const ChartPoint& p) {
    return pullback_metric(f, eta, p);
  };
  return a;
}

// lhs = 2 pi (n+1) / n, rhs = (sup_Y H) * pairing of f*eta with the source
// power; source must be a projective catalog model with the volume-1 metric
inline InequalityReport verify_cpn_bound(const HolomorphicMapModel& f,
                                         const HermitianMetricField& eta,
                                         const VerifyOptions& vo = {}) {
  const ManifoldModel& x = *f.source;
  const ParsedName pn = parse_catalog_name(x.name);
  if (pn.base != "cp1_fs" && pn.base != "cpn_fs")
    throw ConfigInvalid("projective lower bound needs a projective source, got '" +
                        x.name + "'");
  const HermitianMetricField& omega = model_metric(x, "fs");
  const MapClass cls = classify_map(f, omega, eta);
  if (cls.constancy == Constancy::Constant)
    throw ConstantMapRejected("constant map rejected by the projective bound");
  const int n = x.dim;
  const double lhs = 2.0 * kPi * (n + 1.0) / n;
  const SupScan scan =
      scan_sup_hsc(*f.target, eta, image_samples(f, vo.scan_budget), vo);
  const IntegralEstimate pairing =
      pair_form_est(x, omega, pullback_form(f, eta), nullptr, vo.resolution);
  const double rhs = scan.value * pairing.value;
  const double err = std::abs(scan.value) * pairing.error_estimate +
                     scan.stability_gap * std::abs(pairing.value);
  InequalityReport r = assemble_report("cpn_bound", lhs, rhs, err, vo);
  r.details["sup_h"] = scan.value;
  r.details["sup_h_stability_gap"] = scan.stability_gap;
  r.details["pairing"] = pairing.value;
  r.details["pairing_coarse"] = pairing.coarse_value;
  r.provenance = "map=" + f.name + " scan_points=" + std::to_string(scan.points);
  return r;
}

// lhs = integral of R_omega e^{(n-1)psi} omega^n
// rhs = n * pairing of f*(Ric eta) (signed form) with the weight
inline InequalityReport verify_degeneracy_inequality(
    const HolomorphicMapModel& f, const HermitianMetricField& omega,
    const HermitianMetricField& eta,
    const std::function<double(const ChartPoint&)>& weight_psi,
    const VerifyOptions& vo = {}) {
  if (omega.dim != eta.dim)
    throw DimensionMismatch("volume-ratio inequality needs equal dimensions");
  const ManifoldModel& x = *f.source;
  const int n = x.dim;
  const MapClass cls = classify_map(f, omega, eta);
  if (cls.degeneracy != Degeneracy::NonDegenerate)
    throw DegenerateMapRejected("map '" + f.name + "' has max volume ratio " +
                                std::to_string(cls.max_density));
  auto lhs_fn = [&](const ChartPoint& p) {
    return chern_curvature(omega, p).scalar * weight_factor(weight_psi, n, p);
  };
  const IntegralEstimate lhs = integrate_top_est(x, omega, lhs_fn, vo.resolution);
  Form11Field ric_pullback;
  ric_pullback.dim = n;
  ric_pullback.eval = [&](const ChartPoint& p) {
    const MapJet mj = f.jet(p);
    const MatC ric = chern_curvature(eta, mj.image).ricci;
    return MatC(mj.jac.transpose() * ric * mj.jac.conjugate());
  };
  auto wfn = [&](const ChartPoint& p) { return weight_factor(weight_psi, n, p); };
  // Ricci pullbacks are legitimately signed; position checks stay off here
  const IntegralEstimate pairing =
      pair_form_est(x, omega, ric_pullback, wfn, vo.resolution, true);
  const double rhs = n * pairing.value;
  InequalityReport r = assemble_report(
      "degeneracy_inequality", lhs.value, rhs,
      lhs.error_estimate + n * pairing.error_estimate, vo);
  r.details["pairing"] = pairing.value;
  r.details["resolution"] = lhs.resolution;
  r.provenance = "map=" + f.name + " source=" + x.name;
  return r;
}

struct ChernLuSample {
  double residual = 0.0;   // laplacian - screened curvature combination
  double laplacian = 0.0;  // Delta_omega log(Lambda + eps)
  double lambda = 0.0;
  double kappa_im = 0.0;
  double energy = 0.0;
};

// Delta_omega log(Lambda+eps) >= lambda * Lambda/(Lambda+eps)
//                              - kappa(im) * Lambda * Lambda/(Lambda+eps)
inline ChernLuSample chern_lu_residual(const HolomorphicMapModel& f,
                                       const HermitianMetricField& omega,
                                       const HermitianMetricField& eta,
                                       const ChartPoint& p, double eps,
                                       const VerifyOptions& vo = {}) {
  if (!(eps > 0.0)) throw ConfigInvalid("screening constant must be positive");
  const int n = omega.dim;
  ChernLuSample out;
  out.energy = energy_density(f, omega, eta, p);
  ScalarField logl;
  logl.value = [&](const ChartPoint& q) {
    return std::log(energy_density(f, omega, eta, q) + eps);
  };
  const MatC g = eval_metric(omega, p);
  const MatC ginv = hermitian_inverse(g);
  out.laplacian = metric_laplacian(ginv, scalar_hessian(logl, p, n));
  out.lambda = lambda_first_eigenvalue(omega, p).lambda_min;
  out.kappa_im = kappa_at_image(f, eta, p, vo.certify);
  const double screen = out.energy / (out.energy + eps);
  out.residual =
      out.laplacian - (out.lambda * screen - out.kappa_im * out.energy * screen);
  return out;
}

// integral of (Lambda/(Lambda+eps)) (lambda - kappa Lambda) omega^n;
// eps = 0 gives the unscreened limit integrand
inline double screened_deficit_integral(const HolomorphicMapModel& f,
                                        const HermitianMetricField& omega,
                                        const HermitianMetricField& eta,
                                        double eps,
                                        const VerifyOptions& vo = {}) {
  const SupOptions inner = inner_sup_options(vo);
  const QuadratureScheme q = build_scheme(*f.source, vo.resolution);
  return integrate_top(q, omega, [&](const ChartPoint& p) {
    const double lam = lambda_first_eigenvalue(omega, p).lambda_min;
    const double kap = kappa_at_image(f, eta, p, inner);
    const double e = energy_density(f, omega, eta, p);
    const double screen = eps > 0.0 ? e / (e + eps) : 1.0;
    return screen * (lam - kap * e);
  });
}

// reported only when the target sectional supremum is genuinely negative
inline InequalityReport verify_schwarz_integral(const HolomorphicMapModel& f,
                                                const HermitianMetricField& omega,
                                                const HermitianMetricField& eta,
                                                const VerifyOptions& vo = {}) {
  const ManifoldModel& x = *f.source;
  const int m = f.target->dim;
  const SupScan scan =
      scan_sup_hsc(*f.target, eta, image_samples(f, vo.scan_budget), vo);
  InequalityReport r;
  r.name = "schwarz_integral";
  r.details["sup_h"] = scan.value;
  r.provenance = "map=" + f.name + " scan_points=" + std::to_string(scan.points);
  if (scan.value >= -1e-9) {
    r.verdict = Verdict::NotApplicable;
    r.boundary = std::abs(scan.value) <= 1e-9;
    r.tolerance = vo.min_tol;
    return r;
  }
  double inf_lambda = std::numeric_limits<double>::infinity();
  const QuadratureScheme q = build_scheme(x, vo.resolution);
  for (const ChartPoint& p : subsample_nodes(q, vo.scan_budget))
    inf_lambda =
        std::min(inf_lambda, lambda_first_eigenvalue(omega, p).lambda_min);
  const IntegralEstimate pairing =
      pair_form_est(x, omega, pullback_form(f, eta), nullptr, vo.resolution);
  const QuadratureScheme fine = build_scheme(x, vo.resolution);
  const double vol = total_volume(fine, omega);
  const double rhs =
      ((m + 1.0) / (2.0 * m)) * scan.value * pairing.value / vol;
  r = assemble_report("schwarz_integral", inf_lambda, rhs,
                      pairing.error_estimate + scan.stability_gap, vo);
  r.details["sup_h"] = scan.value;
  r.details["volume"] = vol;
  r.provenance = "map=" + f.name;
  return r;
}

// pointwise chain n kappa g >= ((n+1)/2) H_sup g >= (R/n) g = Ric for
// Einstein catalog metrics; each link reported with the minimum generalized
// eigenvalue of its difference as the margin
inline std::vector<InequalityReport> verify_equality_case_ke(
    const ManifoldModel& model, const HermitianMetricField& eta,
    const VerifyOptions& vo = {}) {
  if (!eta.einstein_known)
    throw NotEinstein("metric '" + eta.name + "' is not declared Einstein");
  const int n = model.dim;
  const int points = 6;
  Rng rng(vo.seed);
  double link1 = std::numeric_limits<double>::infinity();
  double link2 = std::numeric_limits<double>::infinity();
  double link3 = std::numeric_limits<double>::infinity();
  double einstein_defect = 0.0;
  auto min_gen_eig = [](const MatC& a, const MatC& g) {
    Eigen::GeneralizedSelfAdjointEigenSolver<MatC> ges(a, g);
    if (ges.info() != Eigen::Success)
      throw EigenSolverFailure("chain link eigensolve failed");
    return ges.eigenvalues()(0);
  };
  for (int s = 0; s < points; ++s) {
    const ChartPoint p = model.sample_point(rng);
    const CurvaturePack c = chern_curvature(eta, p);
    const KappaValue k = kappa(c, eta.kahler_known, vo.certify);
    const double hsup = k.branch == KappaBranch::KahlerRho
                            ? k.h_sup
                            : sup_hsc(c, vo.certify).value;
    const MatC a1 = n * k.value * c.g - 0.5 * (n + 1.0) * hsup * c.g;
    const MatC a2 = 0.5 * (n + 1.0) * hsup * c.g - (c.scalar / n) * c.g;
    const MatC a3 = (c.scalar / n) * c.g - c.ricci;
    link1 = std::min(link1, min_gen_eig(a1, c.g));
    link2 = std::min(link2, min_gen_eig(a2, c.g));
    link3 = std::min(link3, min_gen_eig(a3, c.g));
    einstein_defect = std::max(
        einstein_defect,
        ((c.scalar / n) * c.g - c.ricci).cwiseAbs().maxCoeff() /
            (1.0 + std::abs(c.scalar)));
  }
  if (einstein_defect > 1e-6)
    throw NotEinstein("declared Einstein metric '" + eta.name +
                      "' has relative Ricci defect " +
                      std::to_string(einstein_defect));
  const double tol = std::max(vo.min_tol, 1e-7);
  std::vector<InequalityReport> out;
  auto push = [&](const std::string& name, double margin) {
    InequalityReport r;
    r.name = name;
    r.lhs = 0.0;
    r.rhs = margin;
    r.margin = margin;
    r.tolerance = tol;
    r.verdict = verdict_for(margin, tol, vo.loose);
    r.provenance = "model=" + model.name + " points=" + std::to_string(points);
    out.push_back(r);
  };
  push("ke_chain_bound_vs_sectional", link1);
  push("ke_chain_sectional_vs_scalar", link2);
  push("ke_chain_scalar_vs_ricci", link3);
  return out;
}

}  // namespace chernlab
