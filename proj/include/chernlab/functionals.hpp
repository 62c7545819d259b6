#pragma once
// Extremal and averaged curvature quantities at a point: the first
// eigenvalue of the second Ricci form, holomorphic sectional and bisectional
// curvature, their direction suprema, the kappa bound, Berger's average.
//
// The direction suprema are nonconvex quartic maximizations.  Policy: a
// deterministic multi-start ascent produces the value, then an independent
// seeded dense sweep certifies it; a sweep that beats the optimizer beyond
// certification tolerance is an error, never silently accepted.

#include <algorithm>
#include <cmath>
#include <vector>

#include "curvature.hpp"
#include "rng.hpp"

namespace chernlab {

struct EigenResult {
  double lambda_min = 0.0;
  VecC eigvec;       // pairing-convention witness, unit g-norm
  double residual = 0.0;
};

// Smallest generalized eigenvalue of (second Ricci, g).  The solver works in
// adjoint coordinates v; the pairing-convention witness W with
// Ric2(W, Wbar) = lambda |W|^2_g is W = conj(v).
inline EigenResult lambda_first_eigenvalue(const CurvaturePack& c) {
  Eigen::GeneralizedSelfAdjointEigenSolver<MatC> ges(c.second_ricci, c.g);
  if (ges.info() != Eigen::Success)
    throw EigenSolverFailure("generalized eigensolve for the second Ricci failed");
  EigenResult out;
  out.lambda_min = ges.eigenvalues()(0);
  const VecC v = ges.eigenvectors().col(0);
  out.residual =
      (c.second_ricci * v - out.lambda_min * c.g * v).cwiseAbs().maxCoeff();
  VecC w = v.conjugate();
  w /= std::sqrt(metric_norm2(c.g, w));
  out.eigvec = w;
  return out;
}

inline EigenResult lambda_first_eigenvalue(const HermitianMetricField& m,
                                           const ChartPoint& p) {
  return lambda_first_eigenvalue(chern_curvature(m, p));
}

inline void require_nonzero(const VecC& w, const char* who) {
  if (!(w.squaredNorm() > 0.0)) throw ZeroVector(who);
}

inline double hsc(const CurvaturePack& c, const VecC& w) {
  require_nonzero(w, "holomorphic sectional curvature of the zero vector");
  const double n2 = metric_norm2(c.g, w);
  return curvature_form(c, w, w) / (n2 * n2);
}

inline double hsc(const HermitianMetricField& m, const ChartPoint& p,
                  const VecC& w) {
  return hsc(chern_curvature(m, p), w);
}

inline double bisectional(const CurvaturePack& c, const VecC& w,
                          const VecC& v) {
  require_nonzero(w, "bisectional curvature of a zero vector");
  require_nonzero(v, "bisectional curvature of a zero vector");
  return curvature_form(c, w, v) /
         (metric_norm2(c.g, w) * metric_norm2(c.g, v));
}

inline double bisectional(const HermitianMetricField& m, const ChartPoint& p,
                          const VecC& w, const VecC& v) {
  return bisectional(chern_curvature(m, p), w, v);
}

struct SupOptions {
  int starts = 64;            // quasi-random starts, plus coordinate directions
  int max_iters = 200;
  int dense_samples = 10000;  // certification sweep size
  double cert_tol_factor = 1e-6;
  std::uint64_t seed = 2024;  // used by the certification sweep only
};

struct SupResult {
  double value = 0.0;
  VecC witness;
  VecC witness2;          // second direction (bisectional only)
  double dense_best = 0.0;
  int iterations = 0;
};

namespace detail {

// deterministic start directions: complex normals driven by the Halton
// sequence, independent of the run seed
inline VecC halton_direction(std::uint64_t index, int n) {
  std::vector<double> u = halton_point(index, 2 * n);
  VecC w(n);
  for (int i = 0; i < n; ++i) {
    const double u1 = std::max(u[static_cast<std::size_t>(2 * i)], 1e-12);
    const double u2 = u[static_cast<std::size_t>(2 * i + 1)];
    const double r = std::sqrt(-2.0 * std::log(u1));
    w[i] = r * Complex(std::cos(2.0 * kPi * u2), std::sin(2.0 * kPi * u2));
  }
  if (!(w.squaredNorm() > 0.0)) w[0] = 1.0;
  return w;
}

// d/dWbar_m of N(W) = R(W,Wbar,W,Wbar)
inline VecC quartic_grad_conj(const CurvaturePack& c, const VecC& w) {
  const int n = c.r.dim();
  VecC g = VecC::Zero(n);
  for (int m = 0; m < n; ++m) {
    Complex acc(0.0, 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          acc += c.r(i, m, k, l) * w[i] * w[k] * std::conj(w[l]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          acc += c.r(i, j, k, m) * w[i] * std::conj(w[j]) * w[k];
    g[m] = acc;
  }
  return g;
}

inline VecC normalized_g(const MatC& g, VecC w) {
  const double n2 = metric_norm2(g, w);
  if (!(n2 > 0.0)) throw ZeroVector("direction collapsed during ascent");
  return VecC(w / std::sqrt(n2));
}

// one ascent run on the quartic Rayleigh quotient H(W); scale invariance
// lets us renormalize every step
inline double ascend_hsc(const CurvaturePack& c, VecC& w, int max_iters,
                         int* iters_out) {
  w = normalized_g(c.g, w);
  double h = hsc(c, w);
  int it = 0;
  for (; it < max_iters; ++it) {
    const double n2 = metric_norm2(c.g, w);  // = 1 after normalization
    const VecC dn = quartic_grad_conj(c, w);
    const VecC dd = 2.0 * n2 * (c.g.transpose() * w);  // d/dWbar of (|W|^2_g)^2
    const double numer = curvature_form(c, w, w);
    const VecC grad = (dn * (n2 * n2) - numer * dd) / (n2 * n2 * n2 * n2);
    const double gn = grad.norm();
    if (gn < 1e-14 * (1.0 + std::abs(h))) break;
    double step = 0.5 / (1.0 + gn);
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      VecC cand = normalized_g(c.g, w + step * grad);
      const double hc = hsc(c, cand);
      if (hc > h + 1e-15 * (1.0 + std::abs(h))) {
        w = cand;
        h = hc;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  if (iters_out) *iters_out += it;
  return h;
}

}  // namespace detail

inline SupResult sup_hsc(const CurvaturePack& c, const SupOptions& opts = {}) {
  const int n = c.r.dim();
  SupResult out;
  out.witness = VecC::Zero(n);
  double best = -std::numeric_limits<double>::infinity();
  VecC best_w;
  int iters = 0;
  auto consider = [&](VecC w0) {
    const double h = detail::ascend_hsc(c, w0, opts.max_iters, &iters);
    if (h > best) {
      best = h;
      best_w = w0;
    }
  };
  for (int i = 0; i < n; ++i) consider(VecC::Unit(n, i));
  for (int s = 0; s < opts.starts; ++s)
    consider(detail::halton_direction(static_cast<std::uint64_t>(s), n));
  out.value = best;
  out.witness = best_w;
  out.iterations = iters;

  if (opts.dense_samples <= 0) {  // certification delegated to the caller
    out.dense_best = out.value;
    return out;
  }
  Rng rng(opts.seed);
  double dense = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < opts.dense_samples; ++s) {
    VecC w = rng.cnormal_vec(n);
    if (!(w.squaredNorm() > 0.0)) continue;
    dense = std::max(dense, hsc(c, w));
  }
  out.dense_best = dense;
  const double cert_tol = opts.cert_tol_factor * (1.0 + std::abs(out.value));
  if (dense > out.value + cert_tol)
    throw OptimizerInconsistent("dense sweep found sectional curvature " +
                                std::to_string(dense) + " above optimized " +
                                std::to_string(out.value));
  return out;
}

inline SupResult sup_hsc(const HermitianMetricField& m, const ChartPoint& p,
                         const SupOptions& opts = {}) {
  return sup_hsc(chern_curvature(m, p), opts);
}

// Alternating maximization for BK(W,V): with one direction fixed the other
// enters through a Hermitian form, so each half-step is a top generalized
// eigenvector.  The slot matrices act on adjoint coordinates; witnesses are
// conjugated back.
inline SupResult sup_bisectional(const CurvaturePack& c,
                                 const SupOptions& opts = {}) {
  const int n = c.r.dim();
  auto top_pair = [&](const MatC& form) {
    Eigen::GeneralizedSelfAdjointEigenSolver<MatC> ges(form, c.g);
    if (ges.info() != Eigen::Success)
      throw EigenSolverFailure("bisectional half-step eigensolve failed");
    const int last = n - 1;
    VecC w = ges.eigenvectors().col(last).conjugate();
    return detail::normalized_g(c.g, w);
  };
  SupResult out;
  double best = -std::numeric_limits<double>::infinity();
  VecC best_w, best_v;
  int iters = 0;
  auto run = [&](VecC w) {
    w = detail::normalized_g(c.g, w);
    VecC v = top_pair(slot_matrix_second(c, w));
    double val = bisectional(c, w, v);
    for (int it = 0; it < opts.max_iters; ++it) {
      ++iters;
      w = top_pair(slot_matrix_first(c, v));
      v = top_pair(slot_matrix_second(c, w));
      const double nv = bisectional(c, w, v);
      if (nv <= val + 1e-13 * (1.0 + std::abs(val))) {
        val = std::max(val, nv);
        break;
      }
      val = nv;
    }
    if (val > best) {
      best = val;
      best_w = w;
      best_v = v;
    }
  };
  for (int i = 0; i < n; ++i) run(VecC::Unit(n, i));
  for (int s = 0; s < opts.starts; ++s)
    run(detail::halton_direction(static_cast<std::uint64_t>(s) + 1000, n));
  out.value = best;
  out.witness = best_w;
  out.witness2 = best_v;
  out.iterations = iters;

  if (opts.dense_samples <= 0) {
    out.dense_best = out.value;
    return out;
  }
  Rng rng(opts.seed + 1);
  double dense = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < opts.dense_samples; ++s) {
    VecC w = rng.cnormal_vec(n);
    VecC v = rng.cnormal_vec(n);
    if (!(w.squaredNorm() > 0.0) || !(v.squaredNorm() > 0.0)) continue;
    dense = std::max(dense, bisectional(c, w, v));
  }
  out.dense_best = dense;
  const double cert_tol = opts.cert_tol_factor * (1.0 + std::abs(out.value));
  if (dense > out.value + cert_tol)
    throw OptimizerInconsistent("dense sweep found bisectional curvature " +
                                std::to_string(dense) + " above optimized " +
                                std::to_string(out.value));
  return out;
}

inline SupResult sup_bisectional(const HermitianMetricField& m,
                                 const ChartPoint& p,
                                 const SupOptions& opts = {}) {
  return sup_bisectional(chern_curvature(m, p), opts);
}

enum class KappaBranch { KahlerRho, NonKahlerBK };

struct KappaValue {
  double value = 0.0;
  KappaBranch branch = KappaBranch::KahlerRho;
  bool boundary = false;  // |H_sup| at the rho discontinuity
  double h_sup = 0.0;     // rho branch only
  VecC witness;
  VecC witness2;
};

inline double rho_factor(double s, int n) {
  return s <= 0.0 ? (n + 1.0) / (2.0 * n) : 1.0;
}

// Branching keys off the metric's declared Kahler flag: the definition is a
// property of the metric, not of the point.
inline KappaValue kappa(const CurvaturePack& c, bool kahler,
                        const SupOptions& opts = {}) {
  const int n = c.r.dim();
  KappaValue out;
  if (kahler) {
    const SupResult s = sup_hsc(c, opts);
    out.branch = KappaBranch::KahlerRho;
    out.h_sup = s.value;
    out.witness = s.witness;
    if (std::abs(s.value) <= 1e-9) {
      out.value = 0.0;
      out.boundary = true;
    } else {
      out.value = rho_factor(s.value, n) * s.value;
    }
  } else {
    const SupResult s = sup_bisectional(c, opts);
    out.branch = KappaBranch::NonKahlerBK;
    out.value = s.value;
    out.witness = s.witness;
    out.witness2 = s.witness2;
  }
  return out;
}

inline KappaValue kappa(const HermitianMetricField& m, const ChartPoint& p,
                        const SupOptions& opts = {}) {
  return kappa(chern_curvature(m, p), m.kahler_known, opts);
}

struct BergerResult {
  double average = 0.0;
  double reference = 0.0;  // 2 R / (n (n+1))
  double std_error = 0.0;
  int samples = 0;
};

// Average of H over unitarily distributed directions (normalized complex
// Gaussians) against the closed-form multiple of scalar curvature.  In
// dimension 1 the average is the pointwise value, no sampling.
inline BergerResult berger_average(const HermitianMetricField& m,
                                   const ChartPoint& p, int num_samples,
                                   std::uint64_t seed) {
  if (!m.kahler_known)
    throw NonKahlerMetric("direction-average identity needs a Kahler metric");
  if (num_samples < 1000)
    throw ConfigInvalid("direction average needs at least 1000 samples");
  const CurvaturePack c = chern_curvature(m, p);
  const int n = m.dim;
  BergerResult out;
  out.reference = 2.0 * c.scalar / (n * (n + 1.0));
  if (n == 1) {
    out.average = hsc(c, VecC::Unit(1, 0));
    out.samples = 1;
    return out;
  }
  Rng rng(seed);
  Accumulator sum, sumsq;
  int kept = 0;
  // Directions must be isotropic for the metric at p, not for the chart
  // coordinates, so push standard Gaussians through the inverse Cholesky
  // factor; g = L L^H gives |L^{-H} u|_g = |u|.
  const Eigen::LLT<MatC> llt(c.g);
  for (int s = 0; s < num_samples; ++s) {
    VecC w = llt.matrixU().solve(rng.cnormal_vec(n));
    if (!(w.squaredNorm() > 0.0)) continue;
    const double h = hsc(c, w);
    sum.add(h);
    sumsq.add(h * h);
    ++kept;
  }
  out.samples = kept;
  out.average = sum.total() / kept;
  const double var =
      std::max(0.0, sumsq.total() / kept - out.average * out.average);
  out.std_error = std::sqrt(var / kept);
  return out;
}

struct RoydenSample {
  double lhs = 0.0;     // R_{a bbar c dbar} A^{a bbar} A^{c dbar}
  double lambda = 0.0;  // tr_omega f*eta = sum eta_{a bbar} A^{a bbar}
};

// The transfer matrix A^{a bbar} = g^{jbar i} f^a_i conj(f^b_j) contracted
// twice into the target curvature, against the energy trace.
inline RoydenSample royden_contraction(const CurvaturePack& target,
                                       const MatC& source_g, const MatC& jac) {
  const int mdim = static_cast<int>(target.g.rows());
  const MatC h = hermitian_inverse(source_g);
  const MatC a = jac * h.transpose() * jac.adjoint();
  RoydenSample out;
  Complex lhs(0.0, 0.0), lam(0.0, 0.0);
  for (int al = 0; al < mdim; ++al)
    for (int be = 0; be < mdim; ++be) {
      lam += target.g(al, be) * a(al, be);
      for (int ga = 0; ga < mdim; ++ga)
        for (int de = 0; de < mdim; ++de)
          lhs += target.r(al, be, ga, de) * a(al, be) * a(ga, de);
    }
  out.lhs = lhs.real();
  out.lambda = lam.real();
  return out;
}

}  // namespace chernlab
