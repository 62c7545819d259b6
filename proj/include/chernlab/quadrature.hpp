#pragma once
// Quadrature schemes and top-degree integration.
//
// A scheme's weights are coordinate-volume weights: sum w_i F(p_i) ~ integral
// of F over the chart against Lebesgue measure dx dy.  The top power of the
// metric form in chart coordinates is
//   omega^n = n! 2^n det(g) dx^1 dy^1 ... dx^n dy^n,
// so integrate_top multiplies by n! 2^n det(g); the factor is pinned by the
// volume calibration tests (CP^n Fubini-Study at volume 1, tori at n!).
//
// Scheme kinds:
//   sphere_chart  - CP^1 affine chart via z = tan(theta/2) e^{i phi};
//                   Gauss-Legendre in cos(theta) x trapezoid in phi
//   periodic_grid - flat torus cell, equal-weight trapezoid per real axis
//   affine_qmc    - CP^n (n >= 2) Halton points with the exact Fubini-Study
//                   radial inverse-CDF transform (xi = u^{1/n}, rho = xi/(1-xi))
//   annulus_grid  - Hopf shell 1 <= |z| <= 2, Gauss-Legendre in radius and
//                   Hopf angle x trapezoid in the two phases

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "manifold.hpp"
#include "rng.hpp"

namespace chernlab {

inline double factorial_d(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline void gauss_legendre(int n, std::vector<double>& x,
                           std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pn = 0.0, dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      pn = p0;
      dp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = pn / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[static_cast<std::size_t>(n - 1 - i)] = t;
    x[static_cast<std::size_t>(i)] = -t;
    const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
}

// CP^1: chart measure dx dy = dt dphi / (1+t)^2 under z = tan(theta/2)e^{i phi},
// t = cos(theta).  Gauss-Legendre nodes stay off both poles.
inline QuadratureScheme scheme_sphere_chart(int res,
                                            const std::string& chart = "affine0") {
  if (res < 2) res = 2;
  QuadratureScheme q;
  q.kind = "sphere_chart";
  q.resolution = res;
  q.stated_rel_tol = 1e-8;
  const int nphi = 2 * res;
  std::vector<double> xt, wt;
  gauss_legendre(res, xt, wt);
  q.nodes.reserve(static_cast<std::size_t>(res) * nphi);
  q.weights.reserve(static_cast<std::size_t>(res) * nphi);
  for (int i = 0; i < res; ++i) {
    const double t = xt[static_cast<std::size_t>(i)];
    const double r = std::sqrt((1.0 - t) / (1.0 + t));
    const double wrow = wt[static_cast<std::size_t>(i)] * (2.0 * kPi / nphi) /
                        ((1.0 + t) * (1.0 + t));
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * kPi * j / nphi;
      ChartPoint p;
      p.chart = chart;
      p.z.resize(1);
      p.z[0] = r * Complex(std::cos(phi), std::sin(phi));
      q.nodes.push_back(p);
      q.weights.push_back(wrow);
    }
  }
  return q;
}

inline QuadratureScheme scheme_periodic_grid(int res, int n, double cell,
                                             const std::string& chart = "cell") {
  if (res < 2) res = 2;
  QuadratureScheme q;
  q.kind = "periodic_grid";
  q.resolution = res;
  q.stated_rel_tol = 1e-10;
  const int axes = 2 * n;
  std::size_t total = 1;
  for (int a = 0; a < axes; ++a) total *= static_cast<std::size_t>(res);
  const double w = std::pow(cell / res, axes);
  q.nodes.reserve(total);
  q.weights.reserve(total);
  std::vector<int> idx(static_cast<std::size_t>(axes), 0);
  for (std::size_t count = 0; count < total; ++count) {
    ChartPoint p;
    p.chart = chart;
    p.z.resize(n);
    for (int i = 0; i < n; ++i)
      p.z[i] = Complex(cell * idx[static_cast<std::size_t>(2 * i)] / res,
                       cell * idx[static_cast<std::size_t>(2 * i + 1)] / res);
    q.nodes.push_back(p);
    q.weights.push_back(w);
    for (int a = 0; a < axes; ++a) {
      if (++idx[static_cast<std::size_t>(a)] < res) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return q;
}

// Direction on S^{2n-1} from 2n-1 uniforms: squared moduli uniform on the
// simplex (sorted spacings), phases uniform.
inline VecC qmc_direction(const std::vector<double>& u, int n) {
  VecC zeta(n);
  if (n == 1) {
    const double th = 2.0 * kPi * u[1];
    zeta[0] = Complex(std::cos(th), std::sin(th));
    return zeta;
  }
  std::vector<double> cuts(static_cast<std::size_t>(n) - 1);
  for (int i = 0; i + 1 < n; ++i) cuts[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i) + 1];
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> s(static_cast<std::size_t>(n));
  double prev = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    s[static_cast<std::size_t>(i)] = cuts[static_cast<std::size_t>(i)] - prev;
    prev = cuts[static_cast<std::size_t>(i)];
  }
  s[static_cast<std::size_t>(n) - 1] = 1.0 - prev;
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * kPi * u[static_cast<std::size_t>(n) + i];
    zeta[i] = std::sqrt(s[static_cast<std::size_t>(i)]) *
              Complex(std::cos(th), std::sin(th));
  }
  return zeta;
}

// CP^n importance sampling against the Fubini-Study volume of total mass 1
// (metric coefficient c = 1/(2 pi)).  The radial CDF inverts exactly:
// with rho = r^2 and xi = rho/(1+rho), the density is proportional to
// xi^{n-1} d xi, so xi = u^{1/n}.  Weights are the reciprocal density, which
// makes the Fubini-Study volume integral exact by construction.
inline QuadratureScheme scheme_affine_qmc(int samples, int n,
                                          const std::string& chart = "affine0") {
  if (samples < 16) samples = 16;
  QuadratureScheme q;
  q.kind = "affine_qmc";
  q.resolution = samples;
  q.stated_rel_tol = std::max(1e-3, 3.0 / std::sqrt(static_cast<double>(samples)));
  const double c = 1.0 / (2.0 * kPi);
  const double norm =
      factorial_d(n) * std::pow(2.0, n) * std::pow(c, n) * samples;
  q.nodes.reserve(static_cast<std::size_t>(samples));
  q.weights.reserve(static_cast<std::size_t>(samples));
  const int dim_u = 2 * n;
  for (int k = 0; k < samples; ++k) {
    std::vector<double> u = halton_point(static_cast<std::uint64_t>(k), dim_u);
    const double xi = std::pow(u[0], 1.0 / n);
    const double rho = xi / (1.0 - xi);
    const double r = std::sqrt(rho);
    VecC zeta = qmc_direction(u, n);
    ChartPoint p;
    p.chart = chart;
    p.z = r * zeta;
    q.nodes.push_back(p);
    q.weights.push_back(std::pow(1.0 + rho, n + 1) / norm);
  }
  return q;
}

// Hopf shell: z = r (cos a e^{i th1}, sin a e^{i th2}), euclidean volume
// element r^3 cos(a) sin(a) dr da dth1 dth2.
inline QuadratureScheme scheme_annulus_grid(int res,
                                            const std::string& chart = "annulus") {
  if (res < 2) res = 2;
  QuadratureScheme q;
  q.kind = "annulus_grid";
  q.resolution = res;
  q.stated_rel_tol = 1e-6;
  const int nth = 2 * res;
  std::vector<double> xr, wr, xa, wa;
  gauss_legendre(res, xr, wr);
  gauss_legendre(res, xa, wa);
  const double dth = 2.0 * kPi / nth;
  for (int ir = 0; ir < res; ++ir) {
    const double r = 1.5 + 0.5 * xr[static_cast<std::size_t>(ir)];
    const double wrr = 0.5 * wr[static_cast<std::size_t>(ir)];
    for (int ia = 0; ia < res; ++ia) {
      const double a = 0.25 * kPi * (1.0 + xa[static_cast<std::size_t>(ia)]);
      const double waa = 0.25 * kPi * wa[static_cast<std::size_t>(ia)];
      const double base =
          wrr * waa * dth * dth * r * r * r * std::cos(a) * std::sin(a);
      for (int i1 = 0; i1 < nth; ++i1) {
        const double th1 = dth * i1;
        for (int i2 = 0; i2 < nth; ++i2) {
          const double th2 = dth * i2;
          ChartPoint p;
          p.chart = chart;
          p.z.resize(2);
          p.z[0] = r * std::cos(a) * Complex(std::cos(th1), std::sin(th1));
          p.z[1] = r * std::sin(a) * Complex(std::cos(th2), std::sin(th2));
          q.nodes.push_back(p);
          q.weights.push_back(base);
        }
      }
    }
  }
  return q;
}

// integral of h against omega^n
inline double integrate_top(const QuadratureScheme& q,
                            const HermitianMetricField& metric,
                            const std::function<double(const ChartPoint&)>& h) {
  if (q.nodes.empty()) throw QuadratureUnavailable("scheme has no nodes");
  const int n = metric.dim;
  const double factor = factorial_d(n) * std::pow(2.0, n);
  Accumulator acc;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const ChartPoint& p = q.nodes[i];
    const MatC g = metric.eval(p);
    const double det = std::real(g.determinant());
    if (!(det > 0.0) || !std::isfinite(det))
      throw SingularMetric("non-positive metric determinant at a quadrature node");
    acc.add(q.weights[i] * factor * det * h(p));
  }
  return acc.total();
}

inline double total_volume(const QuadratureScheme& q,
                           const HermitianMetricField& metric) {
  return integrate_top(q, metric, [](const ChartPoint&) { return 1.0; });
}

struct IntegralEstimate {
  double value = 0.0;
  double coarse_value = 0.0;
  double error_estimate = 0.0;
  int resolution = 0;
};

inline int coarse_resolution(const QuadratureScheme& q) {
  return q.kind == "affine_qmc" ? q.resolution / 4 : q.resolution / 2;
}

// Same integral at the scheme's resolution and at the halved mesh (quartered
// QMC sample count); the difference is the error estimate the tolerance
// policy feeds on.
inline IntegralEstimate integrate_top_est(
    const ManifoldModel& model, const HermitianMetricField& metric,
    const std::function<double(const ChartPoint&)>& h, int resolution = 0) {
  const QuadratureScheme fine = build_scheme(model, resolution);
  const QuadratureScheme coarse =
      build_scheme(model, coarse_resolution(fine));
  IntegralEstimate e;
  e.value = integrate_top(fine, metric, h);
  e.coarse_value = integrate_top(coarse, metric, h);
  e.error_estimate = std::abs(e.value - e.coarse_value);
  e.resolution = fine.resolution;
  return e;
}

// (1,1)-form data alpha(i,j) = alpha_{i jbar}; may be signed (Ricci pullbacks).
struct Form11Field {
  int dim = 1;
  std::function<MatC(const ChartPoint&)> eval;
};

// integral of weight * alpha ∧ omega^{n-1} via
// alpha ∧ omega^{n-1} = (1/n) tr_omega(alpha) omega^n
// Pullbacks of metrics are positive semidefinite and that is checked at each
// node; signed data (Ricci pullbacks) must opt out via allow_signed.
inline double pair_form(const QuadratureScheme& q,
                        const HermitianMetricField& omega,
                        const Form11Field& alpha,
                        const std::function<double(const ChartPoint&)>& weight = {},
                        bool allow_signed = false) {
  const int n = omega.dim;
  if (alpha.dim != n)
    throw DimensionMismatch("form dim " + std::to_string(alpha.dim) +
                            " vs metric dim " + std::to_string(n));
  return integrate_top(q, omega, [&](const ChartPoint& p) {
    const MatC g = omega.eval(p);
    const MatC ginv = hermitian_inverse(g);
    const MatC a = alpha.eval(p);
    if (!allow_signed) {
      Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (a + a.adjoint()));
      const double lo = es.eigenvalues()(0);
      const double hi = es.eigenvalues()(n - 1);
      if (lo < -1e-9 * (1.0 + std::abs(hi)))
        throw ConfigInvalid(
            "pairing expects positive semidefinite (1,1)-data, min eigenvalue " +
            std::to_string(lo));
    }
    Complex tr(0.0, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) tr += ginv(j, i) * a(i, j);
    const double v = tr.real() / n;
    return weight ? v * weight(p) : v;
  });
}

// integral of (Delta_omega u) omega^n; vanishes when omega is Gauduchon and u
// descends to the model (i ddbar omega^{n-1} = 0 moves both derivatives off u).
inline double gauduchon_residual(const QuadratureScheme& q,
                                 const HermitianMetricField& metric,
                                 const ScalarField& u) {
  const int n = metric.dim;
  return integrate_top(q, metric, [&](const ChartPoint& p) {
    const MatC g = eval_metric(metric, p);
    const MatC ginv = hermitian_inverse(g);
    const MatC hess = scalar_hessian(u, p, n);
    return metric_laplacian(ginv, hess);
  });
}

// Deterministic stride subsample, used by the sup scans and map classifier.
inline std::vector<ChartPoint> subsample_nodes(const QuadratureScheme& q,
                                               std::size_t max_count) {
  std::vector<ChartPoint> out;
  if (q.nodes.empty() || max_count == 0) return out;
  const std::size_t stride =
      (q.nodes.size() + max_count - 1) / max_count;  // never exceeds max_count
  for (std::size_t i = 0; i < q.nodes.size(); i += stride)
    out.push_back(q.nodes[i]);
  return out;
}

}  // namespace chernlab
