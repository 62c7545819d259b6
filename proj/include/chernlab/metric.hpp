#pragma once
// Hermitian metric fields on coordinate charts.
//
// A field evaluates the metric matrix G(i,j) = g_{i jbar} at chart points and
// optionally supplies analytic holomorphic first derivatives and mixed second
// derivatives.  Missing derivatives fall back to central differences in the
// underlying real coordinates, d/dz = (d/dx - i d/dy)/2, with one Richardson
// step.  First differences use h = eps^{1/3} * scale; the pure value-level
// mixed second difference uses h = eps^{1/4} * scale (the eps^{1/3} step tuned
// for first differences would lose half the significant digits on seconds).

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace chernlab {

struct ChartPoint {
  std::string chart;
  VecC z;
};

inline ChartPoint make_point(const std::string& chart,
                             std::initializer_list<Complex> coords) {
  ChartPoint p;
  p.chart = chart;
  p.z.resize(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const Complex& c : coords) p.z[i++] = c;
  return p;
}

struct HermitianMetricField {
  int dim = 1;
  std::string name;
  bool kahler_known = false;
  bool gauduchon_known = false;
  bool einstein_known = false;
  std::optional<double> declared_volume;

  std::function<MatC(const ChartPoint&)> eval;
  // deriv1(p)[i](k,l) = d g_{k lbar} / d z^i
  std::function<std::vector<MatC>(const ChartPoint&)> deriv1;
  // deriv2(p)[i*dim+j](k,l) = d^2 g_{k lbar} / (d z^i d zbar^j)
  std::function<std::vector<MatC>(const ChartPoint&)> deriv2;
};

namespace detail {

using MatFn = std::function<MatC(const ChartPoint&)>;

// real coordinate a = 2i   -> x_i
//                 a = 2i+1 -> y_i
inline ChartPoint shifted(const ChartPoint& p, int a, double h) {
  ChartPoint q = p;
  const int i = a / 2;
  if (a % 2 == 0)
    q.z[i] += Complex(h, 0.0);
  else
    q.z[i] += Complex(0.0, h);
  return q;
}

inline MatC sample(const MatFn& f, const ChartPoint& p) {
  MatC g = f(p);
  if (!g.allFinite())
    throw DerivativeUnavailable("sample not finite at a stencil point");
  return g;
}

inline MatC real_partial(const MatFn& f, const ChartPoint& p, int a, double h) {
  return (sample(f, shifted(p, a, h)) - sample(f, shifted(p, a, -h))) /
         (2.0 * h);
}

inline MatC richardson_partial(const MatFn& f, const ChartPoint& p, int a,
                               double h) {
  const MatC coarse = real_partial(f, p, a, h);
  const MatC fine = real_partial(f, p, a, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

inline MatC real_second(const MatFn& f, const ChartPoint& p, int a, int b,
                        double h) {
  if (a == b) {
    const MatC center = sample(f, p);
    return (sample(f, shifted(p, a, h)) - 2.0 * center +
            sample(f, shifted(p, a, -h))) /
           (h * h);
  }
  const MatC pp = sample(f, shifted(shifted(p, a, h), b, h));
  const MatC pm = sample(f, shifted(shifted(p, a, h), b, -h));
  const MatC mp = sample(f, shifted(shifted(p, a, -h), b, h));
  const MatC mm = sample(f, shifted(shifted(p, a, -h), b, -h));
  return (pp - pm - mp + mm) / (4.0 * h * h);
}

inline MatC richardson_second(const MatFn& f, const ChartPoint& p, int a, int b,
                              double h) {
  const MatC coarse = real_second(f, p, a, b, h);
  const MatC fine = real_second(f, p, a, b, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

// d/dz^i of a matrix-valued field, one Richardson step
inline std::vector<MatC> holo_deriv1(const MatFn& f, const ChartPoint& p,
                                     int n) {
  std::vector<MatC> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double h = std::cbrt(kEps) * (1.0 + std::abs(p.z[i]));
    const MatC dx = richardson_partial(f, p, 2 * i, h);
    const MatC dy = richardson_partial(f, p, 2 * i + 1, h);
    d[static_cast<std::size_t>(i)] = 0.5 * (dx - Complex(0.0, 1.0) * dy);
  }
  return d;
}

// d^2/(dz^i dzbar^j) of a matrix-valued field through direct second
// differences:
//   ((dxi dxj + dyi dyj) + i (dxi dyj - dyi dxj)) / 4
inline std::vector<MatC> mixed_deriv2(const MatFn& f, const ChartPoint& p,
                                      int n) {
  std::vector<MatC> s(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double scale = 1.0 + std::max(std::abs(p.z[i]), std::abs(p.z[j]));
      const double h = std::pow(kEps, 0.25) * scale;
      const MatC xx = richardson_second(f, p, 2 * i, 2 * j, h);
      const MatC yy = richardson_second(f, p, 2 * i + 1, 2 * j + 1, h);
      const MatC xy = richardson_second(f, p, 2 * i, 2 * j + 1, h);
      const MatC yx = richardson_second(f, p, 2 * i + 1, 2 * j, h);
      s[static_cast<std::size_t>(i) * n + j] =
          0.25 * ((xx + yy) + Complex(0.0, 1.0) * (xy - yx));
    }
  }
  return s;
}

}  // namespace detail

inline std::vector<MatC> fd_deriv1(const HermitianMetricField& m,
                                   const ChartPoint& p) {
  return detail::holo_deriv1(m.eval, p, m.dim);
}

// Mixed seconds.  When analytic first derivatives exist, differentiate those
// (one central difference of a smooth closed form along zbar); otherwise fall
// back to direct second differences of eval.
inline std::vector<MatC> fd_deriv2(const HermitianMetricField& m,
                                   const ChartPoint& p) {
  const int n = m.dim;
  if (!m.deriv1) return detail::mixed_deriv2(m.eval, p, n);

  std::vector<MatC> s(static_cast<std::size_t>(n) * n);
  auto bar_partial_all = [&](int j, double h) {
    auto diff = [&](int a, double hh) {
      std::vector<MatC> plus = m.deriv1(detail::shifted(p, a, hh));
      std::vector<MatC> minus = m.deriv1(detail::shifted(p, a, -hh));
      std::vector<MatC> r(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        if (!plus[i].allFinite() || !minus[i].allFinite())
          throw DerivativeUnavailable("first-derivative sample not finite");
        r[i] = (plus[i] - minus[i]) / (2.0 * hh);
      }
      return r;
    };
    auto combine = [&](double hh) {
      std::vector<MatC> dx = diff(2 * j, hh);
      std::vector<MatC> dy = diff(2 * j + 1, hh);
      std::vector<MatC> r(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        r[i] = 0.5 * (dx[i] + Complex(0.0, 1.0) * dy[i]);  // d/dzbar^j
      return r;
    };
    std::vector<MatC> coarse = combine(h);
    std::vector<MatC> fine = combine(0.5 * h);
    std::vector<MatC> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return r;
  };
  for (int j = 0; j < n; ++j) {
    const double h = std::cbrt(kEps) * (1.0 + std::abs(p.z[j]));
    std::vector<MatC> col = bar_partial_all(j, h);
    for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i) * n + j] = col[i];
  }
  return s;
}

struct MetricJet {
  MatC g;
  std::vector<MatC> d;   // n entries, d[i] = dG/dz^i
  std::vector<MatC> dd;  // n*n entries, dd[i*n+j] = d2G/(dz^i dzbar^j)
};

inline const MatC& jet_dd(const MetricJet& jt, int i, int j, int n) {
  return jt.dd[static_cast<std::size_t>(i) * n + j];
}

inline MatC eval_metric(const HermitianMetricField& m, const ChartPoint& p) {
  MatC g = m.eval(p);
  if (g.rows() != m.dim || g.cols() != m.dim)
    throw DimensionMismatch("metric eval returned " + std::to_string(g.rows()) +
                            "x" + std::to_string(g.cols()) + " for dim " +
                            std::to_string(m.dim));
  if (!g.allFinite())
    throw SingularMetric("metric eval not finite on chart '" + p.chart + "'");
  const double defect = hermitian_defect(g);
  const double scale = g.cwiseAbs().maxCoeff();
  if (defect > 1e-9 * (1.0 + scale))
    throw SymmetryViolation("metric eval deviates from Hermitian by " +
                            std::to_string(defect));
  return 0.5 * (g + g.adjoint());
}

inline MetricJet metric_jet(const HermitianMetricField& m, const ChartPoint& p,
                            bool force_fd = false) {
  MetricJet jt;
  jt.g = eval_metric(m, p);
  if (!force_fd && m.deriv1)
    jt.d = m.deriv1(p);
  else
    jt.d = fd_deriv1(m, p);
  if (!force_fd && m.deriv2)
    jt.dd = m.deriv2(p);
  else
    jt.dd = fd_deriv2(m, p);
  return jt;
}

// Real scalar function on a chart, with the same optional-analytic /
// finite-difference contract as the metric fields.
struct ScalarField {
  std::function<double(const ChartPoint&)> value;
  std::function<VecC(const ChartPoint&)> grad;  // optional, d/dz^i
  std::function<MatC(const ChartPoint&)> hess;  // optional, d2/(dz^i dzbar^j)
};

inline MatC scalar_hessian(const ScalarField& u, const ChartPoint& p, int n) {
  if (u.hess) return u.hess(p);
  if (u.grad) {
    MatC h(n, n);
    auto gradfn = [&](const ChartPoint& q) {
      VecC g = u.grad(q);
      MatC m(n, 1);
      m.col(0) = g;
      return m;
    };
    for (int j = 0; j < n; ++j) {
      const double hh = std::cbrt(kEps) * (1.0 + std::abs(p.z[j]));
      const MatC dx_c = detail::richardson_partial(gradfn, p, 2 * j, hh);
      const MatC dy_c = detail::richardson_partial(gradfn, p, 2 * j + 1, hh);
      const MatC col = 0.5 * (dx_c + Complex(0.0, 1.0) * dy_c);
      for (int i = 0; i < n; ++i) h(i, j) = col(i, 0);
    }
    return h;
  }
  auto valfn = [&](const ChartPoint& q) {
    MatC m(1, 1);
    m(0, 0) = Complex(u.value(q), 0.0);
    return m;
  };
  std::vector<MatC> s = detail::mixed_deriv2(valfn, p, n);
  MatC h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = s[static_cast<std::size_t>(i) * n + j](0, 0);
  return h;
}

// tr_omega(i ddbar u) = sum H(j,i) u_{i jbar}
inline double metric_laplacian(const MatC& g_inv, const MatC& hess) {
  const int n = static_cast<int>(g_inv.rows());
  Complex acc(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += g_inv(j, i) * hess(i, j);
  return acc.real();
}

// c * g with derivative callbacks scaled alongside; Einstein-ness and the
// Kahler/Gauduchon flags survive constant scaling.
inline HermitianMetricField scaled_metric(const HermitianMetricField& base,
                                          double c) {
  auto held = std::make_shared<HermitianMetricField>(base);
  HermitianMetricField m = base;
  m.name = base.name + "_x" + std::to_string(c);
  if (base.declared_volume)
    m.declared_volume = *base.declared_volume * std::pow(c, base.dim);
  m.eval = [held, c](const ChartPoint& p) { return MatC(c * held->eval(p)); };
  if (base.deriv1)
    m.deriv1 = [held, c](const ChartPoint& p) {
      std::vector<MatC> d = held->deriv1(p);
      for (MatC& x : d) x *= c;
      return d;
    };
  else
    m.deriv1 = nullptr;
  if (base.deriv2)
    m.deriv2 = [held, c](const ChartPoint& p) {
      std::vector<MatC> d = held->deriv2(p);
      for (MatC& x : d) x *= c;
      return d;
    };
  else
    m.deriv2 = nullptr;
  return m;
}

}  // namespace chernlab
