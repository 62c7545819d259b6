#pragma once
// Chern connection curvature of a Hermitian metric in local coordinates:
//
//   R_{i jbar k lbar} = - d^2 g_{k lbar} / (dz^i dzbar^j)
//                       + g^{qbar p} (d g_{k qbar}/dz^i) (d g_{p lbar}/dzbar^j)
//
// with d g_{p lbar}/dzbar^j = conj(d g_{l pbar}/dz^j), and the inverse
// contraction g^{jbar i} = H(j,i) for H = G^{-1}.  The raw tensor must satisfy
// R_{i jbar k lbar} = conj(R_{j ibar l kbar}); small violations (finite
// difference noise) are averaged away, large ones are an error.

#include <string>

#include "metric.hpp"

namespace chernlab {

struct CurvaturePack {
  MatC g;
  MatC g_inv;
  Tensor4 r;          // r(i,j,k,l) = R_{i jbar k lbar}
  MatC ricci;         // first Chern Ricci, contraction over (k, lbar)
  MatC second_ricci;  // contraction over (i, jbar)
  double scalar = 0.0;      // from ricci
  double scalar_alt = 0.0;  // from second_ricci; agreement is a consistency probe
  double sym_defect = 0.0;  // raw Hermitian-pair defect before averaging
};

inline CurvaturePack chern_curvature(const HermitianMetricField& m,
                                     const ChartPoint& p,
                                     bool force_fd = false) {
  const int n = m.dim;
  MetricJet jt = metric_jet(m, p, force_fd);

  CurvaturePack out;
  out.g = jt.g;
  out.g_inv = hermitian_inverse(jt.g);
  const MatC& h = out.g_inv;

  Tensor4 raw(n);
  for (int i = 0; i < n; ++i) {
    const MatC& di = jt.d[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const MatC& dj = jt.d[static_cast<std::size_t>(j)];
      const MatC& sij = jet_dd(jt, i, j, n);
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Complex corr(0.0, 0.0);
          for (int q = 0; q < n; ++q)
            for (int pp = 0; pp < n; ++pp)
              corr += h(q, pp) * di(k, q) * std::conj(dj(l, pp));
          raw(i, j, k, l) = -sij(k, l) + corr;
        }
      }
    }
  }

  double defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          defect = std::max(defect,
                            std::abs(raw(i, j, k, l) -
                                     std::conj(raw(j, i, l, k))));
  out.sym_defect = defect;
  if (defect > 1e-6 * (1.0 + raw.max_abs()))
    throw SymmetryViolation("curvature tensor defect " + std::to_string(defect) +
                            " for metric '" + m.name + "'");

  out.r = Tensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out.r(i, j, k, l) =
              0.5 * (raw(i, j, k, l) + std::conj(raw(j, i, l, k)));

  out.ricci = MatC::Zero(n, n);
  out.second_ricci = MatC::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          out.ricci(i, j) += h(l, k) * out.r(i, j, k, l);
          out.second_ricci(k, l) += h(j, i) * out.r(i, j, k, l);
        }

  Complex s1(0.0, 0.0), s2(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      s1 += h(j, i) * out.ricci(i, j);
      s2 += h(j, i) * out.second_ricci(i, j);
    }
  out.scalar = s1.real();
  out.scalar_alt = s2.real();
  return out;
}

// max_{i,k,q} | d g_{k qbar}/dz^i - d g_{i qbar}/dz^k |; zero iff the metric
// is Kahler at p (to derivative accuracy).
inline double kahler_defect(const HermitianMetricField& m, const ChartPoint& p,
                            bool force_fd = false) {
  const int n = m.dim;
  std::vector<MatC> d;
  if (!force_fd && m.deriv1)
    d = m.deriv1(p);
  else
    d = fd_deriv1(m, p);
  double defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int q = 0; q < n; ++q)
        defect = std::max(defect, std::abs(d[static_cast<std::size_t>(i)](k, q) -
                                           d[static_cast<std::size_t>(k)](i, q)));
  return defect;
}

// Curvature of directions.  R(W, Wbar, V, Vbar) is real for the symmetrized
// tensor; ZeroVector guards the normalizations.
inline double curvature_form(const CurvaturePack& c, const VecC& w,
                             const VecC& v) {
  const int n = c.r.dim();
  Complex acc(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          acc += c.r(i, j, k, l) * w[i] * std::conj(w[j]) * v[k] *
                 std::conj(v[l]);
  return acc.real();
}

// B_W(k,l) = sum_{i,j} R_{i jbar k lbar} W^i conj(W^j): Hermitian form in the
// second slot for fixed W.
inline MatC slot_matrix_second(const CurvaturePack& c, const VecC& w) {
  const int n = c.r.dim();
  MatC b = MatC::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      Complex acc(0.0, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          acc += c.r(i, j, k, l) * w[i] * std::conj(w[j]);
      b(k, l) = acc;
    }
  return b;
}

// C_V(i,j) = sum_{k,l} R_{i jbar k lbar} V^k conj(V^l)
inline MatC slot_matrix_first(const CurvaturePack& c, const VecC& v) {
  const int n = c.r.dim();
  MatC b = MatC::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex acc(0.0, 0.0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          acc += c.r(i, j, k, l) * v[k] * std::conj(v[l]);
      b(i, j) = acc;
    }
  return b;
}

}  // namespace chernlab
