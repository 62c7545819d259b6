#pragma once
// The model catalog: every compact manifold, metric, and quadrature pairing
// the checks run on.  All catalog metrics carry analytic first and second
// derivative callbacks; the finite-difference fallback exists to cross-check
// them, not to replace them.
//
// Metric conventions, fixed once for the whole library:
//   - projective space carries the unitarily invariant metric with
//     g_{i jbar} = c (delta_ij/(1+|z|^2) - zbar_i z_j/(1+|z|^2)^2),
//     c = 1/(2 pi), which has total volume 1 in every dimension;
//   - flat tori on the cell [0,L)^{2n} carry g = I/(2 L^2), total volume n!;
//   - the Hopf shell 1 <= |z| <= 2 in C^2 \ {0} carries g = I/|z|^2
//     (invariant under z -> 2z), total volume 16 pi^2 log 2.
//
// Catalog names accept "base:key=val,key=val" parameter suffixes.

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "quadrature.hpp"

namespace chernlab {

struct ParsedName {
  std::string base;
  std::map<std::string, std::string> params;
};

inline ParsedName parse_catalog_name(const std::string& s) {
  ParsedName pn;
  const std::size_t colon = s.find(':');
  pn.base = s.substr(0, colon);
  if (pn.base.empty()) throw ConfigInvalid("empty catalog name in '" + s + "'");
  if (colon == std::string::npos) return pn;
  std::string rest = s.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size())
      throw ConfigInvalid("bad parameter '" + item + "' in '" + s +
                          "' (want key=value)");
    pn.params[item.substr(0, eq)] = item.substr(eq + 1);
    pos = comma + 1;
  }
  return pn;
}

inline double param_num(const ParsedName& pn, const std::string& key,
                        double fallback) {
  auto it = pn.params.find(key);
  if (it == pn.params.end()) return fallback;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    throw ConfigInvalid("parameter " + key + "='" + it->second +
                        "' is not a number");
  }
  if (used != it->second.size())
    throw ConfigInvalid("parameter " + key + "='" + it->second +
                        "' has trailing junk");
  return v;
}

inline int param_int(const ParsedName& pn, const std::string& key,
                     int fallback) {
  const double v = param_num(pn, key, static_cast<double>(fallback));
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigInvalid("parameter " + key + " must be an integer");
  return i;
}

// ---------------------------------------------------------------------------
// Fubini-Study metric, volume 1.  The same coordinate formula is valid in
// every affine chart, which is what the chart-independence tests lean on.

inline HermitianMetricField fs_metric(int n) {
  HermitianMetricField m;
  m.dim = n;
  m.name = "fs";
  m.kahler_known = true;
  m.gauduchon_known = true;
  m.einstein_known = true;
  m.declared_volume = 1.0;
  const double c = 1.0 / (2.0 * kPi);
  m.eval = [n, c](const ChartPoint& p) {
    const double s = p.z.squaredNorm();
    const double a = 1.0 / (1.0 + s);
    MatC g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex v = -std::conj(p.z[i]) * p.z[j] * (a * a);
        if (i == j) v += a;
        g(i, j) = c * v;
      }
    return g;
  };
  m.deriv1 = [n, c](const ChartPoint& p) {
    const double s = p.z.squaredNorm();
    const double a = 1.0 / (1.0 + s);
    const double a2 = a * a, a3 = a2 * a;
    std::vector<MatC> d(static_cast<std::size_t>(n), MatC(n, n));
    for (int k = 0; k < n; ++k) {
      const Complex zbk = std::conj(p.z[k]);
      MatC& dk = d[static_cast<std::size_t>(k)];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Complex v = 2.0 * std::conj(p.z[i]) * p.z[j] * zbk * a3;
          if (i == j) v -= zbk * a2;
          if (j == k) v -= std::conj(p.z[i]) * a2;
          dk(i, j) = c * v;
        }
    }
    return d;
  };
  m.deriv2 = [n, c](const ChartPoint& p) {
    const double s = p.z.squaredNorm();
    const double a = 1.0 / (1.0 + s);
    const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    std::vector<MatC> dd(static_cast<std::size_t>(n) * n, MatC(n, n));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const Complex zbk = std::conj(p.z[k]);
        const Complex zl = p.z[l];
        MatC& m2 = dd[static_cast<std::size_t>(k) * n + l];
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const Complex zbi = std::conj(p.z[i]);
            const Complex zj = p.z[j];
            Complex v = -6.0 * zbi * zj * zbk * zl * a4;
            v += 2.0 * zj * zbk * a3 * (i == l ? 1.0 : 0.0);
            v += 2.0 * zbi * zj * a3 * (k == l ? 1.0 : 0.0);
            if (i == j) v -= (k == l ? a2 : Complex(0.0)) - 2.0 * zbk * zl * a3;
            if (j == k) v -= (i == l ? a2 : Complex(0.0)) - 2.0 * zbi * zl * a3;
            m2(i, j) = c * v;
          }
      }
    return dd;
  };
  return m;
}

// chart "affine<k>": the homogeneous coordinate at slot k is 1, the chart
// coordinates fill the remaining slots in index order
inline int affine_chart_index(const std::string& chart) {
  const std::string prefix = "affine";
  if (chart.rfind(prefix, 0) != 0)
    throw ChartMismatch("not an affine chart: '" + chart + "'");
  try {
    return std::stoi(chart.substr(prefix.size()));
  } catch (const std::exception&) {
    throw ChartMismatch("bad affine chart id: '" + chart + "'");
  }
}

inline ChartPoint cpn_transition(int n, const ChartPoint& p,
                                 const std::string& to) {
  const int from = affine_chart_index(p.chart);
  const int dest = affine_chart_index(to);
  if (from < 0 || from > n || dest < 0 || dest > n)
    throw ChartMismatch("chart index out of range for dim " + std::to_string(n));
  VecC hv(n + 1);
  {
    int pos = 0;
    for (int slot = 0; slot <= n; ++slot)
      hv[slot] = (slot == from) ? Complex(1.0, 0.0) : p.z[pos++];
  }
  const Complex pivot = hv[dest];
  if (std::abs(pivot) < 1e-14)
    throw ChartMismatch("point lies outside chart '" + to + "'");
  ChartPoint q;
  q.chart = to;
  q.z.resize(n);
  int pos = 0;
  for (int slot = 0; slot <= n; ++slot)
    if (slot != dest) q.z[pos++] = hv[slot] / pivot;
  return q;
}

inline ManifoldModel make_cpn_model(int n) {
  ManifoldModel m;
  m.name = (n == 1) ? "cp1_fs" : ("cpn_fs:n=" + std::to_string(n));
  m.dim = n;
  for (int k = 0; k <= n; ++k)
    m.atlas.push_back({"affine" + std::to_string(k), n});
  m.metrics["fs"] = fs_metric(n);
  m.default_metric = "fs";
  m.topo.total_volume = 1.0;
  m.topo.euler_char = n + 1;
  m.topo.canonical_nef = false;
  m.topo.two_pi_c1_canonical_ratio = -2.0 * kPi * (n + 1);
  if (n == 1) {
    m.default_resolution = 96;
    m.scheme_builder = [](int res) { return scheme_sphere_chart(res); };
  } else {
    m.default_resolution = (n == 2) ? 200000 : 100000;
    m.scheme_builder = [n](int res) { return scheme_affine_qmc(res, n); };
  }
  m.transition = [n](const ChartPoint& p, const std::string& to) {
    return cpn_transition(n, p, to);
  };
  m.sample_point = [n](Rng& rng) {
    ChartPoint p;
    p.chart = "affine0";
    p.z = rng.cnormal_vec(n);
    return p;
  };
  return m;
}

// ---------------------------------------------------------------------------
// Flat tori.  One cell chart; the metric normalization keeps the total
// volume at n! for every cell size.

inline HermitianMetricField torus_flat_metric(int n, double cell) {
  HermitianMetricField m;
  m.dim = n;
  m.name = "flat";
  m.kahler_known = true;
  m.gauduchon_known = true;
  m.einstein_known = true;
  m.declared_volume = factorial_d(n);
  const double coef = 1.0 / (2.0 * cell * cell);
  m.eval = [n, coef](const ChartPoint&) {
    return MatC(coef * MatC::Identity(n, n));
  };
  m.deriv1 = [n](const ChartPoint&) {
    return std::vector<MatC>(static_cast<std::size_t>(n), MatC::Zero(n, n));
  };
  m.deriv2 = [n](const ChartPoint&) {
    return std::vector<MatC>(static_cast<std::size_t>(n) * n, MatC::Zero(n, n));
  };
  return m;
}

// Conformal factor jet for one-dimensional models, where e^{phi} g stays
// Kahler automatically.
struct PhiJet {
  double v = 0.0;
  Complex dz;
  Complex dzzbar;
};
using PhiJetFn = std::function<PhiJet(const ChartPoint&)>;

inline HermitianMetricField conformal_metric_1d(const HermitianMetricField& base,
                                                const PhiJetFn& phi,
                                                const std::string& name) {
  if (base.dim != 1 || !base.deriv1 || !base.deriv2)
    throw ConfigInvalid("conformal factor needs a 1-dim base with analytic jets");
  auto held = std::make_shared<HermitianMetricField>(base);
  HermitianMetricField m;
  m.dim = 1;
  m.name = name;
  m.kahler_known = true;
  m.gauduchon_known = true;
  m.einstein_known = false;
  m.eval = [held, phi](const ChartPoint& p) {
    return MatC(std::exp(phi(p).v) * held->eval(p));
  };
  m.deriv1 = [held, phi](const ChartPoint& p) {
    const PhiJet f = phi(p);
    const Complex g = held->eval(p)(0, 0);
    const Complex gz = held->deriv1(p)[0](0, 0);
    std::vector<MatC> d(1, MatC(1, 1));
    d[0](0, 0) = std::exp(f.v) * (f.dz * g + gz);
    return d;
  };
  m.deriv2 = [held, phi](const ChartPoint& p) {
    const PhiJet f = phi(p);
    const Complex g = held->eval(p)(0, 0);
    const Complex gz = held->deriv1(p)[0](0, 0);
    const Complex gzb = std::conj(gz);  // g_{1 1bar} is real
    const Complex gzzb = held->deriv2(p)[0](0, 0);
    const Complex fzb = std::conj(f.dz);
    std::vector<MatC> dd(1, MatC(1, 1));
    dd[0](0, 0) = std::exp(f.v) * ((f.dz * fzb + f.dzzbar) * g + f.dz * gzb +
                                   fzb * gz + gzzb);
    return dd;
  };
  return m;
}

inline ManifoldModel make_torus_model(int n, double cell) {
  ManifoldModel m;
  m.name = "torus_flat:n=" + std::to_string(n) + ",scale=" + std::to_string(cell);
  m.dim = n;
  m.params["cell"] = cell;
  m.atlas.push_back({"cell", n});
  m.metrics["flat"] = torus_flat_metric(n, cell);
  m.default_metric = "flat";
  m.topo.total_volume = factorial_d(n);
  m.topo.euler_char = 0;
  m.topo.canonical_nef = true;
  m.topo.two_pi_c1_canonical_ratio = 0.0;
  m.default_resolution = (n == 1) ? 48 : 12;
  m.scheme_builder = [n, cell](int res) {
    return scheme_periodic_grid(res, n, cell);
  };
  m.sample_point = [n, cell](Rng& rng) {
    ChartPoint p;
    p.chart = "cell";
    p.z.resize(n);
    for (int i = 0; i < n; ++i)
      p.z[i] = Complex(rng.uniform(0.0, cell), rng.uniform(0.0, cell));
    return p;
  };
  if (n == 1) {
    // periodic conformal perturbation; curved but still total-scalar zero,
    // which the integral checks exploit
    const double w = 2.0 * kPi / cell;
    PhiJetFn phi = [w](const ChartPoint& p) {
      const double x = p.z[0].real(), y = p.z[0].imag();
      PhiJet f;
      const double c1 = 0.3, c2 = 0.2;
      f.v = c1 * std::cos(w * x) + c2 * std::sin(w * y);
      const double fx = -c1 * w * std::sin(w * x);
      const double fy = c2 * w * std::cos(w * y);
      f.dz = 0.5 * Complex(fx, -fy);
      f.dzzbar = 0.25 * (-c1 * w * w * std::cos(w * x) -
                         c2 * w * w * std::sin(w * y));
      return f;
    };
    m.metrics["bumpy"] = conformal_metric_1d(m.metrics["flat"], phi, "bumpy");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Hopf shell.  g = I/|z|^2 on the fundamental annulus of z ~ 2z; not Kahler,
// Gauduchon (in complex dimension 2 that is d dbar omega = 0, which holds
// with both derivatives computed analytically).

inline HermitianMetricField hopf_metric() {
  HermitianMetricField m;
  m.dim = 2;
  m.name = "std";
  m.kahler_known = false;
  m.gauduchon_known = true;
  m.einstein_known = false;
  m.declared_volume = 16.0 * kPi * kPi * std::log(2.0);
  m.eval = [](const ChartPoint& p) {
    const double s = p.z.squaredNorm();
    return MatC(MatC::Identity(2, 2) / s);
  };
  m.deriv1 = [](const ChartPoint& p) {
    const double s = p.z.squaredNorm();
    const double s2 = s * s;
    std::vector<MatC> d(2, MatC::Zero(2, 2));
    for (int k = 0; k < 2; ++k) {
      const Complex zbk = std::conj(p.z[k]);
      for (int i = 0; i < 2; ++i) d[static_cast<std::size_t>(k)](i, i) = -zbk / s2;
    }
    return d;
  };
  m.deriv2 = [](const ChartPoint& p) {
    const double s = p.z.squaredNorm();
    const double s2 = s * s, s3 = s2 * s;
    std::vector<MatC> dd(4, MatC::Zero(2, 2));
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) {
        const Complex v = (k == l ? Complex(1.0 / s2) : Complex(0.0)) -
                          2.0 * std::conj(p.z[k]) * p.z[l] / s3;
        for (int i = 0; i < 2; ++i)
          dd[static_cast<std::size_t>(k) * 2 + l](i, i) = -v;
      }
    return dd;
  };
  return m;
}

inline ManifoldModel make_hopf_model() {
  ManifoldModel m;
  m.name = "hopf_std";
  m.dim = 2;
  m.atlas.push_back({"annulus", 2});
  m.metrics["std"] = hopf_metric();
  m.default_metric = "std";
  m.topo.total_volume = 16.0 * kPi * kPi * std::log(2.0);
  m.topo.euler_char = 0;
  m.default_resolution = 10;
  m.scheme_builder = [](int res) { return scheme_annulus_grid(res); };
  m.sample_point = [](Rng& rng) {
    const double r = rng.uniform(1.0, 2.0);
    const double a = rng.uniform(0.0, 0.5 * kPi);
    const double t1 = rng.uniform(0.0, 2.0 * kPi);
    const double t2 = rng.uniform(0.0, 2.0 * kPi);
    ChartPoint p;
    p.chart = "annulus";
    p.z.resize(2);
    p.z[0] = r * std::cos(a) * Complex(std::cos(t1), std::sin(t1));
    p.z[1] = r * std::sin(a) * Complex(std::cos(t2), std::sin(t2));
    return p;
  };
  return m;
}

// ---------------------------------------------------------------------------
// Conformally perturbed round sphere: e^{eps u} g_fs with u a combination of
// the three first spherical harmonics, so u transforms cleanly between the
// two charts (x1 keeps its form, x2 and x3 flip sign under z -> 1/z).

inline PhiJetFn sphere_harmonic_phi(double eps, double a1, double a2,
                                    double a3) {
  return [eps, a1, a2, a3](const ChartPoint& p) {
    double b1 = a1, b2 = a2, b3 = a3;
    if (p.chart == "affine1") {
      b2 = -a2;
      b3 = -a3;
    } else if (p.chart != "affine0") {
      throw ChartMismatch("conformal factor undefined on chart '" + p.chart +
                          "'");
    }
    const Complex z = p.z[0];
    const Complex zb = std::conj(z);
    const double s = std::norm(z);
    const double A = 1.0 / (1.0 + s);
    const double A2 = A * A;
    const double x1 = 2.0 * z.real() * A;
    const double x2 = 2.0 * z.imag() * A;
    const double x3 = (1.0 - s) * A;
    PhiJet f;
    f.v = eps * (b1 * x1 + b2 * x2 + b3 * x3);
    f.dz = eps * (b1 * (1.0 - zb * zb) * A2 +
                  b2 * Complex(0.0, -1.0) * (1.0 + zb * zb) * A2 +
                  b3 * (-2.0 * zb) * A2);
    f.dzzbar = eps * (-2.0 * (b1 * x1 + b2 * x2 + b3 * x3)) * A2;
    return f;
  };
}

inline ManifoldModel make_cp1_conformal_model(int seed, double eps) {
  ManifoldModel m = make_cpn_model(1);
  m.name = "cp1_fs_conformal:seed=" + std::to_string(seed) +
           ",eps=" + std::to_string(eps);
  Rng rng(static_cast<std::uint64_t>(seed));
  const double a1 = rng.normal(), a2 = rng.normal(), a3 = rng.normal();
  m.metrics["fs_conformal"] = conformal_metric_1d(
      m.metrics["fs"], sphere_harmonic_phi(eps, a1, a2, a3), "fs_conformal");
  m.default_metric = "fs_conformal";
  m.topo.total_volume.reset();  // no closed form once perturbed
  m.topo.two_pi_c1_canonical_ratio = -4.0 * kPi;  // class data is unchanged
  return m;
}

// ---------------------------------------------------------------------------
// Products.  One combined chart; coordinates are the concatenation of the
// factor coordinates, and the metric is the block sum.

inline HermitianMetricField product_metric(const HermitianMetricField& a,
                                           const HermitianMetricField& b,
                                           const std::string& chart_a,
                                           const std::string& chart_b) {
  auto ha = std::make_shared<HermitianMetricField>(a);
  auto hb = std::make_shared<HermitianMetricField>(b);
  const int na = a.dim, nb = b.dim, n = na + nb;
  HermitianMetricField m;
  m.dim = n;
  m.name = a.name + "*" + b.name;
  m.kahler_known = a.kahler_known && b.kahler_known;
  m.gauduchon_known = m.kahler_known;
  m.einstein_known = false;
  if (a.declared_volume && b.declared_volume)
    m.declared_volume = factorial_d(n) * (*a.declared_volume / factorial_d(na)) *
                        (*b.declared_volume / factorial_d(nb));
  auto split = [na, nb, chart_a, chart_b](const ChartPoint& p) {
    ChartPoint pa, pb;
    pa.chart = chart_a;
    pa.z = p.z.head(na);
    pb.chart = chart_b;
    pb.z = p.z.tail(nb);
    return std::make_pair(pa, pb);
  };
  m.eval = [ha, hb, split, na, nb, n](const ChartPoint& p) {
    auto [pa, pb] = split(p);
    MatC g = MatC::Zero(n, n);
    g.topLeftCorner(na, na) = ha->eval(pa);
    g.bottomRightCorner(nb, nb) = hb->eval(pb);
    return g;
  };
  m.deriv1 = [ha, hb, split, na, nb, n](const ChartPoint& p) {
    auto [pa, pb] = split(p);
    std::vector<MatC> da = ha->deriv1(pa);
    std::vector<MatC> db = hb->deriv1(pb);
    std::vector<MatC> d(static_cast<std::size_t>(n), MatC::Zero(n, n));
    for (int i = 0; i < na; ++i)
      d[static_cast<std::size_t>(i)].topLeftCorner(na, na) =
          da[static_cast<std::size_t>(i)];
    for (int i = 0; i < nb; ++i)
      d[static_cast<std::size_t>(na + i)].bottomRightCorner(nb, nb) =
          db[static_cast<std::size_t>(i)];
    return d;
  };
  m.deriv2 = [ha, hb, split, na, nb, n](const ChartPoint& p) {
    auto [pa, pb] = split(p);
    std::vector<MatC> dda = ha->deriv2(pa);
    std::vector<MatC> ddb = hb->deriv2(pb);
    std::vector<MatC> dd(static_cast<std::size_t>(n) * n, MatC::Zero(n, n));
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j)
        dd[static_cast<std::size_t>(i) * n + j].topLeftCorner(na, na) =
            dda[static_cast<std::size_t>(i) * na + j];
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j)
        dd[static_cast<std::size_t>(na + i) * n + (na + j)]
            .bottomRightCorner(nb, nb) = ddb[static_cast<std::size_t>(i) * nb + j];
    return dd;
  };
  return m;
}

inline ManifoldModel make_product_model(const ManifoldModel& a,
                                        const ManifoldModel& b,
                                        const std::string& name) {
  const std::string chart_a = a.atlas.front().id;
  const std::string chart_b = b.atlas.front().id;
  const int na = a.dim, nb = b.dim, n = na + nb;
  ManifoldModel m;
  m.name = name;
  m.dim = n;
  m.atlas.push_back({chart_a + "*" + chart_b, n});
  const HermitianMetricField& ma = model_metric(a);
  const HermitianMetricField& mb = model_metric(b);
  HermitianMetricField prod = product_metric(ma, mb, chart_a, chart_b);
  const std::string combined_chart = m.atlas.front().id;
  if (a.topo.total_volume && b.topo.total_volume)
    m.topo.total_volume = factorial_d(n) * (*a.topo.total_volume / factorial_d(na)) *
                          (*b.topo.total_volume / factorial_d(nb));
  if (a.topo.euler_char && b.topo.euler_char)
    m.topo.euler_char = *a.topo.euler_char * *b.topo.euler_char;
  m.default_resolution = 10;
  auto builder_a = a.scheme_builder;
  auto builder_b = b.scheme_builder;
  m.scheme_builder = [builder_a, builder_b, na, nb, n,
                      combined_chart](int res) {
    const QuadratureScheme qa = builder_a(res);
    const QuadratureScheme qb = builder_b(res);
    QuadratureScheme q;
    q.kind = qa.kind + "*" + qb.kind;
    q.resolution = res;
    q.stated_rel_tol = std::max(qa.stated_rel_tol, qb.stated_rel_tol);
    q.nodes.reserve(qa.nodes.size() * qb.nodes.size());
    q.weights.reserve(qa.nodes.size() * qb.nodes.size());
    for (std::size_t i = 0; i < qa.nodes.size(); ++i)
      for (std::size_t j = 0; j < qb.nodes.size(); ++j) {
        ChartPoint p;
        p.chart = combined_chart;
        p.z.resize(n);
        p.z.head(na) = qa.nodes[i].z;
        p.z.tail(nb) = qb.nodes[j].z;
        q.nodes.push_back(p);
        q.weights.push_back(qa.weights[i] * qb.weights[j]);
      }
    return q;
  };
  auto sample_a = a.sample_point;
  auto sample_b = b.sample_point;
  m.sample_point = [sample_a, sample_b, na, nb, n,
                    combined_chart](Rng& rng) {
    const ChartPoint pa = sample_a(rng);
    const ChartPoint pb = sample_b(rng);
    ChartPoint p;
    p.chart = combined_chart;
    p.z.resize(n);
    p.z.head(na) = pa.z;
    p.z.tail(nb) = pb.z;
    return p;
  };
  prod.name = "product";
  m.metrics["product"] = prod;
  m.default_metric = "product";
  return m;
}

// ---------------------------------------------------------------------------

inline ManifoldModel model_by_name(const std::string& spec) {
  const ParsedName pn = parse_catalog_name(spec);
  if (pn.base == "cp1_fs") return make_cpn_model(1);
  if (pn.base == "cpn_fs") {
    const int n = param_int(pn, "n", 2);
    if (n < 2 || n > 3)
      throw ConfigInvalid("cpn_fs supports n=2 or n=3, got " +
                          std::to_string(n));
    return make_cpn_model(n);
  }
  if (pn.base == "torus_flat") {
    const int n = param_int(pn, "n", 1);
    const double scale = param_num(pn, "scale", 1.0);
    if (n < 1 || n > 2) throw ConfigInvalid("torus_flat supports n=1 or n=2");
    if (!(scale > 0.0)) throw ConfigInvalid("torus_flat scale must be > 0");
    return make_torus_model(n, scale);
  }
  if (pn.base == "hopf_std") return make_hopf_model();
  if (pn.base == "cp1_fs_conformal") {
    const int seed = param_int(pn, "seed", 7);
    const double eps = param_num(pn, "eps", 0.01);
    return make_cp1_conformal_model(seed, eps);
  }
  if (pn.base == "torus_x_cp1") {
    ManifoldModel m = make_product_model(make_torus_model(1, 1.0),
                                         make_cpn_model(1), "torus_x_cp1");
    m.topo.canonical_nef = false;  // negative on the sphere factor
    return m;
  }
  if (pn.base == "torus_x_torus") {
    ManifoldModel m = make_product_model(make_torus_model(1, 1.0),
                                         make_torus_model(1, 1.0),
                                         "torus_x_torus");
    m.topo.canonical_nef = true;
    m.topo.two_pi_c1_canonical_ratio = 0.0;
    m.metrics["product"].einstein_known = true;  // flat block metric
    return m;
  }
  throw ConfigInvalid("unknown model '" + spec + "'");
}

inline std::vector<std::string> catalog_model_names() {
  return {"cp1_fs",
          "cpn_fs:n=2",
          "cpn_fs:n=3",
          "torus_flat:n=1,scale=1",
          "torus_flat:n=2,scale=1",
          "hopf_std",
          "cp1_fs_conformal:seed=7,eps=0.01",
          "torus_x_cp1",
          "torus_x_torus"};
}

}  // namespace chernlab
