#pragma once
// Holomorphic maps between catalog models.  A map produces, per source point,
// the image point and the Jacobian f^a_i = df^a/dz^i expressed in the exact
// chart the image landed in; branch logic picks target charts so that image
// coordinates stay O(1) wherever possible.

#include <cmath>
#include <memory>
#include <optional>
#include <string>

#include "catalog.hpp"
#include "curvature.hpp"

namespace chernlab {

struct MapJet {
  ChartPoint image;
  MatC jac;  // m x n
};

struct HolomorphicMapModel {
  std::string name;
  std::shared_ptr<ManifoldModel> source;
  std::shared_ptr<ManifoldModel> target;
  std::function<MapJet(const ChartPoint&)> jet;
  std::optional<int> declared_degree;
  bool declared_constant = false;

  ChartPoint eval(const ChartPoint& p) const { return jet(p).image; }
  MatC jacobian(const ChartPoint& p) const { return jet(p).jac; }
};

// (f*eta)_{i jbar} = eta_{a bbar}(f(p)) f^a_i conj(f^b_j)
inline MatC pullback_metric(const HolomorphicMapModel& f,
                            const HermitianMetricField& eta,
                            const ChartPoint& p) {
  const MapJet mj = f.jet(p);
  if (!has_chart(*f.target, mj.image.chart))
    throw ChartMismatch("map '" + f.name + "' landed in unregistered chart '" +
                        mj.image.chart + "'");
  const MatC eta_im = eval_metric(eta, mj.image);
  return MatC(mj.jac.transpose() * eta_im * mj.jac.conjugate());
}

// Lambda = tr_omega f*eta; zero exactly where df vanishes
inline double energy_density(const HolomorphicMapModel& f,
                             const HermitianMetricField& omega,
                             const HermitianMetricField& eta,
                             const ChartPoint& p) {
  const MatC g = eval_metric(omega, p);
  const MatC h = hermitian_inverse(g);
  const MatC pb = pullback_metric(f, eta, p);
  const int n = omega.dim;
  Complex tr(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tr += h(j, i) * pb(i, j);
  return tr.real();
}

// u = f*eta^n / omega^n = det(eta at image) |det J|^2 / det(g)
inline double jacobian_density(const HolomorphicMapModel& f,
                               const HermitianMetricField& omega,
                               const HermitianMetricField& eta,
                               const ChartPoint& p) {
  if (omega.dim != eta.dim)
    throw DimensionMismatch("volume-ratio density needs equal dimensions, got " +
                            std::to_string(omega.dim) + " and " +
                            std::to_string(eta.dim));
  const MapJet mj = f.jet(p);
  const MatC eta_im = eval_metric(eta, mj.image);
  const MatC g = eval_metric(omega, p);
  const double det_eta = std::real(eta_im.determinant());
  const double det_g = std::real(g.determinant());
  if (!(det_g > 0.0))
    throw SingularMetric("non-positive source determinant in density");
  const double dj = std::abs(mj.jac.determinant());
  return det_eta * dj * dj / det_g;
}

enum class Constancy { Constant, NonConstant };
enum class Degeneracy { Degenerate, NonDegenerate, NotApplicable };

struct MapClass {
  Constancy constancy = Constancy::Constant;
  Degeneracy degeneracy = Degeneracy::NotApplicable;
  double max_energy = 0.0;
  double max_density = 0.0;
  int samples = 0;
};

// Sampling classification over quadrature nodes plus random fill; max values
// are reported so borderline calls can be audited.
inline MapClass classify_map(const HolomorphicMapModel& f,
                             const HermitianMetricField& omega,
                             const HermitianMetricField& eta,
                             int sample_budget = 256,
                             std::uint64_t seed = 99) {
  MapClass out;
  std::vector<ChartPoint> pts;
  try {
    const QuadratureScheme q = build_scheme(*f.source, 0);
    pts = subsample_nodes(q, static_cast<std::size_t>(sample_budget) / 2);
  } catch (const QuadratureUnavailable&) {
  }
  Rng rng(seed);
  while (static_cast<int>(pts.size()) < sample_budget)
    pts.push_back(f.source->sample_point(rng));
  const bool equal_dims = omega.dim == eta.dim;
  for (const ChartPoint& p : pts) {
    out.max_energy = std::max(out.max_energy, energy_density(f, omega, eta, p));
    if (equal_dims)
      out.max_density =
          std::max(out.max_density, jacobian_density(f, omega, eta, p));
  }
  out.samples = static_cast<int>(pts.size());
  const double e_floor = 1e-10 * omega.dim;
  out.constancy =
      out.max_energy > e_floor ? Constancy::NonConstant : Constancy::Constant;
  if (equal_dims)
    out.degeneracy = out.max_density > 1e-10 ? Degeneracy::NonDegenerate
                                             : Degeneracy::Degenerate;
  return out;
}

// Finite-difference probe of a map around p, holding the image chart fixed
// through target transitions.  cr_defect is the anti-holomorphic derivative
// magnitude, zero for an honest holomorphic map.
struct FdMapJet {
  MatC jac;
  double cr_defect = 0.0;
};

inline FdMapJet fd_map_jacobian(const HolomorphicMapModel& f,
                                const ChartPoint& p) {
  const MapJet base = f.jet(p);
  const std::string tchart = base.image.chart;
  const int n = f.source->dim;
  const int m = f.target->dim;
  auto image_in_chart = [&](const ChartPoint& q) {
    ChartPoint im = f.jet(q).image;
    if (im.chart != tchart) im = change_chart(*f.target, im, tchart);
    return im.z;
  };
  FdMapJet out;
  out.jac = MatC(m, n);
  for (int i = 0; i < n; ++i) {
    const double h = std::cbrt(kEps) * (1.0 + std::abs(p.z[i]));
    auto central = [&](int axis, double hh) {
      return VecC((image_in_chart(detail::shifted(p, axis, hh)) -
                   image_in_chart(detail::shifted(p, axis, -hh))) /
                  (2.0 * hh));
    };
    auto rich = [&](int axis) {
      return VecC((4.0 * central(axis, 0.5 * h) - central(axis, h)) / 3.0);
    };
    const VecC dx = rich(2 * i);
    const VecC dy = rich(2 * i + 1);
    const VecC dz = 0.5 * (dx - Complex(0.0, 1.0) * dy);
    const VecC dzb = 0.5 * (dx + Complex(0.0, 1.0) * dy);
    out.jac.col(i) = dz;
    out.cr_defect = std::max(out.cr_defect, dzb.cwiseAbs().maxCoeff());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Map catalog

inline HolomorphicMapModel identity_map(std::shared_ptr<ManifoldModel> m) {
  HolomorphicMapModel f;
  f.name = "identity";
  f.source = m;
  f.target = m;
  f.declared_degree = 1;
  const int n = m->dim;
  f.jet = [n](const ChartPoint& p) {
    return MapJet{p, MatC::Identity(n, n)};
  };
  return f;
}

inline HolomorphicMapModel constant_map(std::shared_ptr<ManifoldModel> src,
                                        std::shared_ptr<ManifoldModel> tgt,
                                        std::uint64_t basepoint_seed = 999) {
  HolomorphicMapModel f;
  f.name = "constant";
  f.source = src;
  f.target = tgt;
  f.declared_constant = true;
  Rng rng(basepoint_seed);
  const ChartPoint base = tgt->sample_point(rng);
  const int n = src->dim, m = tgt->dim;
  f.jet = [base, n, m](const ChartPoint&) {
    return MapJet{base, MatC::Zero(m, n)};
  };
  return f;
}

// z -> z^d between spheres; the far region routes through the chart at
// infinity so coordinates never blow up
inline HolomorphicMapModel power_map(std::shared_ptr<ManifoldModel> src,
                                     std::shared_ptr<ManifoldModel> tgt,
                                     int d) {
  if (src->dim != 1 || tgt->dim != 1 || !has_chart(*src, "affine0") ||
      !has_chart(*tgt, "affine1"))
    throw ConfigInvalid("power map needs one-dimensional projective models");
  if (d < 1) throw ConfigInvalid("power map degree must be >= 1");
  HolomorphicMapModel f;
  f.name = "power:d=" + std::to_string(d);
  f.source = src;
  f.target = tgt;
  f.declared_degree = d;
  f.jet = [d](const ChartPoint& p) {
    // in homogeneous terms [1:z] -> [1:z^d]; chart affine1 sees u = 1/z and
    // the map u -> u^d toward the other pole
    const Complex z = p.z[0];
    const bool from_zero_chart = p.chart == "affine0";
    if (!from_zero_chart && p.chart != "affine1")
      throw ChartMismatch("power map got chart '" + p.chart + "'");
    MapJet mj;
    mj.jac = MatC(1, 1);
    const bool small = std::abs(z) <= 1.0;
    Complex w, dw;
    if (small) {
      w = std::pow(z, d);
      dw = (d == 1) ? Complex(1.0, 0.0) : double(d) * std::pow(z, d - 1);
      mj.image.chart = from_zero_chart ? "affine0" : "affine1";
    } else {
      w = std::pow(z, -d);
      dw = -double(d) * std::pow(z, -d - 1);
      mj.image.chart = from_zero_chart ? "affine1" : "affine0";
    }
    mj.image.z.resize(1);
    mj.image.z[0] = w;
    mj.jac(0, 0) = dw;
    return mj;
  };
  return f;
}

// z -> k z between flat tori, coordinates wrapped into the target cell
inline HolomorphicMapModel torus_isogeny(std::shared_ptr<ManifoldModel> src,
                                         std::shared_ptr<ManifoldModel> tgt,
                                         int k) {
  if (src->dim != tgt->dim || !has_chart(*src, "cell") ||
      !has_chart(*tgt, "cell"))
    throw ConfigInvalid("isogeny needs two torus models of equal dimension");
  if (k < 1) throw ConfigInvalid("isogeny multiplier must be >= 1");
  auto it = tgt->params.find("cell");
  if (it == tgt->params.end())
    throw ConfigInvalid("target torus does not record its cell size");
  const double cell = it->second;
  const int n = src->dim;
  HolomorphicMapModel f;
  f.name = "isogeny:k=" + std::to_string(k);
  f.source = src;
  f.target = tgt;
  f.jet = [k, cell, n](const ChartPoint& p) {
    MapJet mj;
    mj.image.chart = "cell";
    mj.image.z.resize(n);
    for (int i = 0; i < n; ++i) {
      const double x = k * p.z[i].real();
      const double y = k * p.z[i].imag();
      mj.image.z[i] = Complex(x - cell * std::floor(x / cell),
                              y - cell * std::floor(y / cell));
    }
    mj.jac = MatC(double(k) * MatC::Identity(n, n));
    return mj;
  };
  return f;
}

// [1:z] -> [1:z:z^2], with the far branch through the chart where the last
// homogeneous coordinate is 1
inline HolomorphicMapModel veronese_map(std::shared_ptr<ManifoldModel> src,
                                        std::shared_ptr<ManifoldModel> tgt) {
  if (src->dim != 1 || tgt->dim != 2 || !has_chart(*tgt, "affine2"))
    throw ConfigInvalid("conic embedding needs a sphere source and a dim-2 "
                        "projective target");
  HolomorphicMapModel f;
  f.name = "veronese";
  f.source = src;
  f.target = tgt;
  f.jet = [](const ChartPoint& p) {
    Complex z = p.z[0];
    bool inverted = false;  // affine1 coordinate u is 1/z
    if (p.chart == "affine1")
      inverted = true;
    else if (p.chart != "affine0")
      throw ChartMismatch("conic embedding got chart '" + p.chart + "'");
    MapJet mj;
    mj.image.z.resize(2);
    mj.jac = MatC(2, 1);
    const bool small = std::abs(z) <= 1.0;
    if (!inverted) {
      if (small) {  // [1 : z : z^2]
        mj.image.chart = "affine0";
        mj.image.z[0] = z;
        mj.image.z[1] = z * z;
        mj.jac(0, 0) = 1.0;
        mj.jac(1, 0) = 2.0 * z;
      } else {  // [z^-2 : z^-1 : 1]
        mj.image.chart = "affine2";
        mj.image.z[0] = 1.0 / (z * z);
        mj.image.z[1] = 1.0 / z;
        mj.jac(0, 0) = -2.0 / (z * z * z);
        mj.jac(1, 0) = -1.0 / (z * z);
      }
    } else {
      // source coordinate u with z = 1/u: image [u^2 : u : 1]
      const Complex u = z;
      if (small) {
        mj.image.chart = "affine2";
        mj.image.z[0] = u * u;
        mj.image.z[1] = u;
        mj.jac(0, 0) = 2.0 * u;
        mj.jac(1, 0) = 1.0;
      } else {  // [1 : 1/u : 1/u^2]
        mj.image.chart = "affine0";
        mj.image.z[0] = 1.0 / u;
        mj.image.z[1] = 1.0 / (u * u);
        mj.jac(0, 0) = -1.0 / (u * u);
        mj.jac(1, 0) = -2.0 / (u * u * u);
      }
    }
    return mj;
  };
  return f;
}

// factor inclusion at a fixed basepoint of the complementary factor
inline HolomorphicMapModel embed_map(std::shared_ptr<ManifoldModel> src,
                                     std::shared_ptr<ManifoldModel> tgt,
                                     int factor, int factor_dims[2],
                                     std::uint64_t basepoint_seed = 12345) {
  const int na = factor_dims[0], nb = factor_dims[1];
  if (factor != 0 && factor != 1)
    throw ConfigInvalid("embedding factor must be 0 or 1");
  if (src->dim != (factor == 0 ? na : nb) || tgt->dim != na + nb)
    throw ConfigInvalid("embedding dimensions do not line up");
  HolomorphicMapModel f;
  f.name = "embed:factor=" + std::to_string(factor);
  f.source = src;
  f.target = tgt;
  Rng rng(basepoint_seed);
  const ChartPoint other = tgt->sample_point(rng);  // basepoint coordinates
  const std::string chart = tgt->atlas.front().id;
  const int n = src->dim, m = tgt->dim;
  f.jet = [factor, na, nb, other, chart, n, m](const ChartPoint& p) {
    MapJet mj;
    mj.image.chart = chart;
    mj.image.z = other.z;
    mj.jac = MatC::Zero(m, n);
    if (factor == 0) {
      mj.image.z.head(na) = p.z;
      mj.jac.topLeftCorner(na, na) = MatC::Identity(na, na);
    } else {
      mj.image.z.tail(nb) = p.z;
      mj.jac.bottomRightCorner(nb, nb) = MatC::Identity(nb, nb);
    }
    return mj;
  };
  return f;
}

inline HolomorphicMapModel projection_map(std::shared_ptr<ManifoldModel> src,
                                          std::shared_ptr<ManifoldModel> tgt,
                                          int factor, int factor_dims[2]) {
  const int na = factor_dims[0], nb = factor_dims[1];
  if (factor != 0 && factor != 1)
    throw ConfigInvalid("projection factor must be 0 or 1");
  if (src->dim != na + nb || tgt->dim != (factor == 0 ? na : nb))
    throw ConfigInvalid("projection dimensions do not line up");
  HolomorphicMapModel f;
  f.name = "projection:factor=" + std::to_string(factor);
  f.source = src;
  f.target = tgt;
  const std::string chart = tgt->atlas.front().id;
  const int m = tgt->dim, n = src->dim;
  f.jet = [factor, na, nb, chart, n, m](const ChartPoint& p) {
    MapJet mj;
    mj.image.chart = chart;
    mj.jac = MatC::Zero(m, n);
    if (factor == 0) {
      mj.image.z = p.z.head(na);
      mj.jac.topLeftCorner(na, na) = MatC::Identity(na, na);
    } else {
      mj.image.z = p.z.tail(nb);
      mj.jac.bottomRightCorner(nb, nb) = MatC::Identity(nb, nb);
    }
    return mj;
  };
  return f;
}

// (z1, z2) -> (z1, z1): nonconstant with identically singular Jacobian
inline HolomorphicMapModel collapse_map(std::shared_ptr<ManifoldModel> m) {
  if (m->dim != 2)
    throw ConfigInvalid("diagonal collapse needs a two-dimensional product");
  HolomorphicMapModel f;
  f.name = "collapse";
  f.source = m;
  f.target = m;
  const std::string chart = m->atlas.front().id;
  f.jet = [chart](const ChartPoint& p) {
    MapJet mj;
    mj.image.chart = chart;
    mj.image.z.resize(2);
    mj.image.z[0] = p.z[0];
    mj.image.z[1] = p.z[0];
    mj.jac = MatC::Zero(2, 2);
    mj.jac(0, 0) = 1.0;
    mj.jac(1, 0) = 1.0;
    return mj;
  };
  return f;
}

// name-addressed construction between already-built models
inline HolomorphicMapModel make_map(const std::string& spec,
                                    std::shared_ptr<ManifoldModel> src,
                                    std::shared_ptr<ManifoldModel> tgt) {
  const ParsedName pn = parse_catalog_name(spec);
  if (pn.base == "identity") {
    if (src->name != tgt->name)
      throw ConfigInvalid("identity map needs matching source and target");
    return identity_map(src);
  }
  if (pn.base == "constant")
    return constant_map(src, tgt, static_cast<std::uint64_t>(
                                      param_int(pn, "seed", 999)));
  if (pn.base == "power") return power_map(src, tgt, param_int(pn, "d", 2));
  if (pn.base == "isogeny")
    return torus_isogeny(src, tgt, param_int(pn, "k", 2));
  if (pn.base == "veronese") return veronese_map(src, tgt);
  if (pn.base == "embed") {
    int dims[2] = {param_int(pn, "na", 1), param_int(pn, "nb", 1)};
    return embed_map(src, tgt, param_int(pn, "factor", 0), dims);
  }
  if (pn.base == "projection") {
    int dims[2] = {param_int(pn, "na", 1), param_int(pn, "nb", 1)};
    return projection_map(src, tgt, param_int(pn, "factor", 0), dims);
  }
  if (pn.base == "collapse") {
    if (src->name != tgt->name)
      throw ConfigInvalid("diagonal collapse is a self-map");
    return collapse_map(src);
  }
  throw ConfigInvalid("unknown map '" + spec + "'");
}

}  // namespace chernlab
