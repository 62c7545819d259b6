// Chern curvature packs against closed forms: constant-curvature projective
// space, the flat torus, and the Hopf shell, plus the structural identities
// every pack has to satisfy.

#include <catch2/catch_amalgamated.hpp>

#include <chernlab/catalog.hpp>
#include <chernlab/curvature.hpp>
#include <chernlab/rng.hpp>

using namespace chernlab;

namespace {

ChartPoint hopf_point(double re1, double im1, double re2, double im2) {
  return make_point("annulus", {Complex(re1, im1), Complex(re2, im2)});
}
}  // namespace

TEST_CASE("projective space has constant scalar curvature 2 pi n (n+1)") {
  for (int n : {1, 2, 3}) {
    ManifoldModel m = n == 1 ? model_by_name("cp1_fs")
                             : model_by_name("cpn_fs:n=" + std::to_string(n));
    const HermitianMetricField& fs = model_metric(m);
    Rng rng(100 + static_cast<std::uint64_t>(n));
    const double want = 2.0 * kPi * n * (n + 1.0);
    for (int trial = 0; trial < 6; ++trial) {
      ChartPoint p = m.sample_point(rng);
      CurvaturePack c = chern_curvature(fs, p);
      REQUIRE(c.scalar == Catch::Approx(want).epsilon(1e-6));
      REQUIRE(c.scalar_alt == Catch::Approx(want).epsilon(1e-6));
      REQUIRE(std::abs(c.scalar - c.scalar_alt) <= 1e-9 * (1.0 + std::abs(c.scalar)));
    }
  }
}

TEST_CASE("Fubini-Study Ricci matrices are 2 pi (n+1) times the metric") {
  ManifoldModel m = model_by_name("cpn_fs:n=2");
  const HermitianMetricField& fs = model_metric(m);
  Rng rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    ChartPoint p = m.sample_point(rng);
    CurvaturePack c = chern_curvature(fs, p);
    const double lam = 6.0 * kPi;
    double scale = c.g.cwiseAbs().maxCoeff();
    REQUIRE((c.ricci - lam * c.g).cwiseAbs().maxCoeff() < 1e-6 * lam * scale);
    REQUIRE((c.second_ricci - lam * c.g).cwiseAbs().maxCoeff() < 1e-6 * lam * scale);
  }
}

TEST_CASE("flat torus curvature vanishes identically") {
  ManifoldModel m = model_by_name("torus_flat:n=2,scale=1");
  const HermitianMetricField& flat = model_metric(m);
  ChartPoint p = make_point("cell", {Complex(0.3, 0.7), Complex(0.11, 0.52)});
  CurvaturePack c = chern_curvature(flat, p);
  REQUIRE(c.r.max_abs() < 1e-8);
  REQUIRE(std::abs(c.scalar) < 1e-8);
  REQUIRE(c.ricci.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("Hopf shell curvature matches its closed form") {
  // g = I/s with s = |z|^2 gives R_{i jbar k lbar} = delta_kl M_ij,
  // M = I/s^2 - zbar z^T/s^3.  Contractions: ricci = n s M,
  // second ricci = (n-1) g, scalar = n(n-1).
  ManifoldModel m = model_by_name("hopf_std");
  const HermitianMetricField& g = model_metric(m);
  const int n = 2;
  for (ChartPoint p : {hopf_point(1.1, 0.2, -0.4, 0.6), hopf_point(-0.9, 0.8, 0.3, -0.5)}) {
    const double s = std::norm(p.z[0]) + std::norm(p.z[1]);
    MatC mm = MatC::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) mm(i, j) += 1.0 / (s * s);
        mm(i, j) -= std::conj(p.z[i]) * p.z[j] / (s * s * s);
      }
    CurvaturePack c = chern_curvature(g, p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            Complex want = (k == l) ? mm(i, j) : Complex(0.0, 0.0);
            REQUIRE(std::abs(c.r(i, j, k, l) - want) < 1e-6);
          }
    REQUIRE((c.ricci - double(n) * s * mm).cwiseAbs().maxCoeff() < 1e-6);
    REQUIRE((c.second_ricci - double(n - 1) * c.g).cwiseAbs().maxCoeff() < 1e-6);
    REQUIRE(c.scalar == Catch::Approx(double(n) * (n - 1.0)).margin(1e-6));
  }
}

TEST_CASE("Kahler defect separates Kahler metrics from the Hopf metric") {
  ManifoldModel cp1 = model_by_name("cp1_fs");
  ChartPoint p = make_point("affine0", {Complex(0.4, -0.3)});
  REQUIRE(kahler_defect(model_metric(cp1), p) < 1e-7);

  ManifoldModel hopf = model_by_name("hopf_std");
  ChartPoint q = hopf_point(1.0, 0.3, 0.2, -0.4);
  REQUIRE(kahler_defect(model_metric(hopf), q) > 1e-2);
}

TEST_CASE("Hermitian pair symmetry holds for every catalog pack") {
  Rng rng(42);
  for (const char* name : {"cp1_fs", "cpn_fs:n=2", "hopf_std", "torus_flat:n=2,scale=1"}) {
    ManifoldModel m = model_by_name(name);
    ChartPoint p = m.sample_point(rng);
    CurvaturePack c = chern_curvature(model_metric(m), p);
    double scale = 1.0 + c.r.max_abs();
    REQUIRE(c.sym_defect < 1e-5 * scale);
    // symmetrized storage: r(i,j,k,l) = conj(r(j,i,l,k)) exactly
    const int n = m.dim;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            REQUIRE(std::abs(c.r(i, j, k, l) - std::conj(c.r(j, i, l, k))) <
                    1e-12 * scale);
  }
}

TEST_CASE("curvature pack transforms covariantly under metric scaling") {
  ManifoldModel m = model_by_name("cpn_fs:n=2");
  const HermitianMetricField& fs = model_metric(m);
  Rng rng(9);
  ChartPoint p = m.sample_point(rng);
  CurvaturePack base = chern_curvature(fs, p);
  for (double c : {0.5, 2.0, 10.0}) {
    HermitianMetricField scaled = scaled_metric(fs, c);
    CurvaturePack sc = chern_curvature(scaled, p);
    const int n = 2;
    double rscale = base.r.max_abs();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            REQUIRE(std::abs(sc.r(i, j, k, l) - c * base.r(i, j, k, l)) <
                    1e-5 * c * rscale);
    REQUIRE((sc.ricci - base.ricci).cwiseAbs().maxCoeff() <
            1e-5 * base.ricci.cwiseAbs().maxCoeff());
    REQUIRE(sc.scalar == Catch::Approx(base.scalar / c).epsilon(1e-5));
  }
}

TEST_CASE("slot matrices reproduce the two-direction curvature form") {
  ManifoldModel m = model_by_name("hopf_std");
  CurvaturePack c = chern_curvature(model_metric(m), hopf_point(0.9, -0.2, 0.5, 0.3));
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    VecC w = rng.cnormal_vec(2);
    VecC v = rng.cnormal_vec(2);
    const double form = curvature_form(c, w, v);
    const double via_second = std::real(metric_pair(slot_matrix_second(c, w), v, v));
    const double via_first = std::real(metric_pair(slot_matrix_first(c, v), w, w));
    REQUIRE(form == Catch::Approx(via_second).margin(1e-10));
    REQUIRE(form == Catch::Approx(via_first).margin(1e-10));
  }
}

TEST_CASE("forced finite differences agree with analytic jets") {
  ManifoldModel m = model_by_name("cp1_fs");
  ChartPoint p = make_point("affine0", {Complex(0.25, 0.6)});
  CurvaturePack a = chern_curvature(model_metric(m), p);
  CurvaturePack b = chern_curvature(model_metric(m), p, true);
  REQUIRE(std::abs(a.r(0, 0, 0, 0) - b.r(0, 0, 0, 0)) < 1e-5 * (1.0 + a.r.max_abs()));
  REQUIRE(a.scalar == Catch::Approx(b.scalar).epsilon(1e-6));
}

TEST_CASE("scalar curvature is chart independent on projective space") {
  ManifoldModel m = model_by_name("cpn_fs:n=2");
  const HermitianMetricField& fs = model_metric(m);
  ChartPoint p = make_point("affine0", {Complex(0.8, -0.1), Complex(0.5, 0.4)});
  ChartPoint q = change_chart(m, p, "affine1");
  CurvaturePack a = chern_curvature(fs, p);
  CurvaturePack b = chern_curvature(fs, q);
  REQUIRE(a.scalar == Catch::Approx(b.scalar).epsilon(1e-8));
}
