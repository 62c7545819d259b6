// Holomorphic maps: jets against finite differences, chart branch logic,
// pullback energies with their mapping-degree integrals, and classification.

#include <catch2/catch_amalgamated.hpp>

#include <chernlab/maps.hpp>
#include <chernlab/quadrature.hpp>

using namespace chernlab;

namespace {

std::shared_ptr<ManifoldModel> model(const std::string& name) {
  return std::make_shared<ManifoldModel>(model_by_name(name));
}

}  // namespace

TEST_CASE("identity map is the do-nothing jet") {
  auto m = model("cpn_fs:n=2");
  HolomorphicMapModel f = identity_map(m);
  ChartPoint p = make_point("affine0", {Complex(0.2, 0.1), Complex(-0.5, 0.3)});
  MapJet mj = f.jet(p);
  REQUIRE(mj.image.chart == p.chart);
  REQUIRE((mj.image.z - p.z).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((mj.jac - MatC::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  const HermitianMetricField& g = model_metric(*m);
  REQUIRE(energy_density(f, g, g, p) == Catch::Approx(2.0).epsilon(1e-12));
  REQUIRE(jacobian_density(f, g, g, p) == Catch::Approx(1.0).epsilon(1e-12));

  MapClass cls = classify_map(f, g, g);
  REQUIRE(cls.constancy == Constancy::NonConstant);
  REQUIRE(cls.degeneracy == Degeneracy::NonDegenerate);
}

TEST_CASE("constant map classifies as constant") {
  auto src = model("cp1_fs");
  auto tgt = model("cp1_fs");
  HolomorphicMapModel f = constant_map(src, tgt, 5);
  const HermitianMetricField& g = model_metric(*src);
  ChartPoint p = make_point("affine0", {Complex(0.4, 0.4)});
  REQUIRE(energy_density(f, g, model_metric(*tgt), p) == 0.0);
  MapClass cls = classify_map(f, g, model_metric(*tgt));
  REQUIRE(cls.constancy == Constancy::Constant);
  REQUIRE(cls.degeneracy == Degeneracy::Degenerate);
  REQUIRE(f.declared_constant);
}

TEST_CASE("power map jets match finite differences") {
  auto src = model("cp1_fs");
  auto tgt = model("cp1_fs");
  for (int d : {1, 2, 3}) {
    HolomorphicMapModel f = power_map(src, tgt, d);
    ChartPoint p = make_point("affine0", {Complex(0.31, 0.22)});
    MapJet mj = f.jet(p);
    const Complex z = p.z[0];
    REQUIRE(std::abs(mj.image.z[0] - std::pow(z, d)) < 1e-14);
    FdMapJet fd = fd_map_jacobian(f, p);
    REQUIRE((fd.jac - mj.jac).cwiseAbs().maxCoeff() < 1e-8);
    REQUIRE(fd.cr_defect < 1e-8);
  }
}

TEST_CASE("power map routes the far region through the infinity chart") {
  auto src = model("cp1_fs");
  auto tgt = model("cp1_fs");
  HolomorphicMapModel f = power_map(src, tgt, 2);

  ChartPoint far = make_point("affine0", {Complex(2.0, 0.0)});
  MapJet mj = f.jet(far);
  REQUIRE(mj.image.chart == "affine1");
  REQUIRE(std::abs(mj.image.z[0] - Complex(0.25, 0.0)) < 1e-14);
  // same sphere point as coordinate 4 in the zero chart
  ChartPoint back = change_chart(*tgt, mj.image, "affine0");
  REQUIRE(std::abs(back.z[0] - Complex(4.0, 0.0)) < 1e-12);

  // evaluating from the other chart agrees pointwise
  ChartPoint other = make_point("affine1", {Complex(0.5, 0.0)});  // z = 2
  MapJet mj2 = f.jet(other);
  REQUIRE(mj2.image.chart == "affine1");
  REQUIRE(std::abs(mj2.image.z[0] - Complex(0.25, 0.0)) < 1e-14);

  // finite differences across the branch cut still see a holomorphic map
  FdMapJet fd = fd_map_jacobian(f, far);
  REQUIRE(fd.cr_defect < 1e-7);
}

TEST_CASE("power map total energy equals the degree") {
  auto src = model("cp1_fs");
  auto tgt = model("cp1_fs");
  ManifoldModel& sm = *src;
  QuadratureScheme q = build_scheme(sm, 0);
  for (int d : {1, 2, 3, 5}) {
    HolomorphicMapModel f = power_map(src, tgt, d);
    const double e = integrate_top(q, model_metric(sm), [&](const ChartPoint& p) {
      return energy_density(f, model_metric(*src), model_metric(*tgt), p);
    });
    REQUIRE(e == Catch::Approx(double(d)).epsilon(1e-6));
  }
}

TEST_CASE("torus isogeny stretches energy by the covering count") {
  auto src = model("torus_flat:n=1,scale=1");
  auto tgt = model("torus_flat:n=1,scale=0.5");
  HolomorphicMapModel f = torus_isogeny(src, tgt, 2);
  ChartPoint p = make_point("cell", {Complex(0.81, 0.13)});
  MapJet mj = f.jet(p);
  REQUIRE(mj.image.chart == "cell");
  // 2 * 0.81 = 1.62 wraps to 0.12 in the half cell
  REQUIRE(mj.image.z[0].real() == Catch::Approx(0.12).margin(1e-12));
  REQUIRE(mj.image.z[0].imag() == Catch::Approx(0.26).margin(1e-12));
  const HermitianMetricField& g = model_metric(*src);
  const HermitianMetricField& h = model_metric(*tgt);
  // |df|^2 ratio: target coefficient 2, source 1/2, |J|^2 = 4
  REQUIRE(energy_density(f, g, h, p) == Catch::Approx(16.0).epsilon(1e-12));
  REQUIRE(jacobian_density(f, g, h, p) == Catch::Approx(16.0).epsilon(1e-12));
  MapClass cls = classify_map(f, g, h);
  REQUIRE(cls.constancy == Constancy::NonConstant);
  REQUIRE(cls.degeneracy == Degeneracy::NonDegenerate);
}

TEST_CASE("conic embedding pulls back twice the line mass") {
  auto src = model("cp1_fs");
  auto tgt = model("cpn_fs:n=2");
  HolomorphicMapModel f = veronese_map(src, tgt);

  ChartPoint p = make_point("affine0", {Complex(0.4, -0.3)});
  MapJet mj = f.jet(p);
  REQUIRE(mj.image.chart == "affine0");
  REQUIRE(std::abs(mj.image.z[0] - p.z[0]) < 1e-14);
  REQUIRE(std::abs(mj.image.z[1] - p.z[0] * p.z[0]) < 1e-14);
  FdMapJet fd = fd_map_jacobian(f, p);
  REQUIRE((fd.jac - mj.jac).cwiseAbs().maxCoeff() < 1e-8);
  REQUIRE(fd.cr_defect < 1e-8);

  ChartPoint far = make_point("affine0", {Complex(1.7, 1.1)});
  REQUIRE(f.jet(far).image.chart == "affine2");
  REQUIRE(fd_map_jacobian(f, far).cr_defect < 1e-7);

  QuadratureScheme q = build_scheme(*src, 0);
  const double mass = integrate_top(q, model_metric(*src), [&](const ChartPoint& x) {
    return energy_density(f, model_metric(*src), model_metric(*tgt), x);
  });
  REQUIRE(mass == Catch::Approx(2.0).epsilon(1e-6));

  MapClass cls = classify_map(f, model_metric(*src), model_metric(*tgt));
  REQUIRE(cls.constancy == Constancy::NonConstant);
  REQUIRE(cls.degeneracy == Degeneracy::NotApplicable);
}

TEST_CASE("factor embedding and projection carry unit energy blocks") {
  auto prod = model("torus_x_cp1");
  auto torus = model("torus_flat:n=1,scale=1");
  auto cp1 = model("cp1_fs");
  int dims[2] = {1, 1};

  HolomorphicMapModel in_cp1 = embed_map(cp1, prod, 1, dims, 77);
  ChartPoint p = make_point("affine0", {Complex(0.2, 0.5)});
  MapJet mj = in_cp1.jet(p);
  REQUIRE(mj.image.z[1] == p.z[0]);
  REQUIRE(std::abs(mj.jac(1, 0) - Complex(1.0, 0.0)) == 0.0);
  REQUIRE(std::abs(mj.jac(0, 0)) == 0.0);
  // second factor of the block metric is the round metric itself
  REQUIRE(energy_density(in_cp1, model_metric(*cp1), model_metric(*prod), p) ==
          Catch::Approx(1.0).epsilon(1e-12));

  HolomorphicMapModel onto_torus = projection_map(prod, torus, 0, dims);
  ChartPoint q;
  q.chart = prod->atlas.front().id;
  q.z.resize(2);
  q.z[0] = Complex(0.3, 0.4);
  q.z[1] = Complex(0.1, -0.2);
  MapJet pj = onto_torus.jet(q);
  REQUIRE(pj.image.chart == "cell");
  REQUIRE(pj.image.z[0] == q.z[0]);
  REQUIRE(energy_density(onto_torus, model_metric(*prod), model_metric(*torus), q) ==
          Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("diagonal collapse is nonconstant yet degenerate") {
  auto prod = model("torus_x_torus");
  HolomorphicMapModel f = collapse_map(prod);
  const HermitianMetricField& g = model_metric(*prod);
  MapClass cls = classify_map(f, g, g);
  REQUIRE(cls.constancy == Constancy::NonConstant);
  REQUIRE(cls.degeneracy == Degeneracy::Degenerate);
  REQUIRE(cls.max_energy > 0.1);
  REQUIRE(cls.max_density < 1e-12);
}

TEST_CASE("name-addressed map construction validates its inputs") {
  auto cp1 = model("cp1_fs");
  auto cp2 = model("cpn_fs:n=2");
  auto torus = model("torus_flat:n=1,scale=1");

  REQUIRE(make_map("identity", cp1, cp1).name == "identity");
  REQUIRE_THROWS_AS(make_map("identity", cp1, cp2), ConfigInvalid);
  REQUIRE_THROWS_AS(make_map("power:d=0", cp1, cp1), ConfigInvalid);
  REQUIRE_THROWS_AS(make_map("power:d=2", torus, torus), ConfigInvalid);
  REQUIRE_THROWS_AS(make_map("isogeny:k=0", torus, torus), ConfigInvalid);
  REQUIRE_THROWS_AS(make_map("veronese", cp2, cp1), ConfigInvalid);
  REQUIRE_THROWS_AS(make_map("collapse", cp1, cp1), ConfigInvalid);
  REQUIRE_THROWS_AS(make_map("teleport", cp1, cp1), ConfigInvalid);
  REQUIRE(make_map("power:d=3", cp1, cp1).declared_degree == 3);
}

TEST_CASE("pullback rejects images in unregistered charts") {
  auto cp1 = model("cp1_fs");
  HolomorphicMapModel f = identity_map(cp1);
  f.jet = [](const ChartPoint& p) {
    MapJet mj;
    mj.image = p;
    mj.image.chart = "nowhere";
    mj.jac = MatC::Identity(1, 1);
    return mj;
  };
  ChartPoint p = make_point("affine0", {Complex(0.1, 0.1)});
  REQUIRE_THROWS_AS(pullback_metric(f, model_metric(*cp1), p), ChartMismatch);
}

TEST_CASE("jacobian density needs matching dimensions") {
  auto cp1 = model("cp1_fs");
  auto cp2 = model("cpn_fs:n=2");
  HolomorphicMapModel f = veronese_map(cp1, cp2);
  ChartPoint p = make_point("affine0", {Complex(0.3, 0.0)});
  REQUIRE_THROWS_AS(
      jacobian_density(f, model_metric(*cp1), model_metric(*cp2), p),
      DimensionMismatch);
}
