// Quadrature: volume calibrations, closed-form integrands, error estimates,
// form pairing, and the Gauduchon residual probes.

#include <catch2/catch_amalgamated.hpp>

#include <chernlab/catalog.hpp>
#include <chernlab/quadrature.hpp>

using namespace chernlab;

namespace {

double xi_of(const ChartPoint& p) {
  const double s = p.z.squaredNorm();
  return s / (1.0 + s);
}
}  // namespace

TEST_CASE("catalog volumes match their declared normalizations") {
  struct Row {
    const char* model;
    double want;
    double rel;
  };
  const Row rows[] = {
      {"cp1_fs", 1.0, 1e-9},
      {"cpn_fs:n=2", 1.0, 1e-12},  // importance weights make this exact
      {"cpn_fs:n=3", 1.0, 1e-12},
      {"torus_flat:n=1,scale=1", 1.0, 1e-12},
      {"torus_flat:n=2,scale=1", 2.0, 1e-12},
      {"torus_flat:n=2,scale=0.5", 2.0, 1e-12},
      {"hopf_std", 16.0 * kPi * kPi * std::log(2.0), 1e-9},
  };
  for (const Row& row : rows) {
    ManifoldModel m = model_by_name(row.model);
    QuadratureScheme q = build_scheme(m, 0);
    const double vol = total_volume(q, model_metric(m));
    INFO(row.model);
    REQUIRE(vol == Catch::Approx(row.want).epsilon(row.rel));
    if (model_metric(m).declared_volume)
      REQUIRE(vol ==
              Catch::Approx(*model_metric(m).declared_volume).epsilon(1e-8));
  }
}

TEST_CASE("volume scales as c^n under metric scaling") {
  ManifoldModel m = model_by_name("cpn_fs:n=2");
  QuadratureScheme q = build_scheme(m, 20000);
  HermitianMetricField scaled = scaled_metric(model_metric(m), 4.0);
  REQUIRE(total_volume(q, scaled) == Catch::Approx(16.0).epsilon(1e-10));
}

TEST_CASE("radial profile integral hits its closed form on the sphere") {
  // integral of s/(1+s) against the unit-volume round metric is n/(n+1)
  ManifoldModel m = model_by_name("cp1_fs");
  QuadratureScheme q = build_scheme(m, 0);
  const double got = integrate_top(q, model_metric(m), xi_of);
  REQUIRE(got == Catch::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("quasi-random scheme converges on the closed-form radial integral") {
  ManifoldModel m = model_by_name("cpn_fs:n=2");
  QuadratureScheme coarse = build_scheme(m, 20000);
  QuadratureScheme fine = build_scheme(m, 80000);
  const double wc = integrate_top(coarse, model_metric(m), xi_of);
  const double wf = integrate_top(fine, model_metric(m), xi_of);
  REQUIRE(wc == Catch::Approx(2.0 / 3.0).epsilon(5e-3));
  REQUIRE(wf == Catch::Approx(2.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("two-mesh estimate brackets the true error") {
  ManifoldModel m = model_by_name("cp1_fs");
  IntegralEstimate e = integrate_top_est(m, model_metric(m), xi_of);
  REQUIRE(std::abs(e.value - 0.5) <= 10.0 * e.error_estimate + 1e-9);
  REQUIRE(e.resolution > 0);
}

TEST_CASE("integration rejects degenerate inputs") {
  ManifoldModel m = model_by_name("torus_flat:n=1,scale=1");
  QuadratureScheme q = build_scheme(m, 0);
  SECTION("empty scheme") {
    QuadratureScheme empty;
    REQUIRE_THROWS_AS(total_volume(empty, model_metric(m)), QuadratureUnavailable);
  }
  SECTION("non-positive determinant") {
    HermitianMetricField bad = model_metric(m);
    bad.eval = [](const ChartPoint&) { return MatC(-MatC::Identity(1, 1)); };
    REQUIRE_THROWS_AS(total_volume(q, bad), SingularMetric);
  }
}

TEST_CASE("pairing a metric against itself integrates to the volume") {
  // tr_omega(omega) = n, so the pairing collapses to vol
  ManifoldModel m = model_by_name("torus_flat:n=2,scale=1");
  QuadratureScheme q = build_scheme(m, 0);
  const HermitianMetricField& g = model_metric(m);
  Form11Field self;
  self.dim = 2;
  self.eval = [&g](const ChartPoint& p) { return g.eval(p); };
  REQUIRE(pair_form(q, g, self) == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("pairing ignores exact ddbar corrections on a Gauduchon background") {
  // alpha and alpha + i ddbar u pair identically against omega^{n-1} when u
  // descends to the torus; amplitude kept small so the data stays PSD.
  ManifoldModel m = model_by_name("torus_flat:n=2,scale=1");
  QuadratureScheme q = build_scheme(m, 0);
  const HermitianMetricField& g = model_metric(m);
  Form11Field alpha;
  alpha.dim = 2;
  alpha.eval = [&g](const ChartPoint& p) { return g.eval(p); };
  Form11Field shifted;
  shifted.dim = 2;
  shifted.eval = [&g](const ChartPoint& p) {
    MatC a = g.eval(p);
    // i ddbar of 0.02 sin(2 pi x1): only the (1,1bar) entry moves
    a(0, 0) += -0.02 * kPi * kPi * std::sin(2.0 * kPi * p.z[0].real());
    return a;
  };
  const double base = pair_form(q, g, alpha);
  const double moved = pair_form(q, g, shifted);
  REQUIRE(moved == Catch::Approx(base).margin(2e-6));
}

TEST_CASE("pairing guards against signed data unless told otherwise") {
  ManifoldModel m = model_by_name("torus_flat:n=2,scale=1");
  QuadratureScheme q = build_scheme(m, 0);
  const HermitianMetricField& g = model_metric(m);
  Form11Field neg;
  neg.dim = 2;
  neg.eval = [](const ChartPoint&) { return MatC(-MatC::Identity(2, 2)); };
  REQUIRE_THROWS_AS(pair_form(q, g, neg), ConfigInvalid);
  // tr_omega(-I) = -4 against g = I/2, so the weighted trace is -2 per node
  REQUIRE(pair_form(q, g, neg, {}, true) == Catch::Approx(-4.0).epsilon(1e-12));
}

TEST_CASE("laplacian mass vanishes on Gauduchon backgrounds") {
  SECTION("flat torus, trigonometric probe") {
    ManifoldModel m = model_by_name("torus_flat:n=2,scale=1");
    QuadratureScheme q = build_scheme(m, 0);
    ScalarField u;
    u.value = [](const ChartPoint& p) {
      return std::sin(2.0 * kPi * p.z[0].real()) *
             std::cos(2.0 * kPi * p.z[0].imag());
    };
    REQUIRE(std::abs(gauduchon_residual(q, model_metric(m), u)) < 1e-7);
  }
  SECTION("round sphere, rational probe") {
    ManifoldModel m = model_by_name("cp1_fs");
    QuadratureScheme q = build_scheme(m, 0);
    ScalarField u;
    u.value = [](const ChartPoint& p) {
      return p.z[0].real() / (1.0 + p.z.squaredNorm());
    };
    REQUIRE(std::abs(gauduchon_residual(q, model_metric(m), u)) < 1e-5);
  }
  SECTION("Hopf shell, scale-periodic probe") {
    ManifoldModel m = model_by_name("hopf_std");
    QuadratureScheme q = build_scheme(m, 0);
    ScalarField u;
    u.value = [](const ChartPoint& p) {
      const double s = p.z.squaredNorm();
      return std::cos(kPi * std::log2(s));
    };
    REQUIRE(std::abs(gauduchon_residual(q, model_metric(m), u)) < 1e-4);
  }
}

TEST_CASE("laplacian mass detects a non-Gauduchon surface metric") {
  // ghat = (1 + 0.3 cos(2 pi x1)) I / 2 on the n = 2 torus cell; against
  // u = cos(2 pi x1) the mass is -4 pi^2 * 0.15 exactly.
  ManifoldModel m = model_by_name("torus_flat:n=2,scale=1");
  QuadratureScheme q = build_scheme(m, 0);
  HermitianMetricField ghat;
  ghat.dim = 2;
  ghat.name = "wavy";
  ghat.eval = [](const ChartPoint& p) {
    const double h = 1.0 + 0.3 * std::cos(2.0 * kPi * p.z[0].real());
    return MatC(0.5 * h * MatC::Identity(2, 2));
  };
  ScalarField u;
  u.value = [](const ChartPoint& p) {
    return std::cos(2.0 * kPi * p.z[0].real());
  };
  const double want = -0.6 * kPi * kPi;
  const double got = gauduchon_residual(q, ghat, u);
  REQUIRE(got == Catch::Approx(want).epsilon(1e-4));
}

TEST_CASE("quadrature nodes and weights are deterministic") {
  ManifoldModel m = model_by_name("cpn_fs:n=2");
  QuadratureScheme a = build_scheme(m, 5000);
  QuadratureScheme b = build_scheme(m, 5000);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); i += 997) {
    REQUIRE(a.weights[i] == b.weights[i]);
    REQUIRE((a.nodes[i].z - b.nodes[i].z).cwiseAbs().maxCoeff() == 0.0);
  }
}
