#pragma once
// Manifold models: an atlas of named charts, a catalog of metric fields, the
// normalization metadata the checks compare against, and (when the model is
// compact and integrable) a quadrature scheme builder.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metric.hpp"
#include "rng.hpp"

namespace chernlab {

struct Chart {
  std::string id;
  int dim = 1;
};

struct QuadratureScheme {
  std::string kind;  // periodic_grid | sphere_chart | affine_qmc | annulus_grid
  int resolution = 0;
  std::vector<ChartPoint> nodes;
  std::vector<double> weights;  // coordinate-volume weights, all positive
  double stated_rel_tol = 1e-8; // promise on smooth integrands
};

struct TopoData {
  // total volume of the default metric's top power; unset when the default
  // metric has no closed-form normalization (conformal perturbations)
  std::optional<double> total_volume;
  std::optional<double> euler_char;
  std::optional<bool> canonical_nef;
  // [2pi c1(K)] = ratio * [default metric class]; 0 for tori, -(2pi)(n+1)
  // for projective space.  Unset when the model carries no usable class data.
  std::optional<double> two_pi_c1_canonical_ratio;
};

struct ManifoldModel {
  std::string name;
  int dim = 1;
  std::vector<Chart> atlas;
  std::map<std::string, HermitianMetricField> metrics;
  std::string default_metric;
  TopoData topo;
  std::map<std::string, double> params;  // model-specific numbers (cell size)
  int default_resolution = 0;
  std::function<QuadratureScheme(int resolution)> scheme_builder;
  // chart change; throws ChartMismatch where the transition is undefined
  std::function<ChartPoint(const ChartPoint&, const std::string&)> transition;
  std::function<ChartPoint(Rng&)> sample_point;
};

inline const HermitianMetricField& model_metric(const ManifoldModel& m,
                                                const std::string& name = "") {
  const std::string& key = name.empty() ? m.default_metric : name;
  auto it = m.metrics.find(key);
  if (it == m.metrics.end())
    throw ConfigInvalid("model '" + m.name + "' has no metric '" + key + "'");
  return it->second;
}

inline bool has_chart(const ManifoldModel& m, const std::string& id) {
  for (const Chart& c : m.atlas)
    if (c.id == id) return true;
  return false;
}

inline ChartPoint change_chart(const ManifoldModel& m, const ChartPoint& p,
                               const std::string& to) {
  if (p.chart == to) return p;
  if (!m.transition)
    throw ChartMismatch("model '" + m.name + "' has a single chart, asked for '" +
                        to + "' from '" + p.chart + "'");
  return m.transition(p, to);
}

inline QuadratureScheme build_scheme(const ManifoldModel& m, int resolution) {
  if (!m.scheme_builder)
    throw QuadratureUnavailable("model '" + m.name + "' has no quadrature");
  return m.scheme_builder(resolution > 0 ? resolution : m.default_resolution);
}

}  // namespace chernlab
