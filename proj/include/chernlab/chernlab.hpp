#pragma once
// Convenience umbrella.  Individual headers stay self-contained; pull this
// in when you want the whole laboratory.

#include "catalog.hpp"
#include "curvature.hpp"
#include "errors.hpp"
#include "functionals.hpp"
#include "inequalities.hpp"
#include "krf.hpp"
#include "linalg.hpp"
#include "manifold.hpp"
#include "maps.hpp"
#include "metric.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "scenario.hpp"
