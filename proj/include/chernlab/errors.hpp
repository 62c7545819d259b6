#pragma once
// Error taxonomy. Everything derives from Error so callers can catch broadly;
// tests and the CLI catch the specific types.

#include <stdexcept>
#include <string>

namespace chernlab {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define CHERNLAB_DEFINE_ERROR(NAME)                 \
  struct NAME : Error {                             \
    explicit NAME(const std::string& what)          \
        : Error(std::string(#NAME) + ": " + what) {} \
  }

CHERNLAB_DEFINE_ERROR(SingularMetric);
CHERNLAB_DEFINE_ERROR(DerivativeUnavailable);
CHERNLAB_DEFINE_ERROR(SymmetryViolation);
CHERNLAB_DEFINE_ERROR(QuadratureUnavailable);
CHERNLAB_DEFINE_ERROR(EigenSolverFailure);
CHERNLAB_DEFINE_ERROR(ZeroVector);
CHERNLAB_DEFINE_ERROR(OptimizerInconsistent);
CHERNLAB_DEFINE_ERROR(ChartMismatch);
CHERNLAB_DEFINE_ERROR(DimensionMismatch);
CHERNLAB_DEFINE_ERROR(ConstantMapRejected);
CHERNLAB_DEFINE_ERROR(DegenerateMapRejected);
CHERNLAB_DEFINE_ERROR(NotEinstein);
CHERNLAB_DEFINE_ERROR(NonPositiveDenominator);
CHERNLAB_DEFINE_ERROR(InvalidClassData);
CHERNLAB_DEFINE_ERROR(NonPositivePairing);
CHERNLAB_DEFINE_ERROR(TargetNotNef);
CHERNLAB_DEFINE_ERROR(ConfigInvalid);
CHERNLAB_DEFINE_ERROR(NonKahlerMetric);

#undef CHERNLAB_DEFINE_ERROR

}  // namespace chernlab
