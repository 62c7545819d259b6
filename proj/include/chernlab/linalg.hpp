#pragma once
// Small dense complex-linear-algebra helpers shared across the library.
// Dimensions are tiny (n <= 3 in every model we ship), so dynamic Eigen
// types plus plain loops are fine everywhere.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace chernlab {

using Complex = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// Metric matrices are stored as G(i,j) = g_{i jbar}.  With that layout the
// Hermitian pairing of tangent vectors is
//   <W,V>_g = sum_{i,j} g_{i jbar} W^i conj(V^j) = W^T G conj(V),
// real and positive for W = V when G is positive definite.
inline Complex metric_pair(const MatC& g, const VecC& w, const VecC& v) {
  return (w.transpose() * g * v.conjugate()).value();
}

inline double metric_norm2(const MatC& g, const VecC& w) {
  return metric_pair(g, w, w).real();
}

inline double hermitian_defect(const MatC& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Inverse through the eigendecomposition so near-degenerate metrics are
// rejected instead of silently amplified.  Relative floor 1e-12 on the
// smallest eigenvalue.
inline MatC hermitian_inverse(const MatC& g, double* min_eigenvalue = nullptr) {
  Eigen::SelfAdjointEigenSolver<MatC> es(g);
  if (es.info() != Eigen::Success)
    throw EigenSolverFailure("eigendecomposition of metric matrix failed");
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (min_eigenvalue) *min_eigenvalue = lo;
  if (!(hi > 0.0) || lo <= 1e-12 * hi)
    throw SingularMetric("metric eigenvalues span [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
  return es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint();
}

// Rank-4 array holding R_{i jbar k lbar}; flat storage, no symmetry
// compression (81 entries at n = 3).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), a_(static_cast<std::size_t>(n) * n * n * n) {}

  int dim() const { return n_; }

  Complex& operator()(int i, int j, int k, int l) {
    return a_[idx(i, j, k, l)];
  }
  const Complex& operator()(int i, int j, int k, int l) const {
    return a_[idx(i, j, k, l)];
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& c : a_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  int n_ = 0;
  std::vector<Complex> a_;
};

// Deterministic compensated (Kahan-Neumaier) accumulation; quadrature sums
// must not depend on summation luck.
class Accumulator {
 public:
  void add(double x) {
    const double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double total() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace chernlab
