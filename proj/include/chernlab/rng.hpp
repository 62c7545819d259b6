#pragma once
// Deterministic randomness.  Every stochastic operation in the library takes
// an explicit 64-bit seed.  The standard distributions are not pinned across
// implementations, so uniforms and normals are hand-rolled on top of the
// (fully specified) mt19937_64 stream; identical seeds reproduce identical
// doubles everywhere.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "linalg.hpp"

namespace chernlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0,1), 53 mantissa bits
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  Complex cnormal() { return Complex(normal(), normal()); }

  VecC cnormal_vec(int n) {
    VecC v(n);
    for (int i = 0; i < n; ++i) v[i] = cnormal();
    return v;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Halton radical-inverse sequence.  Prefixes of one fixed stream remain
// low-discrepancy, which the resolution-halving error estimates rely on.
inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

inline constexpr std::uint64_t kHaltonPrimes[8] = {2, 3, 5, 7, 11, 13, 17, 19};

inline std::vector<double> halton_point(std::uint64_t index, int dim) {
  std::vector<double> u(static_cast<std::size_t>(dim));
  for (int d = 0; d < dim; ++d)
    u[static_cast<std::size_t>(d)] = radical_inverse(index + 1, kHaltonPrimes[d]);
  return u;
}

}  // namespace chernlab
