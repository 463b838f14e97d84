#pragma once

// Reference values for tests, computed independently of the library code:
// truncated Taylor series, finite differences, exact integer recurrences.

#include <complex>
#include <cstdint>
#include <functional>

#include "renormlab/real.hpp"

namespace oracle {

using renormlab::Real;

// sin via Taylor summation, |x| expected O(1); terms added until they vanish.
inline Real taylor_sin(Real x) {
  Real term = x, sum = x;
  for (int k = 1; k < 60; ++k) {
    term *= -x * x / Real((2 * k) * (2 * k + 1));
    sum += term;
    if (std::abs(term) < renormlab::kEps * std::abs(sum)) break;
  }
  return sum;
}

inline Real taylor_cos(Real x) {
  Real term = 1, sum = 1;
  for (int k = 1; k < 60; ++k) {
    term *= -x * x / Real((2 * k - 1) * (2 * k));
    sum += term;
    if (std::abs(term) < renormlab::kEps * std::abs(sum)) break;
  }
  return sum;
}

inline std::complex<Real> taylor_exp(std::complex<Real> z) {
  std::complex<Real> term = 1, sum = 1;
  for (int k = 1; k < 80; ++k) {
    term *= z / Real(k);
    sum += term;
    if (std::abs(term) < renormlab::kEps * std::abs(sum)) break;
  }
  return sum;
}

// Five-point central difference, error O(h^4).
inline Real central_diff(const std::function<Real(Real)>& f, Real x, Real h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

// Three-point central difference, error O(h^2).
inline Real central_diff3(const std::function<Real(Real)>& f, Real x, Real h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

// Deterministic 64-bit generator (splitmix64) so frozen test values do not
// depend on library RNG implementations.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in (0, 1)
  Real uniform() {
    return (Real(next() >> 11) + Real(0.5)) / Real(9007199254740992.0);
  }
  Real uniform(Real a, Real b) { return a + (b - a) * uniform(); }
};

}  // namespace oracle
