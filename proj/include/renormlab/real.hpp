#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

namespace renormlab {

#ifdef RENORMLAB_EXTENDED_PRECISION
using Real = long double;
#else
using Real = double;
#endif

inline constexpr Real kEps = std::numeric_limits<Real>::epsilon();

// All numeric tolerances are stated for binary64 and scaled by the unit
// roundoff of the active scalar type.
inline constexpr Real kTolScale = kEps / Real(2.220446049250313e-16);

inline constexpr Real kTailTol       = Real(1e-11) * kTolScale; // fit resolution target
inline constexpr Real kCoeffNoiseRel = Real(1e-14) * kTolScale; // relative coefficient noise floor
inline constexpr Real kResidualFloor = Real(1e-6)  * kTolScale; // orbit stop: commutation noise
inline constexpr Real kPadFrac       = Real(0.05);              // domain padding fraction

inline constexpr int kDefaultDegree = 64;
inline constexpr int kNMax          = 20;  // bounded combinatorial type
inline constexpr Real kDecayMin     = Real(1.05); // orbit stop: analytic margin collapse

// Renormalization depth cap before accumulated roundoff dominates.
inline constexpr int kOrbitCap = (sizeof(Real) > 8) ? 30 : 12;

inline const char* precision_name() {
  return (sizeof(Real) > 8) ? "extended" : "double";
}

// Shortest round-trip decimal formatting. Serialized artifacts store scalars
// as decimal strings so that parse(format(x)) == x bit for bit.
inline std::string real_to_string(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline std::string real_to_string(long double x) {
  char buf[96];
  int n = std::snprintf(buf, sizeof(buf), "%.*Lg",
                        std::numeric_limits<long double>::max_digits10, x);
  return std::string(buf, buf + n);
}

inline bool parse_real(const std::string& s, double& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline bool parse_real(const std::string& s, long double& out) {
  char* end = nullptr;
  out = std::strtold(s.c_str(), &end);
  return end == s.c_str() + s.size() && !s.empty();
}

}  // namespace renormlab
