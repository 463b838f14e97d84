#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "renormlab/chebseries.hpp"
#include "renormlab/real.hpp"

namespace renormlab {

enum class MapKind { Affine, Cubic };

// One branch of a commuting pair: either an exact translation (the closed
// form oracle class) or a cubic critical map outer(inner(x)^3) with
// inner(0) = 0 and both factors increasing.
struct CriticalMap {
  MapKind kind = MapKind::Affine;
  Real offset = 0;           // affine
  ChebSeries outer, inner;   // cubic
  Real dom_lo = 0, dom_hi = 1;  // operative domain

  Real eval(Real x) const;

  static CriticalMap affine(Real offset, Real dom_lo, Real dom_hi);
  // Pins inner(0) to zero by a constant shift of its leading coefficient.
  static CriticalMap cubic(ChebSeries outer, ChebSeries inner, Real dom_lo,
                           Real dom_hi);
};

// Conjugation by x -> lam*x: returns x -> map(lam*x)/lam. Exact coefficient
// transform for both kinds (negative lam flips orientation of the factors).
CriticalMap conjugate_linear(const CriticalMap& map, Real lam);

// Commuting pair zeta = (eta, xi): eta increasing on [0, b] with eta(0) = a < 0,
// xi increasing on [a, 0] with xi(0) = b > 0, both sharing the critical point
// at 0, commuting near 0. Normalized means b = 1.
struct CommutingPair {
  CriticalMap eta, xi;
  bool normalized = false;
  std::vector<int> heights;  // heights consumed along the renormalization orbit
  std::string source;

  Real a() const { return eta.eval(0); }
  Real b() const { return xi.eval(0); }
};

struct ValidationReport {
  Real residual = 0;
  bool monotone_ok = false;
  bool critical_ok = false;
  bool ok() const { return monotone_ok && critical_ok; }
};

// Structural checks throw InvalidPairError; soft diagnostics are reported.
ValidationReport validate(const CommutingPair& p);

// Rescale so xi(0) = 1 (exact transform, idempotent).
CommutingPair normalize(const CommutingPair& p);

// Conjugation of the whole pair by x -> lam*x, lam > 0.
CommutingPair conjugate_pair(const CommutingPair& p, Real lam);

// sup |eta(xi(x)) - xi(eta(x))| over probes of the overlap around 0.
// Exactly zero for translation pairs (compositions tracked in closed form).
Real commutation_residual(const CommutingPair& p);

struct RotationEstimate {
  Real value = 0;
  Real accuracy = 0;
  long long iterations = 0;
  bool tol_reached = false;
};

// Rotation number of the circle map obtained by gluing the endpoints of
// [a, b]; computed from closest-return convergents of the orbit of 0.
RotationEstimate glued_rotation_number(const CommutingPair& p,
                                       long long iterations = 1000000);

nlohmann::ordered_json to_json(const ChebSeries& s);
nlohmann::ordered_json to_json(const CriticalMap& m);
nlohmann::ordered_json to_json(const CommutingPair& p);
ChebSeries series_from_json(const nlohmann::json& j);
CriticalMap map_from_json(const nlohmann::json& j);
CommutingPair pair_from_json(const nlohmann::json& j);

std::string pair_to_string(const CommutingPair& p);
CommutingPair pair_from_string(const std::string& text);

}  // namespace renormlab
