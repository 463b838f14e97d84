#pragma once

// Tuned-pair fixtures shared across test files, built once per run.

#include "renormlab/circle_maps.hpp"
#include "renormlab/pairs.hpp"

namespace fixtures {

using renormlab::CircleLift;
using renormlab::CommutingPair;
using renormlab::Real;

// Golden-mean pair of the classical family (c = 0).
inline const CommutingPair& golden_pair() {
  static const CommutingPair p = [] {
    Real om = renormlab::tune_omega(0, {{1}, true}, 1e-8);
    return renormlab::extract_pair(CircleLift(om, 0));
  }();
  return p;
}

// Golden-mean pair of the perturbed family (c = 0.5).
inline const CommutingPair& golden_pair_alt() {
  static const CommutingPair p = [] {
    Real om = renormlab::tune_omega(0.5, {{1}, true}, 1e-8);
    return renormlab::extract_pair(CircleLift(om, 0.5));
  }();
  return p;
}

}  // namespace fixtures
