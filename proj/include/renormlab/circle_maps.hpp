#pragma once

#include <functional>
#include <vector>

#include "renormlab/combinatorics.hpp"
#include "renormlab/pairs.hpp"
#include "renormlab/real.hpp"

namespace renormlab {

// Degree-one lift of a two-parameter family of critical circle maps,
//   F(x) = x + omega + ((c-1) sin(2 pi x)/(2 pi) - (c/2) sin(4 pi x)/(4 pi))
//          / (1 - c/2),
// whose derivative factors as (1 - cos 2 pi x)(1 + c cos 2 pi x)/(1 - c/2):
// a cubic critical point at every integer, increasing for c in (-0.9, 0.9).
// c = 0 is the classical sine family.
struct CircleLift {
  Real omega = 0;
  Real c = 0;

  CircleLift() = default;
  CircleLift(Real omega, Real c);

  // Argument-reduced: the periodic part is computed from x - rint(x), so the
  // lift relation eval(x + 1) = eval(x) + 1 holds to the last bit.
  Real eval(Real x) const;
  Real deriv(Real x) const;
  Real iterate(Real x, int n) const;
};

// Rotation number of a degree-one lift from closest-return convergents of
// the orbit of 0. Stops when successive convergents agree within tol
// (tol >= 1e-12); exhausting the budget first raises
// ToleranceNotReachedError carrying the best estimate.
RotationEstimate rotation_number(const std::function<Real(Real)>& lift,
                                 Real tol = 1e-10, long long budget = 10000000);
RotationEstimate rotation_number(const CircleLift& F, Real tol = 1e-10,
                                 long long budget = 10000000);

struct ClosestReturn {
  long long q = 0;   // return time
  Real distance = 0; // circle distance of the q-th iterate of 0 from 0
};

// Successive closest returns of the orbit of 0, up to max_count of them.
std::vector<ClosestReturn> closest_returns(
    const std::function<Real(Real)>& lift, int max_count,
    long long budget = 10000000);

// Diagnostics from one tuning run.
struct TuneReport {
  Real omega = 0;
  Real target = 0;    // exact value of the periodic word
  Real achieved = 0;  // certified rotation number at the returned omega
  Real accuracy = 0;  // certification radius of `achieved`
  int bisections = 0;
};

// Bisect omega until rotation_number(CircleLift(omega, c)) hits the
// quadratic irrational with purely periodic expansion `word`.
Real tune_omega(Real c, const SymbolWord& word, Real tol = 1e-10,
                TuneReport* report = nullptr);

// First-return pair of the lift at its critical point: eta = F^m - 1 on
// [0, F(0)], xi = F on [F^m(0) - 1, 0] where m is the last k >= 1 with
// F^k(0) < 1; both branches share the cube-root factorization of F - F(0)
// around 0. Returned normalized.
CommutingPair extract_pair(const CircleLift& F, int degree = kDefaultDegree);

}  // namespace renormlab
