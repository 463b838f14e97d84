#pragma once

#include <limits>
#include <string>
#include <vector>

#include "renormlab/combinatorics.hpp"
#include "renormlab/pairs.hpp"
#include "renormlab/renorm.hpp"

namespace renormlab {

// C^0 distance between normalized pairs: max over a Chebyshev-spaced grid of
// |eta_p - eta_q| on [0, 1] and |xi_p - xi_q| on [max(a_p, a_q), 0].
Real dist_c0(const CommutingPair& p, const CommutingPair& q, int grid = 257);

// C^k distance, order in 1..3: max over derivative orders 0..order of the
// spectral derivatives of per-branch refits on the same comparison grids.
Real dist_ck(const CommutingPair& p, const CommutingPair& q, int order,
             int grid = 257);

// Uniform distance over the Bernstein ellipse of the given parameter around
// each comparison interval, sampled at 64 boundary points per branch. Throws
// AnalyticDomainError when a branch does not certify the requested ellipse.
Real dist_analytic(const CommutingPair& p, const CommutingPair& q,
                   Real ellipse = Real(1.15));

struct ContractionFit {
  Real lambda = std::numeric_limits<Real>::quiet_NaN();
  Real r2 = std::numeric_limits<Real>::quiet_NaN();
  int points = 0;
  bool usable() const { return points >= 4 && r2 >= Real(0.9); }
};

// Least-squares rate of log d_n against n, exponentiated. Nonpositive and
// non-finite entries are skipped (indices kept); fewer than 4 usable points
// throw FitError. A constant positive sequence fits lambda = 1 perfectly.
ContractionFit fit_contraction_rate(const std::vector<Real>& d);

// Two tuned families of the same combinatorial type, renormalized in
// parallel; distances are indexed by orbit step (entry 0 compares the
// extracted seeds). dist_analytic entries are NaN where certification fails.
struct UniversalityResult {
  Real omega_a = 0, omega_b = 0;
  RenormOrbit orbit_a, orbit_b;
  std::vector<Real> d0, d3, dan;
  ContractionFit fit;  // rate of d0 over steps 2..n
  StopReason stop = StopReason::Completed;
  std::string stop_detail;
};

UniversalityResult universality_experiment(Real c, Real c_prime,
                                           const SymbolWord& word, int steps,
                                           Real tol = Real(1e-10),
                                           int degree = kDefaultDegree,
                                           int grid = 257,
                                           Real ellipse = Real(1.15));

// Periodic word w realized as renormalization combinatorics: the lift is
// tuned to rotate_right(w, 1) so that the extraction step consumes the last
// letter and the orbit heights read w from its first letter. period_dist[k]
// compares zeta_k with zeta_{k+|w|}.
struct ShiftResult {
  Real omega = 0;
  std::vector<int> word;
  RenormOrbit orbit;
  bool heights_match = false;
  std::vector<Real> period_dist;
  ContractionFit fit;  // rate of period_dist from index 1 on
};

ShiftResult shift_experiment(Real c, const SymbolWord& word, int steps,
                             Real tol = Real(1e-10),
                             int degree = kDefaultDegree, int grid = 257);

// Golden-mean scaling ratios |eta_k(0)| for two families, against the
// independent closest-return estimate from the tuned lift and the rigid
// rotation baseline.
struct ScalingResult {
  Real omega_a = 0, omega_b = 0;
  std::vector<Real> ratios_a, ratios_b;
  std::vector<Real> direct_ratios;
  Real limit_a = 0, limit_b = 0, direct_limit = 0;
  Real rigid_baseline = Real(0.6180339887498949);
  StopReason stop_a = StopReason::Completed;
  StopReason stop_b = StopReason::Completed;
  std::string stop_detail;
};

ScalingResult scaling_study(Real c, Real c_prime, int steps,
                            Real tol = Real(1e-10),
                            int degree = kDefaultDegree);

}  // namespace renormlab
