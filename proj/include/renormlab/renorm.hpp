#pragma once

#include <string>
#include <vector>

#include "renormlab/pairs.hpp"

namespace renormlab {

// Height of a normalized pair: h = max{r >= 0 : eta^r(xi(0)) > 0}.
// h = 0 means the pair is not renormalizable; an iterate landing exactly on
// the critical point means the rotation number is rational and the orbit of
// renormalizations terminates here. Heights above kNMax are unbounded type.
int height(const CommutingPair& p);

struct RenormStep {
  int height = 0;
  Real scale = 0;           // eta(0) of the source pair: the rescaling factor
  Real eta0_after = 0;      // eta(0) of the renormalized pair
  Real residual_after = 0;
  Real decay_after = 0;     // certified coefficient decay of the refit factor
};

// One renormalization: (eta, xi) -> (eta^h o xi, eta) conjugated by
// x -> eta(0) x. The orientation-reversing rescaling makes the new branches
// increasing and lands the pair already normalized. Everything except the
// new eta's outer factor is an exact coefficient transform.
CommutingPair renormalize(const CommutingPair& p, RenormStep* info = nullptr);

enum class StopReason {
  Completed,
  NotRenormalizable,
  UnboundedType,
  ResidualFloor,
  DecayCollapse,
};

const char* stop_reason_name(StopReason r);

struct OrbitRow {
  int k = 0;  // 1-based step index
  int height = 0;
  Real eta0 = 0;
  Real residual = 0;
  Real decay = 0;
};

struct RenormOrbit {
  std::vector<CommutingPair> pairs;  // pairs[0] is the seed
  std::vector<OrbitRow> rows;        // one per accepted step
  StopReason stop = StopReason::Completed;
  std::string stop_detail;
};

// Iterate renormalize up to n steps (1 <= n <= kOrbitCap). A step whose
// residual exceeds the noise floor or whose refit factor loses certified
// decay is rejected and ends the orbit with the corresponding stop reason.
RenormOrbit renorm_orbit(const CommutingPair& seed, int n);

// |eta_k(0)| for every pair along the orbit, seed included.
std::vector<Real> scaling_ratios(const RenormOrbit& orbit);

}  // namespace renormlab
