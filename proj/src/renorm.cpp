#include "renormlab/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "renormlab/errors.hpp"

namespace renormlab {
namespace {

// Orbit of xi(0) under eta, stopping at the first sign change. Also hands
// back the last positive iterate eta^h(xi(0)), which is the new eta(0)
// before rescaling.
int height_scan(const CommutingPair& p, Real* last_positive) {
  Real a = p.eta.eval(0);
  Real b = p.xi.eval(0);
  if (!(a < 0)) throw InvalidPairError("eta(0) must be negative");
  if (!(b > 0)) throw InvalidPairError("xi(0) must be positive");

  Real y = b;
  int h = 0;
  while (true) {
    Real next = p.eta.eval(y);
    if (next == 0)
      throw NotRenormalizableError(
          "orbit of xi(0) lands exactly on the critical point: rational "
          "rotation number, renormalization terminates");
    if (next < 0) break;
    if (++h > kNMax)
      throw UnboundedTypeError("height exceeds the bounded-type cap");
    y = next;
  }
  if (h == 0)
    throw NotRenormalizableError("eta(xi(0)) is already negative: height 0");
  if (last_positive) *last_positive = y;
  return h;
}

std::string detail(const char* fmt, Real v, int k) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, double(v), k);
  return buf;
}

}  // namespace

int height(const CommutingPair& p) { return height_scan(p, nullptr); }

CommutingPair renormalize(const CommutingPair& p, RenormStep* info) {
  Real yb = 0;  // eta^h(xi(0))
  int h = height_scan(p, &yb);
  Real a = p.eta.eval(0);

  CommutingPair q;
  q.heights = p.heights;
  q.heights.push_back(h);
  q.source = p.source;
  q.normalized = true;

  RenormStep st;
  st.height = h;
  st.scale = a;

  if (p.eta.kind == MapKind::Affine && p.xi.kind == MapKind::Affine) {
    // Translations stay translations: eta^h(xi(x)) = x + eta^h(xi(0)), and
    // the conjugation by a divides the offset. xi(0)/... eta(0)/eta(0) = 1
    // makes normalization exact.
    Real t = yb / a;
    q.eta = CriticalMap::affine(t, 0, 1);
    q.xi = CriticalMap::affine(1, t, 0);
    st.eta0_after = t;
    st.residual_after = 0;
    st.decay_after = std::numeric_limits<Real>::infinity();
    if (info) *info = st;
    return q;
  }
  if (p.eta.kind != MapKind::Cubic || p.xi.kind != MapKind::Cubic)
    throw DomainError("renormalize needs both branches of the same kind");

  // New xi = conjugated eta: pure coefficient transform, no refit.
  CriticalMap nxi = conjugate_linear(p.eta, a);
  Real bnew = nxi.eval(0);  // eta(0)/eta(0), within roundoff of 1

  // New eta shares its inner factor with the conjugated xi; only the outer
  // factor y -> eta^h(O_xi(-y))/a needs one fresh fit. The fit window covers
  // the operative domain [0, 1] plus the usual pad, not the full (much
  // wider) carrier of the inherited inner series: pushing the composition
  // past the pad would drag intermediate eta iterates out of their stored
  // intervals.
  CriticalMap txi = conjugate_linear(p.xi, a);
  const ChebSeries& inner_new = txi.inner;

  Real anew = yb / a;
  Real pad = kPadFrac * (bnew - anew);
  Real vlo = inner_new.eval(-pad);
  Real vhi = inner_new.eval(bnew + pad);
  Real ylo = vlo * vlo * vlo;
  Real yhi = vhi * vhi * vhi;
  Real ypad = kPadFrac * (yhi - ylo);

  const ChebSeries& oxi = p.xi.outer;
  auto g = [&](Real y) {
    Real v = oxi.eval(-y);
    for (int i = 0; i < h; ++i) v = p.eta.eval(v);
    return v / a;
  };
  int deg = std::max(p.eta.inner.degree(), 16);
  ChebSeries onew = cheb_fit(g, ylo - ypad, yhi + ypad, deg);

  q.eta = CriticalMap::cubic(onew, inner_new, 0, bnew);
  q.xi = nxi;
  q.xi.dom_lo = q.eta.eval(0);
  q.xi.dom_hi = 0;

  st.eta0_after = q.eta.eval(0);
  st.residual_after = commutation_residual(q);
  st.decay_after = decay_rate(onew);
  if (info) *info = st;
  return q;
}

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Completed: return "completed";
    case StopReason::NotRenormalizable: return "not_renormalizable";
    case StopReason::UnboundedType: return "unbounded_type";
    case StopReason::ResidualFloor: return "residual_noise_floor";
    case StopReason::DecayCollapse: return "decay_collapse";
  }
  return "unknown";
}

RenormOrbit renorm_orbit(const CommutingPair& seed, int n) {
  if (n < 1 || n > kOrbitCap)
    throw DomainError("orbit length must be between 1 and the precision cap");

  RenormOrbit orbit;
  orbit.pairs.push_back(seed);
  for (int k = 1; k <= n; ++k) {
    RenormStep st;
    CommutingPair next;
    try {
      next = renormalize(orbit.pairs.back(), &st);
    } catch (const NotRenormalizableError& e) {
      orbit.stop = StopReason::NotRenormalizable;
      orbit.stop_detail = e.what();
      return orbit;
    } catch (const UnboundedTypeError& e) {
      orbit.stop = StopReason::UnboundedType;
      orbit.stop_detail = e.what();
      return orbit;
    }
    if (st.residual_after > kResidualFloor) {
      orbit.stop = StopReason::ResidualFloor;
      orbit.stop_detail = detail(
          "commutation residual %.3g above the noise floor at step %d",
          st.residual_after, k);
      return orbit;
    }
    if (st.decay_after < kDecayMin) {
      orbit.stop = StopReason::DecayCollapse;
      orbit.stop_detail = detail(
          "coefficient decay %.3g below the analytic margin at step %d",
          st.decay_after, k);
      return orbit;
    }
    orbit.pairs.push_back(std::move(next));
    orbit.rows.push_back(
        {k, st.height, st.eta0_after, st.residual_after, st.decay_after});
  }
  orbit.stop = StopReason::Completed;
  return orbit;
}

std::vector<Real> scaling_ratios(const RenormOrbit& orbit) {
  if (orbit.pairs.size() < 2)
    throw DomainError("scaling ratios need at least one completed step");
  std::vector<Real> out;
  out.reserve(orbit.pairs.size());
  for (const auto& p : orbit.pairs) out.push_back(std::fabs(p.a()));
  return out;
}

}  // namespace renormlab
