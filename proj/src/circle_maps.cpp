#include "renormlab/circle_maps.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "renormlab/chebseries.hpp"
#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

constexpr Real kTwoPi = Real(6.283185307179586476925286766559L);
constexpr Real kFourPi = 2 * kTwoPi;

Real cube(Real t) { return t * t * t; }

// Periodic part of the lift at the reduced argument.
Real vpart(Real c, Real x) {
  Real r = x - std::rint(x);
  return ((c - 1) * std::sin(kTwoPi * r) / kTwoPi -
          (c / 2) * std::sin(kFourPi * r) / kFourPi) /
         (1 - c / 2);
}

// Taylor coefficients of u(x) = (F(x) - F(0))/x^3 = sum_j A[j] x^(2j-2):
// the x terms of x + V(x) cancel and the odd sine series leaves only even
// powers in u. Seven terms hold u to full precision for |x| <= 0.03.
std::array<Real, 8> u_coeffs(Real c) {
  std::array<Real, 8> A{};
  Real fact = 1;  // (2j+1)!
  Real p2 = 1, p4 = 1;
  for (int j = 1; j <= 7; ++j) {
    fact *= Real(2 * j) * Real(2 * j + 1);
    p2 *= kTwoPi * kTwoPi;
    p4 *= kFourPi * kFourPi;
    Real sign = (j % 2 == 0) ? 1 : -1;
    A[j] = sign * ((c - 1) * p2 - (c / 2) * p4) / (fact * (1 - c / 2));
  }
  return A;
}

struct ConvergentTracker {
  Real best = std::numeric_limits<Real>::infinity();
  Real est = std::numeric_limits<Real>::quiet_NaN();
  long long q_last = 0;

  bool closed() const { return best <= 32 * kEps; }

  // Feed the n-th reduced position. The estimate after step n is certified
  // to 1/(q_last * n): consecutive convergents bracket the rotation number
  // with gap 1/(q_k q_{k+1}), and the absence of a closer return by time n
  // means the next denominator exceeds n.
  void feed(Real pos, long long winds, long long n) {
    Real d = std::min(pos, 1 - pos);
    if (!(d < best)) return;
    best = d;
    long long p = winds + std::llround(double(pos));
    est = Real(p) / Real(n);
    q_last = n;
  }

  Real bound(long long n) const { return 1 / (Real(q_last) * Real(n)); }
};

}  // namespace

CircleLift::CircleLift(Real omega_, Real c_) : omega(omega_), c(c_) {
  if (!std::isfinite(omega))
    throw DomainError("lift translation parameter must be finite");
  if (!(c > -0.9 && c < 0.9))
    throw DomainError("family parameter c must lie in (-0.9, 0.9)");
}

Real CircleLift::eval(Real x) const {
  Real k = std::rint(x);
  Real r = x - k;  // exact; vpart below reduces to the same r
  return k + ((r + omega) + vpart(c, r));
}

Real CircleLift::deriv(Real x) const {
  Real r = x - std::rint(x);
  Real cs = std::cos(kTwoPi * r);
  return (1 - cs) * (1 + c * cs) / (1 - c / 2);
}

Real CircleLift::iterate(Real x, int n) const {
  for (int i = 0; i < n; ++i) x = eval(x);
  return x;
}

RotationEstimate rotation_number(const std::function<Real(Real)>& lift,
                                 Real tol, long long budget) {
  if (!(tol >= 1e-12))
    throw DomainError("rotation tolerance below 1e-12 is not resolvable");
  if (budget <= 0) throw DomainError("iteration budget must be positive");

  Real pos = 0;
  long long winds = 0;
  ConvergentTracker t;
  for (long long n = 1; n <= budget; ++n) {
    Real y = lift(pos);
    Real fl = std::floor(y);
    winds += (long long)fl;
    pos = y - fl;
    if (pos >= 1) {
      pos -= 1;
      ++winds;
    }
    t.feed(pos, winds, n);
    if (t.closed()) return {t.est, 0, n, true};
    if (t.bound(n) <= tol) return {t.est, t.bound(n), n, true};
  }
  throw ToleranceNotReachedError(
      "rotation number still moving after exhausting the iteration budget",
      t.est, t.bound(budget));
}

RotationEstimate rotation_number(const CircleLift& F, Real tol,
                                 long long budget) {
  return rotation_number([&F](Real x) { return F.eval(x); }, tol, budget);
}

std::vector<ClosestReturn> closest_returns(
    const std::function<Real(Real)>& lift, int max_count, long long budget) {
  if (max_count < 1) throw DomainError("need at least one closest return");
  if (budget <= 0) throw DomainError("iteration budget must be positive");
  std::vector<ClosestReturn> out;
  Real pos = 0, best = std::numeric_limits<Real>::infinity();
  for (long long n = 1; n <= budget && (int)out.size() < max_count; ++n) {
    Real y = lift(pos);
    pos = y - std::floor(y);
    if (pos >= 1) pos -= 1;
    Real d = std::min(pos, 1 - pos);
    if (d < best) {
      best = d;
      out.push_back({n, d});
      if (d <= 32 * kEps) break;  // orbit closed; later returns are noise
    }
  }
  return out;
}

Real tune_omega(Real c, const SymbolWord& word, Real tol, TuneReport* report) {
  if (!word.periodic)
    throw RationalTargetError(
        "finite word has a rational value; tuning needs a periodic word");
  if (!(tol >= 1e-12))
    throw DomainError("tuning tolerance below 1e-12 is not resolvable");
  Real target = quadratic_irrational(word.letters);
  Real rtol = std::max(tol / 4, Real(1e-12));

  // Steering measurements run on a reduced budget: inside a locked window
  // the orbit closes quickly, and between windows a coarse certified
  // estimate already decides the bisection side.
  const long long steer_budget = 1000000;
  auto rho = [&](Real om) -> std::pair<Real, Real> {
    try {
      auto r = rotation_number(CircleLift(om, c), rtol, steer_budget);
      return {r.value, r.accuracy};
    } catch (const ToleranceNotReachedError& e) {
      return {e.best, e.accuracy};  // still monotone enough to steer
    }
  };

  Real lo = std::max(target - Real(0.4), Real(1e-3));
  Real hi = std::min(target + Real(0.4), Real(1) - Real(1e-3));
  if (!(rho(lo).first <= target && target <= rho(hi).first))
    throw TuningError("omega window does not bracket the target");

  Real mid = lo;
  int used = 0;
  for (int it = 0; it < 60; ++it) {
    mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;  // collapsed to adjacent doubles
    ++used;
    auto [r, acc] = rho(mid);
    if (acc <= tol / 4 && std::abs(r - target) < tol / 2) break;
    (r < target ? lo : hi) = mid;
  }

  auto fin = rotation_number(CircleLift(mid, c), rtol);
  if (std::abs(fin.value - target) > std::max(tol, 4 * fin.accuracy))
    throw TuningError("bisection exhausted without reaching the target");
  if (report) {
    report->omega = mid;
    report->target = target;
    report->achieved = fin.value;
    report->accuracy = fin.accuracy;
    report->bisections = used;
  }
  return mid;
}

CommutingPair extract_pair(const CircleLift& F, int degree) {
  if (!(F.omega > 0 && F.omega < 1))
    throw DomainError("pair extraction needs F(0) = omega in (0, 1)");
  if (degree < 8 || degree > 2048)
    throw DomainError("extraction degree out of range");
  const Real Om = F.omega;

  // m = last k >= 1 with F^k(0) < 1: the return index of the orbit of the
  // critical point before it clears the fundamental interval.
  int m = 1;
  Real xm = Om;
  Real xnext = F.eval(xm);
  while (xnext < 1) {
    ++m;
    if (m > kNMax + 1)
      throw CombinatoricsError("first-return index exceeds the bounded-type cap");
    xm = xnext;
    xnext = F.eval(xm);
  }
  const Real a = xm - 1;  // eta(0) before rescaling, in (-1, 0)

  // Shared cube-root factor: F(x) - F(0) = inner(x)^3 with inner increasing
  // through 0. Near 0 the subtraction cancels cubically, so a short even
  // series for u = (F - F(0))/x^3 takes over.
  const Real c = F.c;
  auto A = u_coeffs(c);
  auto inner_fn = [&](Real x) -> Real {
    if (std::abs(x) <= 0.03) {
      Real x2 = x * x, u = A[7];
      for (int j = 6; j >= 1; --j) u = u * x2 + A[j];
      return x * std::cbrt(u);
    }
    return std::cbrt(x + vpart(c, x));
  };

  const Real pad = kPadFrac * (Om - a);
  const Real ilo = a - pad, ihi = Om + pad;
  ChebSeries inner = cheb_fit(inner_fn, ilo, ihi, degree);

  Real ylo = cube(inner_fn(ilo)), yhi = cube(inner_fn(ihi));
  Real ypad = kPadFrac * (yhi - ylo);
  ylo -= ypad;
  yhi += ypad;

  ChebSeries outer_xi = cheb_fit([&](Real y) { return y + Om; }, ylo, yhi, 1);
  const int mm = m - 1;
  ChebSeries outer_eta = cheb_fit(
      [&](Real y) {
        Real t = Om + y;
        for (int i = 0; i < mm; ++i) t = F.eval(t);
        return t - 1;
      },
      ylo, yhi, mm == 0 ? 1 : degree);

  CommutingPair p;
  p.eta = CriticalMap::cubic(outer_eta, inner, 0, Om);
  p.xi = CriticalMap::cubic(outer_xi, inner, a, 0);
  p.source = "extracted from lift omega=" + real_to_string(Om) +
             " c=" + real_to_string(F.c);
  return normalize(p);
}

}  // namespace renormlab
