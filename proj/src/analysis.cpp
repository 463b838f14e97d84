#include "renormlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "renormlab/circle_maps.hpp"
#include "renormlab/errors.hpp"

namespace renormlab {
namespace {

constexpr Real kPi = Real(3.14159265358979323846264338327950288L);

void require_normalized(const CommutingPair& p) {
  if (!p.normalized || std::abs(p.xi.eval(0) - 1) > Real(1e-6))
    throw NormalizationError("pair metrics compare normalized pairs only");
}

void require_grid(int grid) {
  if (grid < 33 || grid > 100000)
    throw DomainError("metric grid must have between 33 and 100000 points");
}

// Chebyshev-spaced probes, endpoints included.
std::vector<Real> cheb_grid(Real lo, Real hi, int n) {
  std::vector<Real> x(n);
  Real mid = (lo + hi) / 2, halfw = (hi - lo) / 2;
  for (int j = 0; j < n; ++j)
    x[j] = mid + halfw * std::cos(kPi * Real(j) / Real(n - 1));
  return x;
}

Real grid_gap(const CriticalMap& mp, const CriticalMap& mq,
              const std::vector<Real>& xs) {
  Real best = 0;
  for (Real x : xs) best = std::max(best, std::abs(mp.eval(x) - mq.eval(x)));
  return best;
}

ChebSeries branch_fit(const CriticalMap& m, Real lo, Real hi) {
  int deg = m.kind == MapKind::Affine ? 1 : kDefaultDegree;
  return cheb_fit([&](Real x) { return m.eval(x); }, lo, hi, deg);
}

// Max difference of spectral derivatives over orders 0..order.
Real derivative_gap(const CriticalMap& mp, const CriticalMap& mq, Real lo,
                    Real hi, int order, const std::vector<Real>& xs) {
  ChebSeries sp = branch_fit(mp, lo, hi);
  ChebSeries sq = branch_fit(mq, lo, hi);
  Real best = grid_gap(mp, mq, xs);  // order 0 from the maps themselves
  for (int k = 1; k <= order; ++k) {
    sp = sp.derivative();
    sq = sq.derivative();
    for (Real x : xs)
      best = std::max(best, std::abs(sp.eval(x) - sq.eval(x)));
  }
  return best;
}

std::complex<Real> branch_eval_complex(const CriticalMap& m,
                                       std::complex<Real> z) {
  if (m.kind == MapKind::Affine) return z + m.offset;
  std::complex<Real> w = m.inner.eval_complex(z);
  return m.outer.eval_complex(w * w * w);
}

Real ellipse_gap(const CriticalMap& mp, const CriticalMap& mq, Real lo,
                 Real hi, Real rho) {
  Real mid = (lo + hi) / 2, halfw = (hi - lo) / 2;
  Real best = 0;
  for (int j = 0; j < 64; ++j) {
    Real th = 2 * kPi * Real(j) / 64;
    std::complex<Real> u = std::polar(rho, th);
    std::complex<Real> z = mid + halfw * (u + Real(1) / u) / Real(2);
    best = std::max(best,
                    std::abs(branch_eval_complex(mp, z) -
                             branch_eval_complex(mq, z)));
  }
  return best;
}

// Comparison intervals shared by all the metrics.
struct CompareDomains {
  Real eta_lo, eta_hi, xi_lo, xi_hi;
};

CompareDomains domains(const CommutingPair& p, const CommutingPair& q) {
  require_normalized(p);
  require_normalized(q);
  return {0, 1, std::max(p.eta.eval(0), q.eta.eval(0)), 0};
}

std::vector<Real> sub_from(const std::vector<Real>& v, size_t start) {
  if (v.size() <= start) return {};
  return std::vector<Real>(v.begin() + start, v.end());
}

ContractionFit fit_or_empty(const std::vector<Real>& d) {
  try {
    return fit_contraction_rate(d);
  } catch (const FitError&) {
    return {};
  }
}

}  // namespace

Real dist_c0(const CommutingPair& p, const CommutingPair& q, int grid) {
  require_grid(grid);
  CompareDomains d = domains(p, q);
  Real eta = grid_gap(p.eta, q.eta, cheb_grid(d.eta_lo, d.eta_hi, grid));
  Real xi = grid_gap(p.xi, q.xi, cheb_grid(d.xi_lo, d.xi_hi, grid));
  return std::max(eta, xi);
}

Real dist_ck(const CommutingPair& p, const CommutingPair& q, int order,
             int grid) {
  if (order < 1 || order > 3)
    throw DomainError("derivative order must be 1, 2 or 3");
  require_grid(grid);
  CompareDomains d = domains(p, q);
  Real eta = derivative_gap(p.eta, q.eta, d.eta_lo, d.eta_hi, order,
                            cheb_grid(d.eta_lo, d.eta_hi, grid));
  Real xi = derivative_gap(p.xi, q.xi, d.xi_lo, d.xi_hi, order,
                           cheb_grid(d.xi_lo, d.xi_hi, grid));
  return std::max(eta, xi);
}

Real dist_analytic(const CommutingPair& p, const CommutingPair& q,
                   Real ellipse) {
  if (!(ellipse > 1))
    throw DomainError("ellipse parameter must exceed 1");
  CompareDomains d = domains(p, q);
  Real eta = ellipse_gap(p.eta, q.eta, d.eta_lo, d.eta_hi, ellipse);
  Real xi = ellipse_gap(p.xi, q.xi, d.xi_lo, d.xi_hi, ellipse);
  return std::max(eta, xi);
}

ContractionFit fit_contraction_rate(const std::vector<Real>& d) {
  std::vector<Real> ns, ys;
  for (size_t i = 0; i < d.size(); ++i) {
    if (std::isfinite(d[i]) && d[i] > 0) {
      ns.push_back(Real(i));
      ys.push_back(std::log(d[i]));
    }
  }
  if (ns.size() < 4)
    throw FitError("contraction fit needs at least 4 positive distances");

  Real n = Real(ns.size());
  Real mx = 0, my = 0;
  for (size_t i = 0; i < ns.size(); ++i) {
    mx += ns[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  Real sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < ns.size(); ++i) {
    sxx += (ns[i] - mx) * (ns[i] - mx);
    sxy += (ns[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  Real slope = sxy / sxx;

  ContractionFit fit;
  fit.points = int(ns.size());
  fit.lambda = std::exp(slope);
  if (syy <= Real(1e-30)) {
    fit.r2 = 1;  // perfectly flat sequence: exact fit with slope 0
  } else {
    Real ss_res = 0;
    for (size_t i = 0; i < ns.size(); ++i) {
      Real r = ys[i] - my - slope * (ns[i] - mx);
      ss_res += r * r;
    }
    fit.r2 = 1 - ss_res / syy;
  }
  return fit;
}

UniversalityResult universality_experiment(Real c, Real c_prime,
                                           const SymbolWord& word, int steps,
                                           Real tol, int degree, int grid,
                                           Real ellipse) {
  if (steps < 1 || steps > kOrbitCap)
    throw DomainError("step count must be between 1 and the precision cap");
  require_grid(grid);
  if (!(ellipse > 1)) throw DomainError("ellipse parameter must exceed 1");

  UniversalityResult res;
  res.omega_a = tune_omega(c, word, tol);
  res.omega_b = tune_omega(c_prime, word, tol);
  res.orbit_a = renorm_orbit(extract_pair(CircleLift(res.omega_a, c), degree),
                             steps);
  res.orbit_b = renorm_orbit(
      extract_pair(CircleLift(res.omega_b, c_prime), degree), steps);

  size_t n = std::min(res.orbit_a.pairs.size(), res.orbit_b.pairs.size());
  for (size_t k = 0; k < n; ++k) {
    const CommutingPair& pa = res.orbit_a.pairs[k];
    const CommutingPair& pb = res.orbit_b.pairs[k];
    res.d0.push_back(dist_c0(pa, pb, grid));
    res.d3.push_back(dist_ck(pa, pb, 3, grid));
    try {
      res.dan.push_back(dist_analytic(pa, pb, ellipse));
    } catch (const AnalyticDomainError&) {
      res.dan.push_back(std::numeric_limits<Real>::quiet_NaN());
    }
  }
  res.fit = fit_or_empty(sub_from(res.d0, 2));

  const RenormOrbit* stopped = nullptr;
  if (res.orbit_a.stop != StopReason::Completed) stopped = &res.orbit_a;
  if (res.orbit_b.stop != StopReason::Completed &&
      (!stopped || res.orbit_b.pairs.size() < stopped->pairs.size()))
    stopped = &res.orbit_b;
  if (stopped) {
    res.stop = stopped->stop;
    res.stop_detail = stopped->stop_detail;
  }
  return res;
}

ShiftResult shift_experiment(Real c, const SymbolWord& word, int steps,
                             Real tol, int degree, int grid) {
  if (steps < 1 || steps > kOrbitCap)
    throw DomainError("step count must be between 1 and the precision cap");
  require_grid(grid);
  if (!word.periodic)
    throw RationalTargetError("shift experiment needs a periodic word");
  if (word.letters.empty())
    throw CombinatoricsError("empty symbol word");
  for (int a : word.letters)
    if (a < 1 || a > kNMax)
      throw CombinatoricsError("word letters must lie in 1..N");

  ShiftResult res;
  res.word = word.letters;
  // The extraction consumes the first CF entry, so tuning to the rotated
  // word makes the orbit heights start at the word's first letter.
  SymbolWord tuned{rotate_right(word.letters, 1), true};
  res.omega = tune_omega(c, tuned, tol);
  res.orbit =
      renorm_orbit(extract_pair(CircleLift(res.omega, c), degree), steps);

  res.heights_match = !res.orbit.rows.empty();
  for (size_t i = 0; i < res.orbit.rows.size(); ++i)
    if (res.orbit.rows[i].height != res.word[i % res.word.size()])
      res.heights_match = false;

  size_t p = res.word.size();
  size_t n = res.orbit.pairs.size();
  for (size_t k = 0; k + p < n; ++k)
    res.period_dist.push_back(
        dist_c0(res.orbit.pairs[k], res.orbit.pairs[k + p], grid));
  res.fit = fit_or_empty(sub_from(res.period_dist, 1));
  return res;
}

ScalingResult scaling_study(Real c, Real c_prime, int steps, Real tol,
                            int degree) {
  if (steps < 1 || steps > kOrbitCap)
    throw DomainError("step count must be between 1 and the precision cap");
  SymbolWord golden{{1}, true};

  ScalingResult res;
  res.omega_a = tune_omega(c, golden, tol);
  res.omega_b = tune_omega(c_prime, golden, tol);

  RenormOrbit orbit_a =
      renorm_orbit(extract_pair(CircleLift(res.omega_a, c), degree), steps);
  RenormOrbit orbit_b = renorm_orbit(
      extract_pair(CircleLift(res.omega_b, c_prime), degree), steps);
  res.stop_a = orbit_a.stop;
  res.stop_b = orbit_b.stop;
  if (orbit_a.stop != StopReason::Completed)
    res.stop_detail = orbit_a.stop_detail;
  else if (orbit_b.stop != StopReason::Completed)
    res.stop_detail = orbit_b.stop_detail;

  res.ratios_a = orbit_a.pairs.size() > 1 ? scaling_ratios(orbit_a)
                                          : std::vector<Real>{std::fabs(
                                                orbit_a.pairs[0].a())};
  res.ratios_b = orbit_b.pairs.size() > 1 ? scaling_ratios(orbit_b)
                                          : std::vector<Real>{std::fabs(
                                                orbit_b.pairs[0].a())};
  res.limit_a = res.ratios_a.back();
  res.limit_b = res.ratios_b.back();

  // Independent estimate straight from the circle orbit: ratios of the
  // closest-return distances of the tuned lift.
  CircleLift lift(res.omega_a, c);
  auto returns =
      closest_returns([&](Real x) { return lift.eval(x); }, 18);
  for (size_t i = 0; i + 1 < returns.size(); ++i)
    res.direct_ratios.push_back(returns[i + 1].distance /
                                returns[i].distance);
  size_t m = res.direct_ratios.size();
  if (m >= 3) {
    res.direct_limit = (res.direct_ratios[m - 1] + res.direct_ratios[m - 2] +
                        res.direct_ratios[m - 3]) /
                       3;
  } else if (m > 0) {
    res.direct_limit = res.direct_ratios.back();
  }
  return res;
}

}  // namespace renormlab
