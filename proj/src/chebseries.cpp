#include "renormlab/chebseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;

Real pullback(Real x, Real lo, Real hi) {
  return (2 * x - lo - hi) / (hi - lo);
}

// Noise floor used when classifying coefficients as resolved signal.
Real noise_floor(const std::vector<Real>& c) {
  Real top = 0;
  for (Real v : c) top = std::max(top, std::abs(v));
  return kCoeffNoiseRel * top;
}

// Certified Bernstein-ellipse parameter without the public degree
// precondition; used internally by complex evaluation.
//   +inf : series terminates well before the last coefficient (entire
//          within working precision), is identically zero, or is too short
//          to be anything but a construction-exact polynomial
//   1    : no margin can be certified
//   else : exp(-slope) of the least-squares line through log|c_k|
Real certified_radius(const ChebSeries& s) {
  const auto& c = s.coeffs;
  const int m = s.degree();
  Real tau = noise_floor(c);
  if (tau == 0) return std::numeric_limits<Real>::infinity();
  if (m < 8) return std::numeric_limits<Real>::infinity();

  int last = -1;
  for (int k = 0; k <= m; ++k)
    if (std::abs(c[k]) > tau) last = k;

  std::vector<std::pair<int, Real>> pts;
  for (int k = 0; k <= last; ++k)
    if (std::abs(c[k]) > tau) pts.push_back({k, std::log(std::abs(c[k]))});

  if (pts.size() < 8) {
    // Too few live coefficients for a slope. A long dead tail means the
    // series terminated: exactly represented polynomial.
    if (m - last >= 2) return std::numeric_limits<Real>::infinity();
    return 1;
  }

  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [k, y] : pts) {
    sx += k;
    sy += y;
    sxx += Real(k) * k;
    sxy += k * y;
  }
  Real n = Real(pts.size());
  Real denom = n * sxx - sx * sx;
  if (denom <= 0) return 1;
  Real slope = (n * sxy - sx * sy) / denom;
  Real rho = std::exp(-slope);
  return std::max(rho, Real(1));
}

}  // namespace

Real ChebSeries::eval(Real x) const {
  Real pad = kPadFrac * (hi - lo);
  if (x < lo - pad || x > hi + pad) {
    std::ostringstream os;
    os << "evaluation at " << double(x) << " outside [" << double(lo) << ", "
       << double(hi) << "] plus 5% padding";
    throw ExtrapolationError(os.str());
  }
  const int m = degree();
  Real w = pullback(x, lo, hi);
  Real b1 = 0, b2 = 0;
  for (int k = m; k >= 1; --k) {
    Real b = coeffs[k] + 2 * w * b1 - b2;
    b2 = b1;
    b1 = b;
  }
  return coeffs[0] + w * b1 - b2;
}

std::complex<Real> ChebSeries::eval_complex(std::complex<Real> z) const {
  return eval_complex_certified(*this, z).value;
}

ComplexEval eval_complex_certified(const ChebSeries& s, std::complex<Real> z) {
  Real r = ellipse_param(z, s.lo, s.hi);
  Real rho = certified_radius(s);
  if (!(r <= rho * (1 - 16 * kEps) || r <= 1 + 64 * kEps)) {
    std::ostringstream os;
    os << "point with ellipse parameter " << double(r)
       << " outside certified analyticity ellipse " << double(rho);
    throw AnalyticDomainError(os.str());
  }

  // Off the real axis, coefficients below the noise floor carry no signal
  // but get amplified by r^k; drop them. Accumulate in extended precision
  // since Clenshaw roundoff also grows like r^degree.
  Real tau = kCoeffNoiseRel;
  {
    Real top = 0;
    for (Real c : s.coeffs) top = std::max(top, std::abs(c));
    tau *= top;
  }
  int m = s.degree();
  while (m > 0 && std::abs(s.coeffs[m]) <= tau) --m;

  using Wide = long double;
  std::complex<Wide> w{Wide(pullback(std::real(z), s.lo, s.hi)),
                       Wide(std::imag(z)) * 2 / Wide(s.hi - s.lo)};
  std::complex<Wide> b1 = 0, b2 = 0;
  for (int k = m; k >= 1; --k) {
    Wide ck = std::abs(s.coeffs[k]) > tau ? Wide(s.coeffs[k]) : Wide(0);
    std::complex<Wide> b = ck + Wide(2) * w * b1 - b2;
    b2 = b1;
    b1 = b;
  }
  std::complex<Wide> wide_value = Wide(s.coeffs[0]) + w * b1 - b2;
  std::complex<Real> value{Real(std::real(wide_value)), Real(std::imag(wide_value))};

  // Truncation tail estimate from the certified decay, plus a rounding term.
  Real top = 0;
  for (Real c : s.coeffs) top = std::max(top, std::abs(c));
  Real est = Real(m + 1) * kEps * top * std::pow(std::max(r, Real(1)), m);
  if (std::isfinite(rho) && rho > r)
    est += s.tail_mag * std::pow(r, m) * rho / (rho - r);
  return {value, est};
}

ChebSeries ChebSeries::derivative() const {
  const int m = degree();
  ChebSeries d;
  d.lo = lo;
  d.hi = hi;
  d.tail_mag = 0;
  d.resolved = resolved;
  if (m == 0) {
    d.coeffs = {0};
    return d;
  }
  d.coeffs.assign(m, 0);
  Real factor = 2 / (hi - lo);
  if (m >= 1) d.coeffs[m - 1] = 2 * Real(m) * coeffs[m];
  if (m >= 2) d.coeffs[m - 2] = 2 * Real(m - 1) * coeffs[m - 1];
  for (int k = m - 3; k >= 0; --k)
    d.coeffs[k] = d.coeffs[k + 2] + 2 * Real(k + 1) * coeffs[k + 1];
  d.coeffs[0] /= 2;
  for (Real& c : d.coeffs) c *= factor;
  return d;
}

ChebSeries cheb_fit(const std::function<Real(Real)>& f, Real lo, Real hi,
                    int degree, Real tail_tol) {
  if (!(hi > lo)) throw DomainError("cheb_fit: interval must satisfy lo < hi");
  if (degree < 1) throw DomainError("cheb_fit: degree must be >= 1");
  const int n = degree;

  std::vector<Real> samples(n + 1);
  for (int j = 0; j <= n; ++j) {
    Real xj = std::cos(Real(j) * kPi / Real(n));  // second kind, x_0 = 1
    Real t = lo + (hi - lo) * (xj + 1) / 2;
    if (j == 0) t = hi;
    if (j == n) t = lo;
    Real v = f(t);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "non-finite sample at node " << double(t);
      throw FitError(os.str(), t, v);
    }
    samples[j] = v;
  }

  ChebSeries s;
  s.lo = lo;
  s.hi = hi;
  s.coeffs.assign(n + 1, 0);
  for (int k = 0; k <= n; ++k) {
    Real acc = 0;
    for (int j = 0; j <= n; ++j) {
      // integer angle reduction keeps cos arguments in [0, 2*pi)
      int idx = (k * j) % (2 * n);
      Real term = samples[j] * std::cos(Real(idx) * kPi / Real(n));
      if (j == 0 || j == n) term /= 2;
      acc += term;
    }
    s.coeffs[k] = acc * 2 / Real(n);
  }
  s.coeffs[0] /= 2;
  s.coeffs[n] /= 2;

  Real top = 0;
  for (Real c : s.coeffs) top = std::max(top, std::abs(c));
  s.tail_mag = std::max(std::abs(s.coeffs[n]),
                        n >= 1 ? std::abs(s.coeffs[n - 1]) : Real(0));
  s.resolved = s.tail_mag <= std::max(tail_tol, tail_tol * top);
  return s;
}

ChebSeries compose_refit(const std::vector<EvalLink>& chain, Real lo, Real hi,
                         int degree, Real tail_tol) {
  if (chain.empty()) throw DomainError("compose_refit: empty chain");
  auto composed = [&](Real x) {
    Real v = x;
    for (size_t i = 0; i < chain.size(); ++i) {
      if (chain[i].domain) {
        auto [dlo, dhi] = *chain[i].domain;
        Real pad = kPadFrac * (dhi - dlo);
        if (v < dlo - pad || v > dhi + pad) {
          std::ostringstream os;
          os << "chain value " << double(v) << " escapes domain of link " << i;
          throw CompositionDomainError(os.str(), int(i), x, v);
        }
      }
      Real next;
      try {
        next = chain[i].f(v);
      } catch (const ExtrapolationError&) {
        std::ostringstream os;
        os << "link " << i << " rejected input " << double(v);
        throw CompositionDomainError(os.str(), int(i), x, v);
      }
      if (!std::isfinite(next)) {
        std::ostringstream os;
        os << "link " << i << " produced non-finite value";
        throw CompositionDomainError(os.str(), int(i), x, next);
      }
      v = next;
    }
    return v;
  };
  return cheb_fit(composed, lo, hi, degree, tail_tol);
}

Real decay_rate(const ChebSeries& s) {
  if (s.degree() < 8)
    throw DomainError("decay_rate: needs degree >= 8");
  return certified_radius(s);
}

Real ellipse_param(std::complex<Real> z, Real lo, Real hi) {
  std::complex<Real> w{pullback(std::real(z), lo, hi),
                       std::imag(z) * 2 / (hi - lo)};
  std::complex<Real> r = std::sqrt(w - Real(1)) * std::sqrt(w + Real(1));
  Real mags = std::abs(w + r);
  if (mags < 1) {
    Real alt = std::abs(w - r);
    mags = std::max(mags, alt);
  }
  return std::max(mags, Real(1));
}

}  // namespace renormlab
