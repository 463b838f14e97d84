#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "renormlab/real.hpp"

namespace renormlab {

// Chebyshev series on an interval [lo, hi]: sum c_k T_k(w(x)) with w the
// affine pullback to [-1, 1]. Plain coefficients, no halving convention.
// Immutable after construction; all operations return fresh values.
struct ChebSeries {
  Real lo = -1, hi = 1;
  std::vector<Real> coeffs;  // c_0 .. c_m
  Real tail_mag = 0;         // max(|c_{m-1}|, |c_m|) recorded at fit time
  bool resolved = false;     // tail below the fit tolerance

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  // Evaluation; x may lie up to 5% of the interval length outside [lo, hi],
  // anything further throws ExtrapolationError.
  Real eval(Real x) const;

  // Analytic continuation off the real axis. Requires z inside the Bernstein
  // ellipse certified by the coefficient decay, else AnalyticDomainError.
  std::complex<Real> eval_complex(std::complex<Real> z) const;

  // Exact series derivative (degree m-1) with the interval chain factor.
  ChebSeries derivative() const;
};

struct ComplexEval {
  std::complex<Real> value;
  Real error_estimate;
};
ComplexEval eval_complex_certified(const ChebSeries& s, std::complex<Real> z);

// Interpolation at the m+1 Chebyshev points of the second kind (endpoints
// included). Throws FitError on a non-finite sample, DomainError on a bad
// interval or degree < 1.
ChebSeries cheb_fit(const std::function<Real(Real)>& f, Real lo, Real hi,
                    int degree, Real tail_tol = kTailTol);

// One link of a composition chain. The optional domain is checked (with the
// usual 5% slack) before the value is passed on.
struct EvalLink {
  std::function<Real(Real)> f;
  std::optional<std::pair<Real, Real>> domain;
};

// Fit of the left-to-right composition chain[n-1](...chain[1](chain[0](x))).
// Domain escapes and non-finite intermediates throw CompositionDomainError
// tagged with the link index.
ChebSeries compose_refit(const std::vector<EvalLink>& chain, Real lo, Real hi,
                         int degree, Real tail_tol = kTailTol);

// Estimated Bernstein-ellipse parameter rho from the least-squares slope of
// log|c_k| over the resolved coefficient range. Returns +infinity for a
// series that terminates (exactly represented polynomial), 1 when no margin
// can be certified. Requires degree >= 8.
Real decay_rate(const ChebSeries& s);

// Ellipse parameter of a point relative to [lo, hi] (1 on the interval).
Real ellipse_param(std::complex<Real> z, Real lo, Real hi);

}  // namespace renormlab
