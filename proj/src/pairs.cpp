#include "renormlab/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

Real cube(Real t) { return t * t * t; }

// A probe evaluation is trustworthy only while both stored series are read
// strictly inside their fitted intervals: the 5% extrapolation pad exists to
// absorb rounding, and leaning on it costs accuracy that grows like the
// Bernstein ellipse parameter to the degree. A freshly refitted outer series
// covers a tight operative window, so the outer interval must be checked
// too, not just the inner carrier.
bool interior_point(const CriticalMap& m, Real x) {
  if (m.kind != MapKind::Cubic) return true;
  Real im = Real(1e-3) * (m.inner.hi - m.inner.lo);
  if (x < m.inner.lo + im || x > m.inner.hi - im) return false;
  Real y = cube(m.inner.eval(x));
  Real om = Real(1e-3) * (m.outer.hi - m.outer.lo);
  return y >= m.outer.lo + om && y <= m.outer.hi - om;
}

// Largest safe |x| window around 0 on which both compositions of the pair
// stay strictly inside the stored series intervals. Both branches are
// increasing, so checking the endpoints covers the whole window.
Real probe_halfwidth(const CommutingPair& p) {
  Real a = p.eta.eval(0);
  Real b = p.xi.eval(0);
  Real left = p.eta.kind == MapKind::Cubic ? -p.eta.inner.lo : b;
  Real right = p.xi.kind == MapKind::Cubic ? p.xi.inner.hi : -a;
  Real w = Real(0.9) * std::min(left, right);
  w = std::min(w, std::min(b, -a));
  for (int i = 0; i < 80; ++i) {
    bool ok;
    try {
      ok = interior_point(p.eta, w) && interior_point(p.eta, -w) &&
           interior_point(p.xi, w) && interior_point(p.xi, -w) &&
           interior_point(p.eta, p.xi.eval(w)) &&
           interior_point(p.eta, p.xi.eval(-w)) &&
           interior_point(p.xi, p.eta.eval(w)) &&
           interior_point(p.xi, p.eta.eval(-w));
    } catch (const ExtrapolationError&) {
      ok = false;
    }
    if (ok) break;
    w *= Real(0.7);
  }
  return w;
}

Real sup_commutator(const CommutingPair& p, Real w, int n) {
  Real worst = 0;
  for (int j = 0; j <= n; ++j) {
    Real x = -w + (2 * w) * Real(j) / Real(n);
    Real d = std::abs(p.eta.eval(p.xi.eval(x)) - p.xi.eval(p.eta.eval(x)));
    worst = std::max(worst, d);
  }
  return worst;
}

void check(bool ok, const char* clause) {
  if (!ok) throw InvalidPairError(clause);
}

std::string scalar(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw RepresentationError(std::string("missing scalar field ") + key);
  return j.at(key).get<std::string>();
}

Real parse_scalar(const nlohmann::json& j, const char* key) {
  Real v;
  std::string s = scalar(j, key);
  if (!parse_real(s, v) || !std::isfinite(v))
    throw RepresentationError("unparseable scalar " + s);
  return v;
}

}  // namespace

Real CriticalMap::eval(Real x) const {
  if (kind == MapKind::Affine) return x + offset;
  return outer.eval(cube(inner.eval(x)));
}

CriticalMap CriticalMap::affine(Real offset, Real dom_lo, Real dom_hi) {
  CriticalMap m;
  m.kind = MapKind::Affine;
  m.offset = offset;
  m.dom_lo = dom_lo;
  m.dom_hi = dom_hi;
  return m;
}

CriticalMap CriticalMap::cubic(ChebSeries outer, ChebSeries inner, Real dom_lo,
                               Real dom_hi) {
  if (outer.coeffs.empty() || inner.coeffs.empty())
    throw RepresentationError("cubic map factors must be nonempty series");
  CriticalMap m;
  m.kind = MapKind::Cubic;
  m.outer = std::move(outer);
  m.inner = std::move(inner);
  m.dom_lo = dom_lo;
  m.dom_hi = dom_hi;
  try {
    m.inner.coeffs[0] -= m.inner.eval(0);
  } catch (const ExtrapolationError&) {
    throw RepresentationError("inner series must cover the critical point 0");
  }
  return m;
}

CriticalMap conjugate_linear(const CriticalMap& map, Real lam) {
  if (!std::isfinite(lam) || lam == 0)
    throw DomainError("conjugation scale must be finite and nonzero");
  CriticalMap r = map;
  r.dom_lo = std::min(map.dom_lo / lam, map.dom_hi / lam);
  r.dom_hi = std::max(map.dom_lo / lam, map.dom_hi / lam);
  if (map.kind == MapKind::Affine) {
    r.offset = map.offset / lam;
    return r;
  }
  // map(lam*x)/lam stays a cubic sandwich; both factor transforms are exact
  // on the coefficients. Negative lam reverses orientation, so the inner
  // factor picks up a sign and the outer factor is reflected.
  if (lam > 0) {
    r.inner.lo = map.inner.lo / lam;
    r.inner.hi = map.inner.hi / lam;
    for (auto& c : r.outer.coeffs) c /= lam;
    r.outer.tail_mag = map.outer.tail_mag / lam;
  } else {
    r.inner.lo = map.inner.hi / lam;
    r.inner.hi = map.inner.lo / lam;
    for (size_t k = 0; k < r.inner.coeffs.size(); ++k)
      if (k % 2 == 0) r.inner.coeffs[k] = -r.inner.coeffs[k];
    r.outer.lo = -map.outer.hi;
    r.outer.hi = -map.outer.lo;
    for (size_t k = 0; k < r.outer.coeffs.size(); ++k) {
      r.outer.coeffs[k] /= lam;
      if (k % 2 == 1) r.outer.coeffs[k] = -r.outer.coeffs[k];
    }
    r.outer.tail_mag = map.outer.tail_mag / -lam;
  }
  r.inner.coeffs[0] -= r.inner.eval(0);
  return r;
}

ValidationReport validate(const CommutingPair& p) {
  Real a = p.eta.eval(0);
  Real b = p.xi.eval(0);
  check(std::isfinite(a) && a < 0, "eta(0) must be negative");
  check(std::isfinite(b) && b > 0, "xi(0) must be positive");
  check(std::abs(p.eta.dom_lo) <= 1e-8 * b, "eta domain must start at 0");
  check(std::abs(p.eta.dom_hi - b) <= Real(0.02) * b,
        "eta domain must end at xi(0)");
  check(std::abs(p.xi.dom_hi) <= 1e-8 * -a, "xi domain must end at 0");
  check(std::abs(p.xi.dom_lo - a) <= Real(0.02) * -a,
        "xi domain must start at eta(0)");
  for (const CriticalMap* m : {&p.eta, &p.xi}) {
    if (m->kind != MapKind::Cubic) continue;
    check(m->inner.lo <= m->dom_lo && m->inner.hi >= m->dom_hi,
          "inner series must cover the operative domain");
  }

  ValidationReport rep;
  rep.monotone_ok = true;
  rep.critical_ok = true;
  for (const CriticalMap* m : {&p.eta, &p.xi}) {
    if (m->kind != MapKind::Cubic) continue;
    ChebSeries di = m->inner.derivative();
    ChebSeries douter = m->outer.derivative();
    for (int j = 0; j <= 64; ++j) {
      Real x = m->dom_lo + (m->dom_hi - m->dom_lo) * Real(j) / 64;
      Real iv = m->inner.eval(x);
      if (!(di.eval(x) > 0) || !(douter.eval(cube(iv)) > 0)) {
        rep.monotone_ok = false;
        break;
      }
    }
    Real top = 0;
    for (Real c : m->inner.coeffs) top = std::max(top, std::abs(c));
    if (!(std::abs(m->inner.eval(0)) <= 1e-12 * std::max(Real(1), top)) ||
        !(di.eval(0) > 0) || !(douter.eval(0) > 0))
      rep.critical_ok = false;
  }
  rep.residual = commutation_residual(p);
  return rep;
}

CommutingPair conjugate_pair(const CommutingPair& p, Real lam) {
  if (!(lam > 0) || !std::isfinite(lam))
    throw DomainError("pair conjugation scale must be positive");
  CommutingPair q = p;
  q.eta = conjugate_linear(p.eta, lam);
  q.xi = conjugate_linear(p.xi, lam);
  q.normalized = false;
  return q;
}

CommutingPair normalize(const CommutingPair& p) {
  Real b = p.xi.eval(0);
  if (!(b > 0) || !std::isfinite(b))
    throw NormalizationError("cannot normalize: xi(0) is not positive");
  if (std::abs(b - 1) <= 1e-12) {
    CommutingPair q = p;
    q.normalized = true;
    return q;
  }
  CommutingPair q = conjugate_pair(p, b);
  q.normalized = true;
  return q;
}

Real commutation_residual(const CommutingPair& p) {
  if (p.eta.kind == MapKind::Affine && p.xi.kind == MapKind::Affine) {
    // Both compositions are the translation by the same closed-form amount.
    return std::abs((p.eta.offset + p.xi.offset) -
                    (p.xi.offset + p.eta.offset));
  }
  Real w = probe_halfwidth(p);
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return sup_commutator(p, w, 128);
    } catch (const ExtrapolationError&) {
      w /= 2;
    }
  }
  throw InvalidPairError("no overlap window around 0 admits both compositions");
}

RotationEstimate glued_rotation_number(const CommutingPair& p,
                                       long long iterations) {
  if (iterations <= 0) throw DomainError("iteration budget must be positive");
  Real a = p.eta.eval(0);
  Real b = p.xi.eval(0);
  check(a < 0 && b > 0, "glued circle needs eta(0) < 0 < xi(0)");
  const Real L = b - a;

  Real x = 0;
  long long winds = 0;
  Real best = std::numeric_limits<Real>::infinity();
  Real est = std::numeric_limits<Real>::quiet_NaN();
  Real prev = std::numeric_limits<Real>::quiet_NaN();
  Real acc = std::numeric_limits<Real>::infinity();
  const Real stop = 4 * kEps;

  for (long long n = 1; n <= iterations; ++n) {
    if (x >= 0) {
      x = p.eta.eval(x);
      ++winds;
    } else {
      x = p.xi.eval(x);
    }
    if (x >= b) {
      x -= L;
      ++winds;
    } else if (x < a) {
      x += L;
      --winds;
    }
    Real d = std::min(std::abs(x), L - std::abs(x));
    if (d < best) {
      best = d;
      long long pnum = winds + std::llround(double(x / L));
      est = Real(pnum) / Real(n);
      if (!std::isnan(prev)) {
        acc = std::abs(est - prev);
        if (acc <= stop) return {est, acc, n, true};
      }
      prev = est;
      if (best <= 32 * kEps * L)  // orbit numerically closed: exact rational
        return {est, 0, n, true};
    }
  }
  return {est, std::isfinite(acc) ? acc : Real(1), iterations, false};
}

nlohmann::ordered_json to_json(const ChebSeries& s) {
  nlohmann::ordered_json j;
  j["lo"] = real_to_string(s.lo);
  j["hi"] = real_to_string(s.hi);
  auto arr = nlohmann::ordered_json::array();
  for (Real c : s.coeffs) arr.push_back(real_to_string(c));
  j["coeffs"] = std::move(arr);
  return j;
}

nlohmann::ordered_json to_json(const CriticalMap& m) {
  nlohmann::ordered_json j;
  if (m.kind == MapKind::Affine) {
    j["offset"] = real_to_string(m.offset);
  } else {
    j["outer"] = to_json(m.outer);
    j["inner"] = to_json(m.inner);
  }
  j["domain"] = {real_to_string(m.dom_lo), real_to_string(m.dom_hi)};
  return j;
}

nlohmann::ordered_json to_json(const CommutingPair& p) {
  nlohmann::ordered_json j;
  bool affine =
      p.eta.kind == MapKind::Affine && p.xi.kind == MapKind::Affine;
  j["kind"] = affine ? "affine" : "cubic";
  j["eta"] = to_json(p.eta);
  j["xi"] = to_json(p.xi);
  j["normalized"] = p.normalized;
  j["meta"] = {{"heights", p.heights}, {"source", p.source}};
  return j;
}

ChebSeries series_from_json(const nlohmann::json& j) {
  ChebSeries s;
  s.lo = parse_scalar(j, "lo");
  s.hi = parse_scalar(j, "hi");
  if (!(s.lo < s.hi)) throw RepresentationError("series needs lo < hi");
  if (!j.contains("coeffs") || !j.at("coeffs").is_array() ||
      j.at("coeffs").empty())
    throw RepresentationError("series needs a nonempty coeffs array");
  Real top = 0;
  for (const auto& e : j.at("coeffs")) {
    Real c;
    if (!e.is_string() || !parse_real(e.get<std::string>(), c) ||
        !std::isfinite(c))
      throw RepresentationError("unparseable series coefficient");
    s.coeffs.push_back(c);
    top = std::max(top, std::abs(c));
  }
  int m = s.degree();
  s.tail_mag = m >= 1 ? std::max(std::abs(s.coeffs[m]), std::abs(s.coeffs[m - 1]))
                      : 0;
  s.resolved = s.tail_mag <= std::max(kTailTol, kTailTol * top);
  return s;
}

CriticalMap map_from_json(const nlohmann::json& j) {
  if (!j.contains("domain") || !j.at("domain").is_array() ||
      j.at("domain").size() != 2)
    throw RepresentationError("map needs a two element domain");
  Real lo, hi;
  if (!j.at("domain")[0].is_string() || !j.at("domain")[1].is_string() ||
      !parse_real(j.at("domain")[0].get<std::string>(), lo) ||
      !parse_real(j.at("domain")[1].get<std::string>(), hi))
    throw RepresentationError("unparseable map domain");
  if (j.contains("offset"))
    return CriticalMap::affine(parse_scalar(j, "offset"), lo, hi);
  if (!j.contains("outer") || !j.contains("inner"))
    throw RepresentationError("map needs either offset or outer and inner");
  return CriticalMap::cubic(series_from_json(j.at("outer")),
                            series_from_json(j.at("inner")), lo, hi);
}

CommutingPair pair_from_json(const nlohmann::json& j) {
  for (const char* key : {"kind", "eta", "xi", "normalized", "meta"})
    if (!j.contains(key))
      throw RepresentationError(std::string("pair is missing field ") + key);
  CommutingPair p;
  p.eta = map_from_json(j.at("eta"));
  p.xi = map_from_json(j.at("xi"));
  if (!j.at("normalized").is_boolean())
    throw RepresentationError("normalized must be a boolean");
  p.normalized = j.at("normalized").get<bool>();
  const auto& meta = j.at("meta");
  if (meta.contains("heights")) {
    for (const auto& h : meta.at("heights")) {
      if (!h.is_number_integer())
        throw RepresentationError("heights must be integers");
      p.heights.push_back(h.get<int>());
    }
  }
  if (meta.contains("source")) p.source = meta.at("source").get<std::string>();
  return p;
}

std::string pair_to_string(const CommutingPair& p) {
  return to_json(p).dump(2) + "\n";
}

CommutingPair pair_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw RepresentationError(std::string("invalid pair JSON: ") + e.what());
  }
  try {
    return pair_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw RepresentationError(std::string("invalid pair JSON: ") + e.what());
  }
}

}  // namespace renormlab
