#include "renormlab/renorm.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "renormlab/circle_maps.hpp"
#include "renormlab/errors.hpp"

using namespace renormlab;
using fixtures::golden_pair;

namespace {

const Real kGolden = 0.61803398874989484820458683436564;  // (sqrt 5 - 1)/2

CommutingPair affine_pair(Real s) {
  CommutingPair p;
  p.eta = CriticalMap::affine(-s, 0, 1);
  p.xi = CriticalMap::affine(1, -s, 0);
  p.normalized = true;
  return p;
}

}  // namespace

TEST_CASE("height counts eta steps of the orbit of xi(0)") {
  CHECK(height(affine_pair(0.3)) == 3);    // 1, 0.7, 0.4, 0.1, -0.2
  CHECK(height(affine_pair(0.72)) == 1);
  CHECK(height(affine_pair(kGolden)) == 1);
  CHECK(height(affine_pair(0.105)) == 9);
}

TEST_CASE("height failure modes") {
  // eta(xi(0)) already negative: nothing to renormalize.
  CHECK_THROWS_AS(height(affine_pair(1.2)), NotRenormalizableError);
  // orbit lands exactly on the critical point (dyadic translation lengths).
  CHECK_THROWS_AS(height(affine_pair(0.5)), NotRenormalizableError);
  CHECK_THROWS_AS(height(affine_pair(0.25)), NotRenormalizableError);
  // height past the bounded-type cap.
  CHECK_THROWS_AS(height(affine_pair(0.04)), UnboundedTypeError);
}

TEST_CASE("renormalization acts as the Gauss map on translation pairs") {
  oracle::SplitMix64 rng(0x5ca1ab1e);
  int tested = 0;
  while (tested < 100) {
    Real s = rng.uniform(0.1, 0.9);
    // keep clear of low-order rationals where the height is ambiguous at
    // machine precision
    bool near_rational = false;
    for (int q = 1; q <= 30 && !near_rational; ++q)
      near_rational = std::abs(s * q - std::round(s * q)) < 1e-6 * q;
    if (near_rational) continue;
    ++tested;

    RenormStep st;
    CommutingPair q = renormalize(affine_pair(s), &st);
    CHECK(st.height == int(std::floor(1 / s)));
    Real expected = 1 / s - std::floor(1 / s);  // Gauss image of s
    CHECK(std::abs(-q.eta.offset - expected) <= 1e-12);
    CHECK(q.xi.offset == Real(1));  // rescaling by eta(0) normalizes exactly
    CHECK(q.normalized);
    CHECK(q.heights.back() == st.height);
    CHECK(st.residual_after == Real(0));
  }
}

TEST_CASE("golden translation pair is a fixed point") {
  CommutingPair p = affine_pair(kGolden);
  RenormStep st;
  CommutingPair q = renormalize(p, &st);
  CHECK(st.height == 1);
  CHECK(std::abs(q.eta.offset + kGolden) <= 1e-15);

  // ten steps: the fixed point is repelling along this family, so roundoff
  // grows by |Gauss'| ~ 2.618 per step, still far below 1e-11
  for (int k = 0; k < 9; ++k) q = renormalize(q);
  CHECK(std::abs(q.eta.offset + kGolden) <= 1e-11);
  CHECK(q.heights == std::vector<int>(10, 1));
}

TEST_CASE("orbit of a near-rational pair collapses through the CF expansion") {
  // 2/5 = [2, 2]: the double image of 0.4 is zero in exact arithmetic. In
  // binary64 the seed is fl(0.4), so the orbit reaches s ~ 5.6e-16 and the
  // next height scan blows past the type cap.
  RenormOrbit orbit = renorm_orbit(affine_pair(0.4), 12);
  REQUIRE(orbit.rows.size() == 2);
  CHECK(orbit.rows[0].height == 2);
  CHECK(orbit.rows[1].height == 2);
  CHECK(std::abs(orbit.pairs[1].eta.offset + 0.5) <= 1e-15);
  CHECK(std::abs(orbit.pairs[2].eta.offset) <= 1e-14);
  CHECK(orbit.stop == StopReason::UnboundedType);
  CHECK(!orbit.stop_detail.empty());

  // a genuinely dyadic translation length lands exactly on the critical
  // point: no progress at all, reported as a terminal orbit
  RenormOrbit none = renorm_orbit(affine_pair(0.5), 12);
  CHECK(none.rows.empty());
  CHECK(none.pairs.size() == 1);
  CHECK(none.stop == StopReason::NotRenormalizable);
  CHECK(none.stop_detail.find("exactly") != std::string::npos);
  CHECK(stop_reason_name(none.stop) == std::string("not_renormalizable"));
  CHECK_THROWS_AS(scaling_ratios(none), DomainError);
}

TEST_CASE("unbounded combinatorics ends the orbit") {
  RenormOrbit orbit = renorm_orbit(affine_pair(0.01), 3);
  CHECK(orbit.stop == StopReason::UnboundedType);
  CHECK(orbit.rows.empty());
}

TEST_CASE("orbit length must respect the precision cap") {
  CHECK_THROWS_AS(renorm_orbit(affine_pair(0.3), 0), DomainError);
  CHECK_THROWS_AS(renorm_orbit(affine_pair(0.3), kOrbitCap + 1), DomainError);
}

TEST_CASE("renormalize rejects mixed branch kinds") {
  CommutingPair p = golden_pair();
  CommutingPair mixed = p;
  mixed.eta = CriticalMap::affine(p.a(), 0, 1);
  CHECK_THROWS_AS(renormalize(mixed), DomainError);
}

TEST_CASE("cubic renormalization matches the direct composition") {
  const CommutingPair& p = golden_pair();
  Real a = p.a();

  RenormStep st;
  CommutingPair q = renormalize(p, &st);
  CHECK(st.height == 1);
  CHECK(st.scale == a);
  CHECK(q.normalized);
  CHECK(std::abs(q.b() - 1) <= 1e-12);
  CHECK(q.heights == std::vector<int>{1});

  // new eta against eta^h(xi(a x))/a evaluated through the source pair
  for (int i = 0; i <= 16; ++i) {
    Real x = Real(i) / 16;
    Real direct = p.eta.eval(p.xi.eval(a * x)) / a;
    CHECK(std::abs(q.eta.eval(x) - direct) <= 1e-12);
  }
  // new xi is a pure coefficient transform of eta
  Real anew = q.a();
  for (int i = 0; i <= 16; ++i) {
    Real x = anew * Real(i) / 16;
    Real direct = p.eta.eval(a * x) / a;
    CHECK(std::abs(q.xi.eval(x) - direct) <= 1e-13);
  }

  CHECK(st.eta0_after == q.a());
  CHECK(st.residual_after <= 1e-10);
  CHECK(st.decay_after > 1.05);
  CHECK(validate(q).ok());

  // conjugation equivariance: a rescaled copy renormalizes to the same pair
  CommutingPair r = renormalize(normalize(conjugate_pair(p, 1.7)));
  for (int i = 0; i <= 8; ++i) {
    Real x = Real(i) / 8;
    CHECK(std::abs(r.eta.eval(x) - q.eta.eval(x)) <= 1e-11);
  }
}

TEST_CASE("renormalization orbit of a critical golden pair") {
  RenormOrbit orbit = renorm_orbit(golden_pair(), 8);
  REQUIRE(orbit.stop == StopReason::Completed);
  REQUIRE(orbit.rows.size() == 8);

  for (const auto& row : orbit.rows) {
    CHECK(row.height == 1);  // golden combinatorics reproduce themselves
    CHECK(row.residual <= 1e-8);
    CHECK(row.decay > 1.05);
  }

  // |eta_k(0)| settles at the universal critical scaling, well away from
  // the golden mean of the translation family
  std::vector<Real> ratios = scaling_ratios(orbit);
  REQUIRE(ratios.size() == 9);
  CHECK(ratios[0] == std::fabs(golden_pair().a()));
  CHECK(std::abs(ratios[8] - ratios[7]) < 2e-3);
  CHECK(ratios[8] > 0.70);
  CHECK(ratios[8] < 0.85);
  CHECK(std::abs(ratios[8] - kGolden) > 0.05);

  // glued rotation numbers shift by the Gauss map under renormalization
  Real y0 = 1 / glued_rotation_number(orbit.pairs[0], 200000).value - 1;
  Real y1 = 1 / glued_rotation_number(orbit.pairs[1], 200000).value - 1;
  CHECK(std::abs(y0 - kGolden) <= 1e-7);
  CHECK(std::abs(y1 - (1 / y0 - std::floor(1 / y0))) <= 1e-7);
}
