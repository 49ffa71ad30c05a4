#include "doctest.h"

#include <random>
#include <set>

#include "entrocone/dd.hpp"
#include "entrocone/errors.hpp"
#include "entrocone/fm.hpp"
#include "entrocone/iis.hpp"
#include "entrocone/lp.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace entrocone;
using helpers::lift_point;
using helpers::make_cone;
using helpers::simple_space;

TEST_CASE("rational parsing and canonical scaling") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(format_rational(Rational(-1, 2)) == "-1/2");
  CHECK(format_rational(Rational(7)) == "7");
  CHECK_THROWS_AS(parse_rational("x"), ParseError);

  RatVec v = {Rational(1, 2), Rational(0), Rational(3, 4)};
  RatVec c = canonical_scaled(v);
  CHECK(c == RatVec{Rational(2), Rational(0), Rational(3)});
  CHECK(is_canonical_scaled(c));
  // Idempotent and invariant under positive scaling.
  CHECK(canonical_scaled(c) == c);
  RatVec scaled = v;
  for (auto& x : scaled) x *= Rational(7, 3);
  CHECK(canonical_scaled(scaled) == c);

  RatVec zero = {Rational(0), Rational(0)};
  CHECK(canonical_scaled(zero) == zero);
}

TEST_CASE("lp_check: minimize x over {x>=0} is 0") {
  auto space = simple_space(1);
  HCone cone = make_cone(space, {{1}});
  LinearForm obj;
  obj.coeffs = lift_point(space, {1});
  const LPOutcome out = lp_check(cone, obj);
  REQUIRE(out.status == LPStatus::Optimal);
  CHECK(out.minimum == 0);
  REQUIRE(out.validity.has_value());
  CHECK(verify_certificate(*out.validity, cone));
}

TEST_CASE("lp_check: minimize -x over {x>=0} is unbounded with witness") {
  auto space = simple_space(1);
  HCone cone = make_cone(space, {{1}});
  LinearForm obj;
  obj.coeffs = lift_point(space, {-1});
  const LPOutcome out = lp_check(cone, obj);
  REQUIRE(out.status == LPStatus::Unbounded);
  REQUIRE(out.witness.has_value());
  CHECK(obj.eval(*out.witness) < 0);
  for (const auto& f : cone.inequalities) CHECK(f.eval(*out.witness) >= 0);
}

TEST_CASE("lp_check: pins make {x>=0, x<=-1} infeasible with a Farkas certificate") {
  // x >= 0 and x + s = 0 with s pinned to 1 forces x = -1.
  auto space = simple_space(2);
  HCone cone = make_cone(space, {{1, 0}}, {{1, 1}});
  Pins pins;
  pins.values = {{2, Rational(1)}};  // coordinate of x1
  const LPOutcome out = lp_feasible(cone, pins);
  REQUIRE(out.status == LPStatus::Infeasible);
  REQUIRE(out.farkas.has_value());
  CHECK(verify_certificate(*out.farkas, cone, pins));
  CHECK(out.farkas->constant < 0);
  CHECK(out.farkas->target.is_zero());
}

TEST_CASE("lp_check: bounded minimum with pins is exact") {
  // minimize x0 subject to x0 >= x1, x0 >= -x1, x1 = 2/3.
  auto space = simple_space(2);
  HCone cone = make_cone(space, {{1, -1}, {1, 1}});
  Pins pins;
  pins.values = {{2, Rational(2, 3)}};
  LinearForm obj;
  obj.coeffs = lift_point(space, {1, 0});
  const LPOutcome out = lp_check(cone, obj, pins);
  REQUIRE(out.status == LPStatus::Optimal);
  CHECK(out.minimum == Rational(2, 3));
}

TEST_CASE("dd_enumerate: nonnegative quadrant") {
  auto space = simple_space(2);
  HCone cone = make_cone(space, {{1, 0}, {0, 1}});
  const VCone rays = dd_enumerate(cone);
  REQUIRE(rays.rays.size() == 2);
  CHECK(rays.rays[0] == lift_point(space, {0, 1}));
  CHECK(rays.rays[1] == lift_point(space, {1, 0}));
}

TEST_CASE("dd_enumerate: redundant row changes nothing") {
  // x + y >= 0, x - y >= 0, x >= 0 (implied).
  auto space = simple_space(2);
  HCone cone = make_cone(space, {{1, 1}, {1, -1}, {1, 0}});
  const VCone rays = dd_enumerate(cone);
  std::set<RatVec> got(rays.rays.begin(), rays.rays.end());
  CHECK(got.count(lift_point(space, {1, 1})));
  CHECK(got.count(lift_point(space, {1, -1})));
  CHECK(got.size() == 2);
}

TEST_CASE("dd_enumerate: lineality is rejected unless allowed") {
  auto space = simple_space(2);
  HCone cone = make_cone(space, {{1, 0}});  // y is free
  CHECK_THROWS_AS(dd_enumerate(cone), Error);
  DDConfig cfg;
  cfg.allow_lineality = true;
  const DDResult res = dd_enumerate_full(cone, cfg);
  REQUIRE(res.lineality.size() == 1);
  CHECK(res.lineality[0][2] != 0);  // the free coordinate spans the line
  REQUIRE(res.rays.rays.size() == 1);
  CHECK(res.rays.rays[0] == lift_point(space, {1, 0}));
}

TEST_CASE("dd matches the subset-enumeration oracle on fixed cones") {
  auto space = simple_space(3);
  for (const auto& rows : std::vector<std::vector<std::vector<int>>>{
           {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
           {{1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}},
           {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}},
       }) {
    HCone cone = make_cone(space, rows);
    const oracle::RayEnumeration expect = oracle::enumerate_rays(cone);
    REQUIRE(!expect.has_line);
    const VCone got = dd_enumerate(cone);
    CHECK(std::set<RatVec>(got.rays.begin(), got.rays.end()) == expect.rays);
  }
}

TEST_CASE("resource caps raise the distinct error") {
  auto space = simple_space(3);
  HCone cone = make_cone(space, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
  DDConfig cfg;
  cfg.max_rows = 2;
  CHECK_THROWS_AS(dd_enumerate(cone, cfg), ResourceLimitError);
}

TEST_CASE("remove_redundant drops duplicates and dominated rows") {
  auto space = simple_space(2);
  HCone cone = make_cone(space, {{1, 0}, {1, 0}, {1, 1}, {0, 1}});
  const HCone reduced = remove_redundant(cone);
  REQUIRE(reduced.inequalities.size() == 2);
  std::set<RatVec> got;
  for (const auto& f : reduced.inequalities) got.insert(f.coeffs);
  CHECK(got.count(lift_point(space, {1, 0})));
  CHECK(got.count(lift_point(space, {0, 1})));
}

TEST_CASE("remove_redundant keeps the feasible set (containment oracle)") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 10; ++trial) {
    HCone cone = helpers::random_cone(rng, 4, 8);
    HCone reduced = remove_redundant(cone);
    for (const auto& f : cone.inequalities) {
      const LPOutcome r = lp_check(reduced, f);
      CHECK(r.status == LPStatus::Optimal);
      CHECK(r.minimum >= 0);
    }
    for (const auto& f : reduced.inequalities) {
      const LPOutcome r = lp_check(cone, f);
      CHECK(r.status == LPStatus::Optimal);
    }
  }
}

TEST_CASE("fm_eliminate: a coordinate that appears nowhere just disappears") {
  auto space = simple_space(3);
  HCone cone = make_cone(space, {{1, 0, 0}, {1, 1, 0}});  // x2 untouched
  const HCone projected = fm_eliminate(cone, {3});        // coordinate index of x2
  CHECK(projected.dim() == 3);
  CHECK(projected.inequalities.size() == 2);
  for (const auto& f : projected.inequalities) CHECK(f.dim() == 3);
}

TEST_CASE("fm_eliminate equals project-V-then-hull on small cones") {
  std::mt19937_64 rng(777);
  int done = 0;
  while (done < 8) {
    HCone cone = helpers::random_cone(rng, 4, 7);
    const oracle::RayEnumeration en = oracle::enumerate_rays(cone);
    if (en.has_line || en.rays.empty()) continue;
    ++done;
    const int drop_coord = 1 + static_cast<int>(rng() % 4);
    HCone projected = fm_eliminate(cone, {drop_coord});

    const VCone full_rays = dd_enumerate(cone);
    std::set<RatVec> projected_rays;
    for (const auto& r : full_rays.rays) {
      RatVec p;
      for (int i = 0; i < cone.dim(); ++i)
        if (i != drop_coord) p.push_back(r[static_cast<std::size_t>(i)]);
      projected_rays.insert(canonical_scaled(p));
    }
    // Soundness: every projected ray satisfies the projected system.
    for (const auto& p : projected_rays)
      for (const auto& f : projected.inequalities) CHECK(f.eval(p) >= 0);
    // Completeness: every extremal ray of the projection is the projection
    // of some ray of the original cone.
    DDConfig cfg;
    cfg.allow_lineality = true;
    const DDResult proj_rays = dd_enumerate_full(projected, cfg);
    if (proj_rays.lineality.empty()) {
      for (const auto& r : proj_rays.rays.rays) CHECK(projected_rays.count(r) == 1);
    }
  }
}

TEST_CASE("iis_shrink drops the irrelevant row") {
  // x >= 0, x <= -1 (via pinned slack), y >= 0: the y row is irrelevant.
  auto space = simple_space(3);  // x, s, y
  HCone cone = make_cone(space, {{1, 0, 0}, {0, 0, 1}}, {{1, 1, 0}});
  Pins pins;
  pins.values = {{2, Rational(1)}};  // s = 1 so x = -1
  const HCone iis = iis_shrink(cone, pins);
  REQUIRE(iis.inequalities.size() == 1);
  CHECK(iis.inequalities[0].coeffs == lift_point(space, {1, 0, 0}));
  CHECK_FALSE(lp_feasible(iis, pins).feasible());
}

TEST_CASE("iis_shrink output is 1-minimal on random infeasible systems") {
  std::mt19937_64 rng(4242);
  int done = 0;
  while (done < 8) {
    HCone cone = helpers::random_cone(rng, 3, 7);
    Pins pins;
    for (int c = 1; c <= 3; ++c)
      pins.values.emplace_back(c, Rational(static_cast<int>(rng() % 5) - 2));
    if (lp_feasible(cone, pins).feasible()) continue;
    ++done;
    const HCone iis = iis_shrink(cone, pins);
    CHECK_FALSE(lp_feasible(iis, pins).feasible());
    for (std::size_t drop = 0; drop < iis.inequalities.size(); ++drop) {
      HCone sub;
      sub.space = iis.space;
      sub.equalities = iis.equalities;
      for (std::size_t i = 0; i < iis.inequalities.size(); ++i)
        if (i != drop) sub.inequalities.push_back(iis.inequalities[i]);
      CHECK(lp_feasible(sub, pins).feasible());
    }
  }
}

TEST_CASE("iis_shrink rejects feasible input") {
  auto space = simple_space(1);
  HCone cone = make_cone(space, {{1}});
  CHECK_THROWS_AS(iis_shrink(cone, Pins{}), FeasibleInputError);
}

TEST_CASE("verify_certificate: empty certificate with zero target") {
  auto space = simple_space(2);
  HCone cone = make_cone(space, {{1, 0}});
  Certificate cert;
  cert.target.coeffs.assign(static_cast<std::size_t>(space->dim()), Rational(0));
  CHECK(verify_certificate(cert, cone));
}

TEST_CASE("verify_certificate: multiplier sign and row resolution") {
  auto space = simple_space(1);
  HCone cone = make_cone(space, {{1}});
  Certificate cert;
  cert.terms = {{RowRef{RowRef::Inequality, 0}, Rational(-1)}};
  cert.target.coeffs = lift_point(space, {-1});
  CHECK_FALSE(verify_certificate(cert, cone));
  cert.terms = {{RowRef{RowRef::Inequality, 0}, Rational(2)}};
  cert.target.coeffs = lift_point(space, {2});
  CHECK(verify_certificate(cert, cone));
  cert.terms = {{RowRef{RowRef::Inequality, 7}, Rational(1)}};
  CHECK_THROWS_AS(verify_certificate(cert, cone), UnknownNameError);
}

TEST_CASE("facets_of reconstructs the quadrant") {
  auto space = simple_space(2);
  VCone v;
  v.space = space;
  v.rays = {lift_point(space, {1, 0}), lift_point(space, {0, 1})};
  const HCone back = facets_of(v);
  CHECK(back.inequalities.size() == 2);
  CHECK(back.equalities.size() == 1);  // the pinned empty-set coordinate
}
