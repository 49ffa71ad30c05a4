#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "entrocone/boxes.hpp"
#include "entrocone/classify.hpp"
#include "entrocone/dd.hpp"
#include "entrocone/fm.hpp"
#include "entrocone/iis.hpp"
#include "entrocone/json_io.hpp"
#include "entrocone/lp.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace entrocone;

TEST_CASE("double description matches the subset oracle on 200 random cones") {
  std::mt19937_64 rng(0x5eed0001);
  int pointed = 0, lined = 0, trials = 0;
  while (pointed < 200 && trials < 2000) {
    ++trials;
    const int d = 3 + static_cast<int>(rng() % 3);  // 3..5 coordinates
    const int rows = 4 + static_cast<int>(rng() % 9);  // up to 12 rows
    const HCone cone = helpers::random_cone(rng, d, rows);
    const oracle::RayEnumeration expect = oracle::enumerate_rays(cone);
    if (expect.has_line) {
      ++lined;
      continue;
    }
    ++pointed;
    const VCone got = dd_enumerate(cone);
    CHECK(std::set<RatVec>(got.rays.begin(), got.rays.end()) == expect.rays);
    for (const auto& r : got.rays) {
      CHECK(is_canonical_scaled(r));
      CHECK(canonical_scaled(r) == r);
    }
  }
  REQUIRE(pointed == 200);
  MESSAGE("skipped ", lined, " cones with lineality");
}

TEST_CASE("dd then facet reconstruction reproduces the feasible set") {
  std::mt19937_64 rng(0x5eed0002);
  int done = 0;
  while (done < 25) {
    const int d = 3 + static_cast<int>(rng() % 2);
    const HCone cone = helpers::random_cone(rng, d, 6 + static_cast<int>(rng() % 5));
    const oracle::RayEnumeration en = oracle::enumerate_rays(cone);
    if (en.has_line || en.rays.size() < 2) continue;
    ++done;
    const VCone rays = dd_enumerate(cone);
    const HCone back = facets_of(rays);
    // Mutual containment via the LP: every original row is valid for the
    // reconstruction and vice versa.
    for (const auto& f : back.inequalities) {
      const LPOutcome r = lp_check(cone, f);
      CHECK(r.status == LPStatus::Optimal);
    }
    for (const auto& f : cone.inequalities) {
      const LPOutcome r = lp_check(back, f);
      CHECK(r.status == LPStatus::Optimal);
    }
  }
}

TEST_CASE("fm soundness: projected rays of projections come from original rays") {
  std::mt19937_64 rng(0x5eed0003);
  int done = 0;
  while (done < 40) {
    const int d = 3 + static_cast<int>(rng() % 3);
    const HCone cone = helpers::random_cone(rng, d, 5 + static_cast<int>(rng() % 6));
    const oracle::RayEnumeration en = oracle::enumerate_rays(cone);
    if (en.has_line || en.rays.empty()) continue;
    ++done;
    const int drop = 1 + static_cast<int>(rng() % d);
    const HCone projected = fm_eliminate(cone, {drop});
    std::set<RatVec> projections;
    for (const auto& r : dd_enumerate(cone).rays) {
      RatVec p;
      for (int i = 0; i < cone.dim(); ++i)
        if (i != drop) p.push_back(r[static_cast<std::size_t>(i)]);
      projections.insert(canonical_scaled(p));
    }
    for (const auto& p : projections)
      for (const auto& f : projected.inequalities) CHECK(f.eval(p) >= 0);
    DDConfig cfg;
    cfg.allow_lineality = true;
    const DDResult proj = dd_enumerate_full(projected, cfg);
    if (proj.lineality.empty())
      for (const auto& r : proj.rays.rays) CHECK(projections.count(r) == 1);
  }
}

TEST_CASE("farkas certificates from infeasible pinned systems always verify") {
  std::mt19937_64 rng(0x5eed0004);
  int infeasible = 0, trials = 0;
  while (infeasible < 30 && trials < 600) {
    ++trials;
    const int d = 3 + static_cast<int>(rng() % 3);
    const HCone cone = helpers::random_cone(rng, d, 4 + static_cast<int>(rng() % 7));
    Pins pins;
    for (int c = 1; c <= d; ++c)
      if (rng() % 2) pins.values.emplace_back(c, Rational(static_cast<int>(rng() % 7) - 3));
    const LPOutcome out = lp_feasible(cone, pins);
    if (out.feasible()) continue;
    ++infeasible;
    REQUIRE(out.farkas.has_value());
    CHECK(verify_certificate(*out.farkas, cone, pins));
    CHECK(out.farkas->constant < 0);
  }
  CHECK(infeasible == 30);
}

TEST_CASE("iis outputs are infeasible and 1-minimal on every run") {
  std::mt19937_64 rng(0x5eed0005);
  int done = 0, trials = 0;
  while (done < 20 && trials < 600) {
    ++trials;
    const int d = 3 + static_cast<int>(rng() % 2);
    const HCone cone = helpers::random_cone(rng, d, 5 + static_cast<int>(rng() % 5));
    Pins pins;
    for (int c = 1; c <= d; ++c)
      pins.values.emplace_back(c, Rational(static_cast<int>(rng() % 7) - 3));
    if (lp_feasible(cone, pins).feasible()) continue;
    ++done;
    const HCone iis = iis_shrink(cone, pins);
    CHECK_FALSE(lp_feasible(iis, pins).feasible());
    for (std::size_t skip = 0; skip < iis.inequalities.size(); ++skip) {
      HCone sub;
      sub.space = iis.space;
      sub.equalities = iis.equalities;
      for (std::size_t i = 0; i < iis.inequalities.size(); ++i)
        if (i != skip) sub.inequalities.push_back(iis.inequalities[i]);
      CHECK(lp_feasible(sub, pins).feasible());
    }
  }
  CHECK(done == 20);
}

TEST_CASE("elemental counts follow the closed formula up to six variables") {
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back("V" + std::to_string(i));
    CHECK(elemental_inequalities(n, CoordinateSpace::full(vars)).inequalities.size() ==
          elemental_count(n));
  }
}

TEST_CASE("every nonsignaling row is valid for its local system") {
  for (const char* shorthand : {"bell:2x2", "bell:3x3", "bell:2x2x2"}) {
    const MarginalScenario sc = parse_scenario_shorthand(shorthand).build();
    const HCone ns = ns_cone(sc);
    const HCone local = local_system(sc);
    for (const auto& row : ns.inequalities) {
      LinearForm embedded;
      embedded.coeffs.assign(static_cast<std::size_t>(local.dim()), Rational(0));
      for (int i = 0; i < ns.dim(); ++i)
        embedded.coeffs[static_cast<std::size_t>(local.space->index_of(ns.space->set_at(i)))] =
            row.coeffs[static_cast<std::size_t>(i)];
      const LPOutcome r = lp_check(local, embedded);
      CHECK(r.status == LPStatus::Optimal);
      CHECK(r.minimum >= 0);
    }
  }
}

TEST_CASE("entropy vectors of random nonsignaling boxes lie in the cone") {
  // Correlator parametrization of the binary two-setting nonsignaling set:
  // p(ab|xy) = (1 + (-1)^a A_x + (-1)^b B_y + (-1)^(a+b) C_xy) / 4 with
  // C_xy within [|A_x+B_y|-1, 1-|A_x-B_y|].
  std::mt19937_64 rng(0x5eed0006);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const MarginalScenario sc = bell_scenario(2, {2, 2});
  const HCone ns = ns_cone(sc);
  for (int trial = 0; trial < 1000; ++trial) {
    double av[2] = {uni(rng), uni(rng)};
    double bv[2] = {uni(rng), uni(rng)};
    Box box;
    box.parties = 2;
    box.settings = {2, 2};
    box.outcomes = {2, 2};
    box.kind = ScalarKind::Float64;
    box.ftable.assign(box.table_size(), 0.0);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const double lo = std::abs(av[x] + bv[y]) - 1.0;
        const double hi = 1.0 - std::abs(av[x] - bv[y]);
        const double c = lo + (hi - lo) * (uni(rng) + 1.0) / 2.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            box.ftable[box.index({x, y}, {a, b})] =
                (1.0 + (a ? -1 : 1) * av[x] + (b ? -1 : 1) * bv[y] +
                 ((a + b) % 2 ? -1 : 1) * c) /
                4.0;
      }
    const EntropyVector h = entropy_vector(box, sc);
    const std::vector<double> v = h.as_doubles();
    for (const auto& f : ns.inequalities) {
      double acc = 0;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (f.coeffs[i] != 0) acc += f.coeffs[i].convert_to<double>() * v[i];
      CHECK(acc > -1e-9);
    }
    // Monotonicity within each context.
    for (VarSet ctx : sc.contexts) {
      const int full = h.space->index_of(ctx);
      for (int m : set_members(ctx)) {
        const int sub = h.space->index_of(ctx & ~(VarSet{1} << m));
        CHECK(v[static_cast<std::size_t>(full)] >= v[static_cast<std::size_t>(sub)] - 1e-12);
      }
    }
  }
}

TEST_CASE("classification is invariant on all rays of the small scenarios") {
  // Scale invariance on every enumerated ray; symmetry invariance spotted
  // with two fixed group elements per ray (full orbits are covered by the
  // class partition itself).
  for (const char* shorthand : {"bell:2x2", "bell:3x3"}) {
    const ScenarioSpec spec = parse_scenario_shorthand(shorthand);
    const MarginalScenario sc = spec.build();
    const HCone cone = ns_cone(sc);
    const VCone rays = dd_enumerate(cone);
    const ScenarioSystems sys = ScenarioSystems::make(sc);
    const SymmetryGroup group = scenario_symmetry_group(sc, cone.space);
    ClassificationOptions opt;
    opt.with_gtnl = false;
    opt.with_bilocal = false;
    for (const auto& r : rays.rays) {
      const auto base = classify_ray(r, sys, opt);
      RatVec scaled = r;
      for (auto& x : scaled) x *= Rational(5, 2);
      CHECK(classify_ray(scaled, sys, opt) == base);
      const auto& g1 = group.elements[group.elements.size() / 2];
      const auto& g2 = group.elements[group.elements.size() - 1];
      CHECK(classify_ray(permuted(r, g1), sys, opt) == base);
      CHECK(classify_ray(permuted(r, g2), sys, opt) == base);
    }
  }
  // The information-causality rays: violation flag is scale-invariant.
  const HCone ic = ic_cone();
  const NamedInequality& ineq = find_inequality("ic");
  const LinearForm f = ineq.form(ic.space);
  for (const auto& r : dd_enumerate(ic).rays) {
    RatVec scaled = r;
    for (auto& x : scaled) x *= 3;
    CHECK(ineq.violated_by_value(f.eval(r)) == ineq.violated_by_value(f.eval(scaled)));
  }
}

TEST_CASE("json artifacts round-trip through their own readers") {
  std::mt19937_64 rng(0x5eed0007);
  for (int trial = 0; trial < 10; ++trial) {
    const HCone cone = helpers::random_cone(rng, 4, 6);
    const HCone cone2 = hcone_from_json(hcone_to_json(cone));
    CHECK(cone2.space->same_layout(*cone.space));
    REQUIRE(cone2.inequalities.size() == cone.inequalities.size());
    for (std::size_t i = 0; i < cone.inequalities.size(); ++i)
      CHECK(cone2.inequalities[i].coeffs == cone.inequalities[i].coeffs);
    const oracle::RayEnumeration en = oracle::enumerate_rays(cone);
    if (en.has_line) continue;
    const VCone rays = dd_enumerate(cone);
    const VCone rays2 = vcone_from_json(vcone_to_json(rays));
    CHECK(rays2.rays == rays.rays);
  }
  // Entropy vectors, both kinds.
  const MarginalScenario sc = bell_scenario(2, {2, 2});
  const EntropyVector he = entropy_vector_exact(named_box("pr"), sc);
  const EntropyVector he2 = entropy_vector_from_json(entropy_vector_to_json(he));
  CHECK(he2.kind == ScalarKind::Rational);
  CHECK(he2.rational == he.rational);
  const EntropyVector hf = entropy_vector(white_noise(named_box("pr"), 0.7), sc);
  const EntropyVector hf2 = entropy_vector_from_json(entropy_vector_to_json(hf));
  REQUIRE(hf2.kind == ScalarKind::Float64);
  for (std::size_t i = 0; i < hf.values.size(); ++i) CHECK(hf2.values[i] == hf.values[i]);
}
