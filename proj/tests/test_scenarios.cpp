#include "doctest.h"

#include <set>

#include "entrocone/dd.hpp"
#include "entrocone/classify.hpp"
#include "entrocone/errors.hpp"
#include "entrocone/scenarios.hpp"

using namespace entrocone;

TEST_CASE("bell scenario shapes") {
  const MarginalScenario b22 = bell_scenario(2, {2, 2});
  CHECK(b22.contexts.size() == 4);
  CHECK(b22.observable_space()->dim() == 9);
  CHECK(b22.variables == std::vector<std::string>{"A0", "A1", "B0", "B1"});

  const MarginalScenario b222 = bell_scenario(3, {2, 2, 2});
  CHECK(b222.contexts.size() == 8);
  CHECK(b222.observable_space()->dim() == 27);

  const MarginalScenario b33 = bell_scenario(2, {3, 3});
  CHECK(b33.contexts.size() == 9);
  CHECK(b33.observable_space()->dim() == 16);  // 15 observable entropies plus {}
}

TEST_CASE("ns cone of the two-setting bipartite scenario has 12 rows") {
  const HCone cone = ns_cone(bell_scenario(2, {2, 2}));
  CHECK(cone.inequalities.size() == 12);
  CHECK(cone.equalities.size() == 1);
  // No two rows are positive multiples of each other.
  std::set<RatVec> canon;
  for (const auto& f : cone.inequalities) canon.insert(canonical_scaled(f.coeffs));
  CHECK(canon.size() == cone.inequalities.size());
}

TEST_CASE("single-context scenario reduces to its elemental system") {
  MarginalScenario sc = bell_scenario(2, {1, 1});
  REQUIRE(sc.contexts.size() == 1);
  const HCone cone = ns_cone(sc);
  CHECK(cone.inequalities.size() == 3);  // the two-variable Shannon system
}

TEST_CASE("local systems have the closed-formula row counts") {
  CHECK(local_system(bell_scenario(2, {2, 2})).inequalities.size() == 28);
  CHECK(local_system(bell_scenario(2, {2, 2})).space->dim() == 16);
  CHECK(local_system(bell_scenario(3, {2, 2, 2})).inequalities.size() == 246);
  CHECK(local_system(bell_scenario(3, {2, 2, 2})).space->dim() == 64);
}

TEST_CASE("hybrid systems: contexts and row bounds") {
  const MarginalScenario sc = bell_scenario(3, {2, 2, 2});
  const HCone hyb = hybrid_system(Bipartition::A_BC, sc);
  CHECK(hyb.space->dim() == 36);  // (A-part 4) x (B-part 3) x (C-part 3)
  CHECK(hyb.inequalities.size() <= 112);  // 4 contexts x 28 rows before merging
  CHECK(hyb.inequalities.size() > 28);
  for (Bipartition b : {Bipartition::B_AC, Bipartition::C_AB})
    CHECK(hybrid_system(b, sc).space->dim() == 36);
  CHECK(bipartition_name(Bipartition::B_AC) == "B|AC");
}

TEST_CASE("bilocal constraints in both modes") {
  const MarginalScenario sc = bilocal_scenario({2, 2, 2});
  const auto obs = bilocal_constraints(sc, BilocalMode::Observable);
  CHECK(obs.size() == 4);  // one I(A_x:C_z) = 0 per setting pair
  for (const auto& f : obs) CHECK(f.rel == Rel::EqZero);
  const auto ext = bilocal_constraints(sc, BilocalMode::Extended);
  REQUIRE(ext.size() == 1);
  // H(A0,A1) + H(C0,C1) - H(A0,A1,C0,C1) over the full lattice.
  SpacePtr full = sc.full_space();
  const LinearForm expect = functional("H(A0,A1)+H(C0,C1)-H(A0,A1,C0,C1)", full);
  CHECK(ext[0].coeffs == expect.coeffs);
}

TEST_CASE("bilocal scenario accepts heterogeneous setting counts") {
  const MarginalScenario sc = bilocal_scenario({2, 1, 1});
  CHECK(sc.variables == std::vector<std::string>{"A0", "A1", "B", "C"});
  CHECK(sc.contexts.size() == 2);
  CHECK(sc.observable_space()->dim() == 12);
  const auto obs = bilocal_constraints(sc, BilocalMode::Observable);
  CHECK(obs.size() == 2);  // I(A0:C) = 0 and I(A1:C) = 0
}

TEST_CASE("information causality cone and its eight rays") {
  const HCone cone = ic_cone();
  CHECK(cone.space->dim() == 8);
  CHECK(cone.inequalities.size() == 9);  // 3 + 3 + 1 elemental plus two bound rows
  const VCone rays = dd_enumerate(cone);
  REQUIRE(rays.rays.size() == 8);

  auto vec = [&](std::initializer_list<int> v) {
    RatVec out;
    for (int x : v) out.push_back(x);
    return out;
  };
  // Coordinates: {}, X0, X1, G0, G1, M, {X0,G0}, {X1,G1}.
  const std::set<RatVec> expected = {
      vec({0, 0, 0, 0, 0, 1, 0, 0}), vec({0, 0, 0, 0, 1, 0, 0, 1}),
      vec({0, 0, 0, 1, 0, 0, 1, 0}), vec({0, 0, 1, 0, 0, 0, 0, 1}),
      vec({0, 1, 0, 0, 0, 0, 1, 0}), vec({0, 0, 1, 0, 1, 1, 0, 1}),
      vec({0, 1, 0, 1, 0, 1, 1, 0}), vec({0, 1, 1, 1, 1, 1, 1, 1}),
  };
  CHECK(std::set<RatVec>(rays.rays.begin(), rays.rays.end()) == expected);

  // Only the all-ones ray violates the information-causality bound.
  const NamedInequality& ic = find_inequality("ic");
  const LinearForm f = ic.form(cone.space);
  int violations = 0;
  for (const auto& r : rays.rays) {
    if (ic.violated_by_value(f.eval(r))) {
      ++violations;
      CHECK(r == vec({0, 1, 1, 1, 1, 1, 1, 1}));
      CHECK(f.eval(r) == 1);  // I+I exceeds H(M) by one bit
    }
  }
  CHECK(violations == 1);
}

TEST_CASE("scenario shorthand round-trips") {
  for (const std::string text : {"bell:2x2", "bell:3x3", "bell:2x2x2", "bilocal:2x2x2",
                                 "bilocal:2x1x1", "ic"}) {
    const ScenarioSpec spec = parse_scenario_shorthand(text);
    CHECK(scenario_shorthand(spec) == text);
  }
  CHECK_THROWS_AS(parse_scenario_shorthand("ring:2x2"), ParseError);
  CHECK_THROWS_AS(parse_scenario_shorthand("bell:2xx"), ParseError);
  CHECK_THROWS_AS(parse_scenario_shorthand("bell"), ParseError);
}

TEST_CASE("scenario invariants are enforced") {
  CHECK_THROWS_AS(bell_scenario(0, {}), Error);
  CHECK_THROWS_AS(bell_scenario(2, {2}), Error);
  CHECK_THROWS_AS(bell_scenario(2, {2, 0}), Error);
  CHECK_THROWS_AS(bilocal_scenario({2, 2}), Error);
}
