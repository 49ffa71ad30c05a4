#include "doctest.h"

#include <set>

#include "entrocone/entropy.hpp"
#include "entrocone/errors.hpp"
#include "entrocone/scenarios.hpp"

using namespace entrocone;

namespace {

SpacePtr full4() { return CoordinateSpace::full({"A0", "A1", "B0", "B1"}); }

Rational coeff(const LinearForm& f, const SpacePtr& sp, const std::string& expr) {
  // Position a single H(...) term to read its coefficient.
  const LinearForm probe = functional(expr, sp);
  for (int i = 0; i < sp->dim(); ++i)
    if (probe.coeffs[static_cast<std::size_t>(i)] == 1) return f.coeffs[static_cast<std::size_t>(i)];
  throw Error("probe failed");
}

}  // namespace

TEST_CASE("elemental row counts match the closed formula") {
  CHECK(elemental_count(2) == 3);
  CHECK(elemental_count(3) == 9);
  CHECK(elemental_count(4) == 28);
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back("V" + std::to_string(i));
    const HCone cone = elemental_inequalities(n, CoordinateSpace::full(vars));
    CHECK(cone.inequalities.size() == elemental_count(n));
    CHECK(cone.equalities.size() == 1);  // H({}) = 0
  }
  CHECK_THROWS_AS(elemental_count(0), Error);
}

TEST_CASE("n=2 gives mutual information plus two monotonicity rows") {
  SpacePtr sp = CoordinateSpace::full({"A", "B"});
  const HCone cone = elemental_inequalities(2, sp);
  REQUIRE(cone.inequalities.size() == 3);
  std::set<RatVec> rows;
  for (const auto& f : cone.inequalities) rows.insert(canonical_scaled(f.coeffs));
  CHECK(rows.count(canonical_scaled(functional("I(A:B)", sp).coeffs)));
  CHECK(rows.count(canonical_scaled(functional("H(A,B)-H(A)", sp).coeffs)));
  CHECK(rows.count(canonical_scaled(functional("H(A,B)-H(B)", sp).coeffs)));
}

TEST_CASE("functional: conditional entropy expansion") {
  SpacePtr sp = full4();
  const LinearForm f = functional("H(A0|B0)", sp);
  CHECK(coeff(f, sp, "H(A0,B0)") == 1);
  CHECK(coeff(f, sp, "H(B0)") == -1);
  CHECK(coeff(f, sp, "H(A0)") == 0);
}

TEST_CASE("functional: the CHSH expression expands to the projection form") {
  SpacePtr sp = full4();
  const LinearForm s_e =
      functional("I(A0:B0)+I(A0:B1)+I(A1:B0)-I(A1:B1)-H(A0)-H(B0)", sp);
  const LinearForm expect =
      functional("H(A0)+H(B0)-H(A0,B0)-H(A0,B1)-H(A1,B0)+H(A1,B1)", sp);
  CHECK(s_e.coeffs == expect.coeffs);
}

TEST_CASE("functional is linear in the expression") {
  SpacePtr sp = full4();
  const LinearForm a = functional("H(A0,B0)-H(B0)", sp);
  const LinearForm b = functional("I(A1:B1)", sp);
  const LinearForm combo = functional("3*H(A0,B0)-3*H(B0)+I(A1:B1)", sp);
  for (int i = 0; i < sp->dim(); ++i)
    CHECK(combo.coeffs[static_cast<std::size_t>(i)] ==
          3 * a.coeffs[static_cast<std::size_t>(i)] + b.coeffs[static_cast<std::size_t>(i)]);
}

TEST_CASE("functional: unknown subsets are reported with the offending label") {
  const MarginalScenario sc = bell_scenario(2, {2, 2});
  SpacePtr obs = sc.observable_space();
  CHECK_THROWS_WITH_AS(functional("H(A0,A1)", obs), doctest::Contains("A0,A1"),
                       UnknownNameError);
  CHECK_THROWS_AS(functional("H(Q7)", obs), UnknownNameError);
  CHECK_THROWS_AS(functional("", obs), ParseError);
  CHECK_THROWS_AS(functional("H(A0)+", obs), ParseError);
}

TEST_CASE("entropy vectors enforce their invariants") {
  SpacePtr sp = CoordinateSpace::full({"A", "B"});
  RatVec ok(static_cast<std::size_t>(sp->dim()), Rational(1));
  ok[0] = 0;
  CHECK(EntropyVector::exact(sp, ok).rational[0] == 0);
  RatVec bad = ok;
  bad[0] = 1;
  CHECK_THROWS_AS(EntropyVector::exact(sp, bad), DimensionMismatchError);
  CHECK_THROWS_AS(EntropyVector::exact(sp, RatVec(2, Rational(0))), DimensionMismatchError);
}
