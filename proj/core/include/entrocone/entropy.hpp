#pragma once

#include <string>
#include <vector>

#include "entrocone/cone.hpp"
#include "entrocone/rational.hpp"
#include "entrocone/space.hpp"

namespace entrocone {

/// Measurement (party, setting); renders as "A0", "B1", ... in party order.
struct ObservableLabel {
  int party = 0;
  int setting = 0;

  std::string name(bool show_setting = true) const;
  friend bool operator==(const ObservableLabel&, const ObservableLabel&) = default;
};

enum class ScalarKind : std::uint8_t { Rational, Float64 };

/// Entropy coordinates over a space; the empty-set entry is pinned to 0.
struct EntropyVector {
  SpacePtr space;
  ScalarKind kind = ScalarKind::Float64;
  RatVec rational;            // when kind == Rational
  std::vector<double> values;  // when kind == Float64

  static EntropyVector exact(SpacePtr space, RatVec v);
  static EntropyVector floating(SpacePtr space, std::vector<double> v);
  std::vector<double> as_doubles() const;
};

/// Elemental (monotonicity + submodularity) rows for `vars`, indexed into
/// `space`. With vars = all n variables of a full space this is the Shannon
/// system: 2^{n-2)*C(n,2) + n inequalities plus the H({})=0 equality.
HCone elemental_inequalities(VarSet vars, SpacePtr space);

/// Shannon system for all n variables of a full 2^n space.
HCone elemental_inequalities(int n, SpacePtr space);

/// Number of elemental inequalities for n variables.
std::size_t elemental_count(int n);

/// Parses a linear information expression into exact coefficients, e.g.
/// "H(A0,B0)+H(A0,B1)+H(A1,B0)-H(A1,B1)-H(A0)-H(B0)" or
/// "I(A0:B0|C0) - 2*H(M)". Conditionals expand as H(S|T) = H(S,T) - H(T),
/// I(A:B|C) = H(A,C)+H(B,C)-H(A,B,C)-H(C). Unknown subsets are reported
/// with their offending label.
LinearForm functional(const std::string& expr, const SpacePtr& space);

}  // namespace entrocone
