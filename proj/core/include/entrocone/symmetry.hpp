#pragma once

#include <vector>

#include "entrocone/rational.hpp"
#include "entrocone/scenarios.hpp"
#include "entrocone/space.hpp"

namespace entrocone {

/// A group of coordinate permutations of a space, induced by relabelings
/// of observables that map contexts to contexts. Groups in scope are tiny
/// (order <= 72), so the full element list is materialized.
struct SymmetryGroup {
  SpacePtr space;
  std::vector<std::vector<int>> elements;  // image[i] = index of permuted coordinate

  std::size_t order() const { return elements.size(); }

  static SymmetryGroup trivial(SpacePtr space);
};

/// Party swaps among parties with equal setting counts plus setting
/// relabelings within each party. For bilocal scenarios only the two end
/// parties may swap (the hub has a distinguished role).
SymmetryGroup scenario_symmetry_group(const MarginalScenario& scenario, const SpacePtr& space,
                                      bool bilocal_roles = false);

/// Lexicographic minimum of the orbit.
RatVec canonical_form(const RatVec& ray, const SymmetryGroup& group);

/// Applies one group element.
RatVec permuted(const RatVec& ray, const std::vector<int>& element);

std::size_t orbit_size(const RatVec& ray, const SymmetryGroup& group);

}  // namespace entrocone
