#pragma once

#include <set>

#include "entrocone/cone.hpp"

namespace entrocone {

struct FMConfig {
  /// Abort (ResourceLimitError) if an elimination step would exceed this
  /// many inequality rows. FM growth is double-exponential in the worst
  /// case; the cap keeps failures explicit.
  std::size_t max_rows = 200'000;

  /// Run the LP-based redundancy filter after every eliminated variable
  /// (not just at the end). Costs LP calls, controls row growth.
  bool reduce_each_step = true;
};

/// Removes duplicate/implied inequalities (LP check against the rest) and
/// reduces the equalities to an independent set. Feasible set unchanged.
HCone remove_redundant(const HCone& cone);

/// Drops positive-multiple duplicates only; no LP calls.
HCone dedup_rows(const HCone& cone);

/// Fourier-Motzkin projection of the cone onto the coordinates not in
/// `drop`. The result lives on a reduced coordinate space.
HCone fm_eliminate(const HCone& cone, const std::set<int>& drop, const FMConfig& config = {});

/// Convenience: keep exactly these coordinates.
HCone fm_project_onto(const HCone& cone, const std::vector<int>& keep,
                      const FMConfig& config = {});

}  // namespace entrocone
