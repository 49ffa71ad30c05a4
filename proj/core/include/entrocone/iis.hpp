#pragma once

#include "entrocone/cone.hpp"

namespace entrocone {

/// Shrinks an infeasible pinned system to a 1-minimal irreducible
/// infeasible subsystem of its inequalities: the result is still
/// infeasible under the same pins, and dropping any single surviving
/// inequality restores feasibility. Equalities are kept as given.
///
/// Greedy one-pass deletion filter, seeded by the Farkas support.
/// Throws FeasibleInputError if the input system is feasible.
HCone iis_shrink(const HCone& cone, const Pins& pins);

}  // namespace entrocone
