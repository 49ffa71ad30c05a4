#pragma once

#include <optional>

#include "entrocone/cone.hpp"

namespace entrocone {

enum class LPStatus : std::uint8_t { Optimal, Unbounded, Infeasible };

struct LPOutcome {
  LPStatus status = LPStatus::Optimal;
  Rational minimum = 0;  // meaningful when Optimal

  /// Infeasible: nonnegative multipliers on rows/pins combining to
  /// 0 >= positive constant; always passes verify_certificate.
  std::optional<Certificate> farkas;

  /// Unbounded: a recession direction r of the feasible set with
  /// <objective, r> < 0.
  std::optional<RatVec> witness;

  /// Optimal with minimum >= 0 and no pins: multipliers reproducing the
  /// objective as a nonnegative row combination (validity certificate).
  std::optional<Certificate> validity;

  bool feasible() const { return status != LPStatus::Infeasible; }
};

/// Exact rational LP: minimize <objective, h> subject to the cone's rows
/// and the pins. Bland's rule throughout; no tolerances.
LPOutcome lp_check(const HCone& cone, const LinearForm& objective, const Pins& pins = {});

/// Feasibility only (zero objective).
LPOutcome lp_feasible(const HCone& cone, const Pins& pins = {});

/// Generic affine row <coeffs, x> + constant >= 0 (or == 0) for problems
/// that do not live on a coordinate space (e.g. block LPs over several
/// cones at once). No certificates are produced on this path.
struct RawRow {
  RatVec coeffs;
  Rational constant = 0;
  Rel rel = Rel::GeqZero;
};

struct RawOutcome {
  LPStatus status = LPStatus::Optimal;
  Rational minimum = 0;
};

RawOutcome lp_solve_raw(int nvars, const std::vector<RawRow>& rows, const RatVec& objective);

}  // namespace entrocone
