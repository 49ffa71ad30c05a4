#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entrocone/rational.hpp"
#include "entrocone/space.hpp"

namespace entrocone {

enum class Rel : std::uint8_t { GeqZero, EqZero };

/// One homogeneous linear constraint <coeffs, h> >= 0 or == 0.
struct LinearForm {
  RatVec coeffs;
  Rel rel = Rel::GeqZero;

  int dim() const { return static_cast<int>(coeffs.size()); }
  bool is_zero() const;
  Rational eval(const RatVec& h) const;
};

LinearForm negated(const LinearForm& f);

/// {h : M h >= 0, L h = 0} over a coordinate space.
struct HCone {
  SpacePtr space;
  std::vector<LinearForm> inequalities;
  std::vector<LinearForm> equalities;

  int dim() const { return space->dim(); }
  void check_consistent() const;  // throws DimensionMismatchError
};

/// Generator representation: extremal rays in canonical integer scaling.
struct VCone {
  SpacePtr space;
  std::vector<RatVec> rays;
};

/// Identifies a row of an HCone (or a pin of a pinned system).
struct RowRef {
  enum Kind : std::uint8_t { Inequality, Equality, Pin } kind = Inequality;
  int index = 0;

  friend bool operator==(const RowRef&, const RowRef&) = default;
};

std::string row_ref_label(const RowRef& r);

/// A nonnegative combination of system rows asserted to reproduce a target
/// form exactly. Multipliers on equality rows (and pins) may carry either
/// sign. `constant` carries the inhomogeneous part contributed by pins;
/// it is zero for plain cone certificates.
struct Certificate {
  std::vector<std::pair<RowRef, Rational>> terms;
  LinearForm target;
  Rational constant = 0;
};

/// Partial coordinate assignment h[coord] = value, used for membership
/// tests. Encoded as extra (inhomogeneous) equalities by the LP layer.
struct Pins {
  std::vector<std::pair<int, Rational>> values;

  static Pins on_coordinates(const std::vector<int>& coords, const RatVec& v);
};

/// Exact identity check: sum of multiplier*row == target (and the constant
/// contributed by pins matches). Inequality multipliers must be >= 0.
bool verify_certificate(const Certificate& cert, const HCone& system);
bool verify_certificate(const Certificate& cert, const HCone& system, const Pins& pins);

}  // namespace entrocone
