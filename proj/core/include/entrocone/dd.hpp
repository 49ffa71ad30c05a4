#pragma once

#include <cstddef>

#include "entrocone/cone.hpp"

namespace entrocone {

struct DDConfig {
  /// Adjacency test: zero-set inclusion scan, or rank computation on the
  /// active rows. The combinatorial test is the fast default; both give
  /// identical results on pointed cones.
  enum class Adjacency : std::uint8_t { Combinatorial, AlgebraicRank } adjacency =
      Adjacency::Combinatorial;

  /// Caps; exceeding either raises ResourceLimitError.
  std::size_t max_intermediate_rays = 5'000'000;
  std::size_t max_rows = 100'000;

  /// Worker threads for the pairwise combination step (0 = hardware).
  /// Output is deterministic regardless of this setting.
  int threads = 1;

  /// If true, a cone with nontrivial lineality returns the lineality basis
  /// in `lineality` instead of throwing.
  bool allow_lineality = false;
};

struct DDResult {
  VCone rays;
  std::vector<RatVec> lineality;  // nonempty only with allow_lineality
};

/// Extremal rays of {M h >= 0, L h = 0}. Equalities are quotiented out
/// first; insertion order is by ascending row support size. Rays come back
/// canonically scaled and sorted.
VCone dd_enumerate(const HCone& cone, const DDConfig& config = {});

DDResult dd_enumerate_full(const HCone& cone, const DDConfig& config = {});

/// Facets of the cone spanned by the given rays (dual double description).
HCone facets_of(const VCone& vcone, const DDConfig& config = {});

}  // namespace entrocone
