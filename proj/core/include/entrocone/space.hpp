#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace entrocone {

// A set of variables encoded as a bitmask over a scenario's ordered
// variable list. Fits comfortably: no scenario in scope has more than
// a handful of observables.
using VarSet = std::uint32_t;

constexpr VarSet kEmptySet = 0;

int popcount(VarSet s);
bool subset_of(VarSet a, VarSet b);
std::vector<int> set_members(VarSet s);

/// Order used everywhere: by cardinality, then lexicographic on the sorted
/// member lists. Within one cardinality this is *not* plain bitmask order.
bool varset_less(VarSet a, VarSet b);

/// A coordinate per variable subset; the empty set is always coordinate 0.
/// Immutable once built, shared by cones and vectors living on it.
class CoordinateSpace {
 public:
  static std::shared_ptr<const CoordinateSpace> make(std::vector<std::string> variables,
                                                     std::vector<VarSet> sets);

  /// All 2^n subsets of the given variables.
  static std::shared_ptr<const CoordinateSpace> full(std::vector<std::string> variables);

  int dim() const { return static_cast<int>(sets_.size()); }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<VarSet>& sets() const { return sets_; }
  VarSet set_at(int i) const { return sets_[static_cast<std::size_t>(i)]; }

  std::optional<int> find(VarSet s) const;
  /// Throws UnknownNameError naming the offending subset if absent.
  int index_of(VarSet s) const;

  int var_index(const std::string& name) const;
  std::string set_label(VarSet s) const;
  std::vector<std::string> set_names(VarSet s) const;

  bool same_layout(const CoordinateSpace& other) const;

 private:
  CoordinateSpace() = default;
  std::vector<std::string> vars_;
  std::vector<VarSet> sets_;
  std::unordered_map<VarSet, int> index_;
};

using SpacePtr = std::shared_ptr<const CoordinateSpace>;

}  // namespace entrocone
