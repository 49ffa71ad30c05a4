#include "entrocone/space.hpp"

#include <algorithm>
#include <bit>

#include "entrocone/errors.hpp"

namespace entrocone {

int popcount(VarSet s) { return std::popcount(s); }

bool subset_of(VarSet a, VarSet b) { return (a & ~b) == 0; }

std::vector<int> set_members(VarSet s) {
  std::vector<int> out;
  for (int i = 0; s != 0; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

bool varset_less(VarSet a, VarSet b) {
  const int ca = popcount(a), cb = popcount(b);
  if (ca != cb) return ca < cb;
  // Same cardinality: compare sorted member lists. Peel the lowest set
  // bits in lockstep.
  while (a != 0 && b != 0) {
    const int ia = std::countr_zero(a), ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

SpacePtr CoordinateSpace::make(std::vector<std::string> variables, std::vector<VarSet> sets) {
  auto sp = std::shared_ptr<CoordinateSpace>(new CoordinateSpace());
  sp->vars_ = std::move(variables);
  std::sort(sets.begin(), sets.end(), varset_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (sets.empty() || sets.front() != kEmptySet)
    sets.insert(sets.begin(), kEmptySet);
  sp->sets_ = std::move(sets);
  const VarSet all = sp->vars_.empty()
                         ? 0
                         : static_cast<VarSet>((1u << sp->vars_.size()) - 1u);
  for (std::size_t i = 0; i < sp->sets_.size(); ++i) {
    if (!subset_of(sp->sets_[i], all))
      throw DimensionMismatchError("coordinate set references an unknown variable");
    sp->index_.emplace(sp->sets_[i], static_cast<int>(i));
  }
  return sp;
}

SpacePtr CoordinateSpace::full(std::vector<std::string> variables) {
  const std::size_t n = variables.size();
  std::vector<VarSet> sets;
  sets.reserve(std::size_t{1} << n);
  for (VarSet s = 0; s < (VarSet{1} << n); ++s) sets.push_back(s);
  return make(std::move(variables), std::move(sets));
}

std::optional<int> CoordinateSpace::find(VarSet s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int CoordinateSpace::index_of(VarSet s) const {
  auto i = find(s);
  if (!i) throw UnknownNameError("subset " + set_label(s) + " is not a coordinate of this space");
  return *i;
}

int CoordinateSpace::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  throw UnknownNameError("unknown variable '" + name + "'");
}

std::string CoordinateSpace::set_label(VarSet s) const {
  if (s == kEmptySet) return "{}";
  std::string out = "{";
  bool first = true;
  for (int i : set_members(s)) {
    if (!first) out += ",";
    first = false;
    out += i < num_vars() ? vars_[static_cast<std::size_t>(i)] : ("?" + std::to_string(i));
  }
  return out + "}";
}

std::vector<std::string> CoordinateSpace::set_names(VarSet s) const {
  std::vector<std::string> out;
  for (int i : set_members(s)) out.push_back(vars_[static_cast<std::size_t>(i)]);
  return out;
}

bool CoordinateSpace::same_layout(const CoordinateSpace& other) const {
  return vars_ == other.vars_ && sets_ == other.sets_;
}

}  // namespace entrocone
