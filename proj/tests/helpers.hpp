#pragma once

#include <random>
#include <vector>

#include "entrocone/cone.hpp"
#include "entrocone/space.hpp"

namespace helpers {

using namespace entrocone;

// A d-dimensional working space: coordinates {} (pinned to zero by an
// equality, as everywhere in this code base) plus d singletons.
inline SpacePtr simple_space(int d) {
  std::vector<std::string> vars;
  std::vector<VarSet> sets = {kEmptySet};
  for (int i = 0; i < d; ++i) {
    vars.push_back("x" + std::to_string(i));
    sets.push_back(VarSet{1} << i);
  }
  return CoordinateSpace::make(std::move(vars), std::move(sets));
}

// Rows are given over the d non-empty coordinates.
inline HCone make_cone(const SpacePtr& space, const std::vector<std::vector<int>>& ineqs,
                       const std::vector<std::vector<int>>& eqs = {}) {
  HCone cone;
  cone.space = space;
  const int d = space->dim();
  auto lift = [&](const std::vector<int>& row, Rel rel) {
    LinearForm f;
    f.rel = rel;
    f.coeffs.assign(static_cast<std::size_t>(d), Rational(0));
    for (std::size_t i = 0; i < row.size(); ++i) f.coeffs[i + 1] = row[i];
    return f;
  };
  for (const auto& r : ineqs) cone.inequalities.push_back(lift(r, Rel::GeqZero));
  LinearForm norm;
  norm.coeffs.assign(static_cast<std::size_t>(d), Rational(0));
  norm.coeffs[0] = 1;
  norm.rel = Rel::EqZero;
  cone.equalities.push_back(std::move(norm));
  for (const auto& r : eqs) cone.equalities.push_back(lift(r, Rel::EqZero));
  return cone;
}

inline RatVec lift_point(const SpacePtr& space, const std::vector<int>& v) {
  RatVec out(static_cast<std::size_t>(space->dim()), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) out[i + 1] = v[i];
  return out;
}

inline HCone random_cone(std::mt19937_64& rng, int d, int rows) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<std::vector<int>> ineqs;
  for (int r = 0; r < rows; ++r) {
    std::vector<int> row(static_cast<std::size_t>(d));
    bool nz = false;
    for (auto& x : row) {
      x = coeff(rng);
      nz = nz || x != 0;
    }
    if (!nz) row[static_cast<std::size_t>(rng() % d)] = 1;
    ineqs.push_back(std::move(row));
  }
  return make_cone(simple_space(d), ineqs);
}

}  // namespace helpers
