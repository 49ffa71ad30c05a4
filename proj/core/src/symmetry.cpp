#include "entrocone/symmetry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "entrocone/errors.hpp"

namespace entrocone {

SymmetryGroup SymmetryGroup::trivial(SpacePtr space) {
  SymmetryGroup g;
  g.space = space;
  std::vector<int> id(static_cast<std::size_t>(space->dim()));
  for (int i = 0; i < space->dim(); ++i) id[static_cast<std::size_t>(i)] = i;
  g.elements = {std::move(id)};
  return g;
}

namespace {

// A variable permutation lifted to coordinates; fails if some image subset
// is not a coordinate (the relabeling does not preserve the scenario).
std::vector<int> lift(const std::vector<int>& var_perm, const CoordinateSpace& space) {
  std::vector<int> out(static_cast<std::size_t>(space.dim()));
  for (int i = 0; i < space.dim(); ++i) {
    VarSet img = 0;
    for (int v : set_members(space.set_at(i))) img |= VarSet{1} << var_perm[static_cast<std::size_t>(v)];
    out[static_cast<std::size_t>(i)] = space.index_of(img);
  }
  return out;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  // (a then b): image[i] = b[a[i]]
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[static_cast<std::size_t>(a[i])];
  return out;
}

}  // namespace

SymmetryGroup scenario_symmetry_group(const MarginalScenario& scenario, const SpacePtr& space,
                                      bool bilocal_roles) {
  const int nv = static_cast<int>(scenario.variables.size());
  std::vector<std::vector<int>> var_gens;

  // Setting transpositions within each party.
  for (int p = 0; p < scenario.num_parties; ++p) {
    const std::vector<int> vars = set_members(scenario.party_vars(p));
    for (std::size_t s = 0; s + 1 < vars.size(); ++s) {
      std::vector<int> g(static_cast<std::size_t>(nv));
      for (int i = 0; i < nv; ++i) g[static_cast<std::size_t>(i)] = i;
      std::swap(g[static_cast<std::size_t>(vars[s])], g[static_cast<std::size_t>(vars[s + 1])]);
      var_gens.push_back(std::move(g));
    }
  }
  // Party swaps between parties with equal setting counts.
  for (int p = 0; p < scenario.num_parties; ++p) {
    for (int q = p + 1; q < scenario.num_parties; ++q) {
      if (scenario.settings[static_cast<std::size_t>(p)] != scenario.settings[static_cast<std::size_t>(q)])
        continue;
      if (bilocal_roles && !(p == 0 && q == scenario.num_parties - 1))
        continue;  // only the end parties are interchangeable
      const std::vector<int> vp = set_members(scenario.party_vars(p));
      const std::vector<int> vq = set_members(scenario.party_vars(q));
      std::vector<int> g(static_cast<std::size_t>(nv));
      for (int i = 0; i < nv; ++i) g[static_cast<std::size_t>(i)] = i;
      for (std::size_t s = 0; s < vp.size(); ++s) {
        g[static_cast<std::size_t>(vp[s])] = vq[s];
        g[static_cast<std::size_t>(vq[s])] = vp[s];
      }
      var_gens.push_back(std::move(g));
    }
  }

  SymmetryGroup group;
  group.space = space;
  std::set<std::vector<int>> closure;
  std::vector<int> id(static_cast<std::size_t>(space->dim()));
  for (int i = 0; i < space->dim(); ++i) id[static_cast<std::size_t>(i)] = i;
  closure.insert(id);
  std::vector<std::vector<int>> gens;
  for (const auto& vg : var_gens) gens.push_back(lift(vg, *space));

  std::vector<std::vector<int>> frontier(closure.begin(), closure.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& e : frontier) {
      for (const auto& g : gens) {
        auto c = compose(e, g);
        if (closure.insert(c).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  group.elements.assign(closure.begin(), closure.end());
  return group;
}

RatVec permuted(const RatVec& ray, const std::vector<int>& element) {
  RatVec out(ray.size());
  for (std::size_t i = 0; i < ray.size(); ++i) out[element[i] >= 0 ? static_cast<std::size_t>(element[i]) : i] = ray[i];
  return out;
}

RatVec canonical_form(const RatVec& ray, const SymmetryGroup& group) {
  if (static_cast<int>(ray.size()) != group.space->dim())
    throw DimensionMismatchError("ray length != group space dimension");
  const RatVec* best = nullptr;
  RatVec cur;
  RatVec best_store;
  for (const auto& e : group.elements) {
    cur = permuted(ray, e);
    if (best == nullptr || compare_lex(cur, *best) < 0) {
      best_store = cur;
      best = &best_store;
    }
  }
  return best_store;
}

std::size_t orbit_size(const RatVec& ray, const SymmetryGroup& group) {
  std::set<RatVec> orbit;
  for (const auto& e : group.elements) orbit.insert(permuted(ray, e));
  return orbit.size();
}

}  // namespace entrocone
