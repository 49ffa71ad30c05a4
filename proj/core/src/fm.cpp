#include "entrocone/fm.hpp"

#include <algorithm>
#include <map>

#include "entrocone/errors.hpp"
#include "entrocone/lp.hpp"

namespace entrocone {

namespace {

// Equalities are direction-free: normalize the sign so the first nonzero
// entry is positive, then scale to coprime integers.
RatVec canonical_eq(const RatVec& v) {
  RatVec c = canonical_scaled(v);
  for (const auto& x : c) {
    if (x != 0) {
      if (x < 0)
        for (auto& y : c) y = -y;
      break;
    }
  }
  return c;
}

std::vector<LinearForm> independent_equalities(const std::vector<LinearForm>& eqs, int d) {
  // Keep the earliest maximal independent subset.
  std::vector<RatVec> reduced;
  std::vector<int> pivots;
  std::vector<LinearForm> kept;
  for (const auto& eq : eqs) {
    RatVec w = eq.coeffs;
    for (std::size_t r = 0; r < reduced.size(); ++r) {
      const Rational f = w[static_cast<std::size_t>(pivots[r])];
      if (f == 0) continue;
      for (int j = 0; j < d; ++j)
        if (reduced[r][static_cast<std::size_t>(j)] != 0)
          w[static_cast<std::size_t>(j)] -= f * reduced[r][static_cast<std::size_t>(j)];
    }
    int p = -1;
    for (int j = 0; j < d; ++j) {
      if (w[static_cast<std::size_t>(j)] != 0) {
        p = j;
        break;
      }
    }
    if (p < 0) continue;  // dependent
    const Rational inv = Rational(1) / w[static_cast<std::size_t>(p)];
    for (auto& x : w) x *= inv;
    reduced.push_back(std::move(w));
    pivots.push_back(p);
    kept.push_back(eq);
  }
  return kept;
}

}  // namespace

HCone dedup_rows(const HCone& cone) {
  cone.check_consistent();
  HCone out;
  out.space = cone.space;
  std::map<RatVec, bool> seen;
  for (const auto& f : cone.inequalities) {
    if (f.is_zero()) continue;
    RatVec c = canonical_scaled(f.coeffs);
    if (seen.emplace(std::move(c), true).second)
      out.inequalities.push_back({canonical_scaled(f.coeffs), Rel::GeqZero});
  }
  std::map<RatVec, bool> seen_eq;
  for (const auto& f : cone.equalities) {
    if (f.is_zero()) continue;
    RatVec c = canonical_eq(f.coeffs);
    if (seen_eq.emplace(c, true).second) out.equalities.push_back({c, Rel::EqZero});
  }
  return out;
}

HCone remove_redundant(const HCone& cone) {
  HCone work = dedup_rows(cone);
  work.equalities = independent_equalities(work.equalities, work.dim());

  // A row is redundant iff it is valid for the system formed by all the
  // others: the homogeneous LP min <row, h> then closes at zero.
  std::vector<bool> removed(work.inequalities.size(), false);
  for (std::size_t i = 0; i < work.inequalities.size(); ++i) {
    HCone rest;
    rest.space = work.space;
    rest.equalities = work.equalities;
    for (std::size_t j = 0; j < work.inequalities.size(); ++j)
      if (j != i && !removed[j]) rest.inequalities.push_back(work.inequalities[j]);
    LinearForm obj = work.inequalities[i];
    obj.rel = Rel::GeqZero;
    const LPOutcome r = lp_check(rest, obj);
    if (r.status == LPStatus::Optimal && r.minimum >= 0) removed[i] = true;
  }
  HCone out;
  out.space = work.space;
  out.equalities = std::move(work.equalities);
  for (std::size_t i = 0; i < work.inequalities.size(); ++i)
    if (!removed[i]) out.inequalities.push_back(std::move(work.inequalities[i]));
  return out;
}

namespace {

HCone drop_column(const HCone& cone, int col) {
  HCone out;
  std::vector<VarSet> sets;
  const auto& old_sets = cone.space->sets();
  for (int i = 0; i < cone.dim(); ++i)
    if (i != col) sets.push_back(old_sets[static_cast<std::size_t>(i)]);
  out.space = CoordinateSpace::make(cone.space->variables(), std::move(sets));
  auto shrink = [&](const LinearForm& f) {
    LinearForm g;
    g.rel = f.rel;
    g.coeffs.reserve(f.coeffs.size() - 1);
    for (int i = 0; i < f.dim(); ++i)
      if (i != col) g.coeffs.push_back(f.coeffs[static_cast<std::size_t>(i)]);
    return g;
  };
  for (const auto& f : cone.inequalities) out.inequalities.push_back(shrink(f));
  for (const auto& f : cone.equalities) out.equalities.push_back(shrink(f));
  return out;
}

}  // namespace

HCone fm_eliminate(const HCone& cone, const std::set<int>& drop, const FMConfig& config) {
  cone.check_consistent();
  for (int c : drop) {
    if (c < 0 || c >= cone.dim()) throw DimensionMismatchError("eliminated coordinate out of range");
    if (cone.space->set_at(c) == kEmptySet)
      throw DimensionMismatchError("cannot eliminate the empty-set coordinate");
  }

  HCone cur = dedup_rows(cone);
  // Track remaining coordinates by their subset identity (indices shift as
  // columns are dropped).
  std::vector<VarSet> to_drop;
  for (int c : drop) to_drop.push_back(cone.space->set_at(c));

  while (!to_drop.empty()) {
    // Prefer a coordinate with an equality pivot; otherwise the one with
    // the smallest pos*neg product.
    int chosen = -1;
    std::size_t chosen_set_pos = 0;
    int chosen_eq = -1;
    long best_cost = -1;
    for (std::size_t t = 0; t < to_drop.size(); ++t) {
      const int col = cur.space->index_of(to_drop[t]);
      int eq_pivot = -1;
      for (std::size_t e = 0; e < cur.equalities.size(); ++e) {
        if (cur.equalities[e].coeffs[static_cast<std::size_t>(col)] != 0) {
          eq_pivot = static_cast<int>(e);
          break;
        }
      }
      if (eq_pivot >= 0) {
        chosen = col;
        chosen_set_pos = t;
        chosen_eq = eq_pivot;
        break;
      }
      long pos = 0, neg = 0;
      for (const auto& f : cur.inequalities) {
        const auto& x = f.coeffs[static_cast<std::size_t>(col)];
        if (x > 0) ++pos;
        if (x < 0) ++neg;
      }
      const long cost = pos * neg;
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        chosen = col;
        chosen_set_pos = t;
        chosen_eq = -1;
      }
    }

    const int col = chosen;
    if (chosen_eq >= 0) {
      // Substitute the pivot equality into every other row.
      const LinearForm pivot = cur.equalities[static_cast<std::size_t>(chosen_eq)];
      const Rational& pc = pivot.coeffs[static_cast<std::size_t>(col)];
      auto substitute = [&](LinearForm& f) {
        const Rational r = f.coeffs[static_cast<std::size_t>(col)] / pc;
        if (r == 0) return;
        for (int j = 0; j < f.dim(); ++j)
          if (pivot.coeffs[static_cast<std::size_t>(j)] != 0)
            f.coeffs[static_cast<std::size_t>(j)] -= r * pivot.coeffs[static_cast<std::size_t>(j)];
      };
      for (auto& f : cur.inequalities) substitute(f);
      for (std::size_t e = 0; e < cur.equalities.size(); ++e)
        if (static_cast<int>(e) != chosen_eq) substitute(cur.equalities[e]);
      cur.equalities.erase(cur.equalities.begin() + chosen_eq);
    } else {
      std::vector<LinearForm> keep, pos, neg;
      for (auto& f : cur.inequalities) {
        const auto& x = f.coeffs[static_cast<std::size_t>(col)];
        if (x > 0)
          pos.push_back(std::move(f));
        else if (x < 0)
          neg.push_back(std::move(f));
        else
          keep.push_back(std::move(f));
      }
      if (keep.size() + pos.size() * neg.size() > config.max_rows)
        throw ResourceLimitError("Fourier-Motzkin row cap exceeded");
      for (const auto& p : pos) {
        for (const auto& n : neg) {
          // pos_coef * n + (-neg_coef) * p has a zero at col.
          const Rational cp = p.coeffs[static_cast<std::size_t>(col)];
          const Rational cn = -n.coeffs[static_cast<std::size_t>(col)];
          LinearForm g;
          g.rel = Rel::GeqZero;
          g.coeffs.assign(p.coeffs.size(), Rational(0));
          for (std::size_t j = 0; j < g.coeffs.size(); ++j)
            g.coeffs[j] = cp * n.coeffs[j] + cn * p.coeffs[j];
          if (!g.is_zero()) keep.push_back(std::move(g));
        }
      }
      cur.inequalities = std::move(keep);
    }
    cur = drop_column(cur, col);
    to_drop.erase(to_drop.begin() + static_cast<long>(chosen_set_pos));
    cur = config.reduce_each_step && to_drop.empty() == false ? remove_redundant(cur)
                                                              : dedup_rows(cur);
  }
  return remove_redundant(cur);
}

HCone fm_project_onto(const HCone& cone, const std::vector<int>& keep, const FMConfig& config) {
  std::set<int> drop;
  for (int i = 0; i < cone.dim(); ++i) drop.insert(i);
  for (int k : keep) drop.erase(k);
  drop.erase(cone.space->index_of(kEmptySet));
  return fm_eliminate(cone, drop, config);
}

}  // namespace entrocone
