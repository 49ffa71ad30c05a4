#pragma once

// Test-only brute-force oracles, kept independent of the library's
// enumeration kernels: straightforward Gaussian elimination plus
// exhaustive subset search over the bounding hyperplanes.

#include <optional>
#include <set>
#include <vector>

#include "entrocone/cone.hpp"

namespace oracle {

using entrocone::HCone;
using entrocone::RatVec;
using entrocone::Rational;

// Kernel basis of a list of rational rows (columns = dim).
inline std::vector<RatVec> kernel_basis(std::vector<RatVec> rows, int dim) {
  std::vector<int> pivot_cols;
  std::size_t rank = 0;
  for (int col = 0; col < dim && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][static_cast<std::size_t>(col)] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational inv = Rational(1) / rows[rank][static_cast<std::size_t>(col)];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const Rational f = rows[r][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int j = 0; j < dim; ++j)
        rows[r][static_cast<std::size_t>(j)] -= f * rows[rank][static_cast<std::size_t>(j)];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(dim), false);
  for (int p : pivot_cols) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<RatVec> basis;
  for (int f = 0; f < dim; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    RatVec v(static_cast<std::size_t>(dim), Rational(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < rank; ++r)
      v[static_cast<std::size_t>(pivot_cols[r])] = -rows[r][static_cast<std::size_t>(f)];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  return acc;
}

struct RayEnumeration {
  std::set<RatVec> rays;
  bool has_line = false;  // cone is not pointed
};

// All extremal rays by intersecting every (dim-1)-subset of bounding rows
// and filtering by feasibility and extremality.
inline RayEnumeration enumerate_rays(const HCone& cone) {
  const int dim = cone.dim();
  std::vector<RatVec> all_rows;
  for (const auto& f : cone.equalities) all_rows.push_back(f.coeffs);
  const std::size_t num_eq = all_rows.size();
  for (const auto& f : cone.inequalities) all_rows.push_back(f.coeffs);

  RayEnumeration out;
  std::vector<int> pick;
  const std::size_t m = cone.inequalities.size();

  // Choose up to dim-1 inequality rows (equalities always included).
  std::vector<std::size_t> idx;
  auto consider = [&](const std::vector<std::size_t>& subset) {
    std::vector<RatVec> rows;
    for (std::size_t e = 0; e < num_eq; ++e) rows.push_back(all_rows[e]);
    for (std::size_t s : subset) rows.push_back(all_rows[num_eq + s]);
    const std::vector<RatVec> basis = kernel_basis(rows, dim);
    if (basis.size() != 1) return;
    for (int sign : {+1, -1}) {
      RatVec r = basis[0];
      if (sign < 0)
        for (auto& x : r) x = -x;
      bool ok = true;
      for (const auto& f : cone.inequalities)
        if (dot(f.coeffs, r) < 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      // Extremality: the tight rows leave a one-dimensional kernel.
      std::vector<RatVec> tight;
      for (std::size_t e = 0; e < num_eq; ++e) tight.push_back(all_rows[e]);
      for (const auto& f : cone.inequalities)
        if (dot(f.coeffs, r) == 0) tight.push_back(f.coeffs);
      if (kernel_basis(tight, dim).size() != 1) continue;
      out.rays.insert(entrocone::canonical_scaled(r));
    }
  };

  std::vector<std::size_t> subset;
  const int want = dim - 1 - static_cast<int>(num_eq) < 0 ? 0 : dim - 1 - static_cast<int>(num_eq);
  // Enumerate subsets of exactly `want` inequality rows (the equalities
  // already cut num_eq dimensions, assuming independence).
  std::vector<std::size_t> comb(static_cast<std::size_t>(want));
  if (want == 0) {
    consider({});
  } else if (m >= static_cast<std::size_t>(want)) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(want); ++i) comb[i] = i;
    for (;;) {
      consider(comb);
      int p = want - 1;
      while (p >= 0 && comb[static_cast<std::size_t>(p)] == m - static_cast<std::size_t>(want - p)) --p;
      if (p < 0) break;
      ++comb[static_cast<std::size_t>(p)];
      for (std::size_t q = static_cast<std::size_t>(p) + 1; q < static_cast<std::size_t>(want); ++q)
        comb[q] = comb[q - 1] + 1;
    }
  }

  // A pair r, -r that are both feasible flags a lineality direction.
  for (const auto& r : out.rays) {
    RatVec neg = r;
    for (auto& x : neg) x = -x;
    if (out.rays.count(entrocone::canonical_scaled(neg))) {
      out.has_line = true;
      break;
    }
  }
  return out;
}

}  // namespace oracle
