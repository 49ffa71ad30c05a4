#include "entrocone/dd.hpp"

#include <algorithm>
#include <bit>
#include <thread>

#include "entrocone/errors.hpp"

namespace entrocone {

namespace {

// --------------------------------------------------------------------------
// Small fixed-width bitset for active-row sets.
// --------------------------------------------------------------------------
struct Bits {
  std::vector<std::uint64_t> w;

  explicit Bits(int nbits = 0) : w(static_cast<std::size_t>((nbits + 63) / 64), 0) {}
  void set(int i) { w[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
  bool get(int i) const { return (w[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1; }
};

inline int and_popcount(const Bits& a, const Bits& b) {
  int n = 0;
  for (std::size_t i = 0; i < a.w.size(); ++i) n += std::popcount(a.w[i] & b.w[i]);
  return n;
}

inline bool subset_words(const std::vector<std::uint64_t>& z, const Bits& r) {
  for (std::size_t i = 0; i < z.size(); ++i)
    if ((z[i] & ~r.w[i]) != 0) return false;
  return true;
}

struct SparseRow {
  std::vector<std::pair<int, std::int64_t>> entries;
};

inline std::int64_t sparse_dot(const SparseRow& row, const IntVec& z) {
  __int128 acc = 0;
  for (const auto& [j, c] : row.entries) acc += static_cast<__int128>(c) * z[static_cast<std::size_t>(j)];
  if (acc > INT64_MAX || acc < INT64_MIN) throw ResourceLimitError("dd: dot product exceeds 64 bits");
  return static_cast<std::int64_t>(acc);
}

struct DDRay {
  IntVec z;
  Bits zero;
};

// Rational Gauss-Jordan; returns pivot columns and the reduced rows.
struct RREF {
  std::vector<RatVec> rows;
  std::vector<int> pivot_col;
};

// Pivots are searched in the first `d` columns; row operations cover the
// whole row (rows may carry extra augmented columns).
RREF rref_of(const std::vector<RatVec>& input, int d) {
  RREF out;
  std::vector<RatVec> work = input;
  std::vector<bool> used(work.size(), false);
  std::vector<std::pair<int, int>> pivot_of;
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (!used[r] && work[r][static_cast<std::size_t>(col)] != 0) {
        pivot = static_cast<int>(r);
        break;
      }
    }
    if (pivot < 0) continue;
    used[static_cast<std::size_t>(pivot)] = true;
    pivot_of.emplace_back(pivot, col);
    RatVec& p = work[static_cast<std::size_t>(pivot)];
    const Rational inv = Rational(1) / p[static_cast<std::size_t>(col)];
    for (auto& x : p) x *= inv;
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (static_cast<int>(r) == pivot) continue;
      const Rational f = work[r][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (std::size_t j = 0; j < work[r].size(); ++j)
        if (p[j] != 0) work[r][j] -= f * p[j];
    }
  }
  for (const auto& [row, col] : pivot_of) {
    out.rows.push_back(work[static_cast<std::size_t>(row)]);
    out.pivot_col.push_back(col);
  }
  return out;
}

// Null-space basis of the row set (d columns).
std::vector<RatVec> null_basis(const RREF& rref, int d) {
  std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
  for (int p : rref.pivot_col) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<RatVec> basis;
  for (int f = 0; f < d; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    RatVec v(static_cast<std::size_t>(d), Rational(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < rref.rows.size(); ++r)
      v[static_cast<std::size_t>(rref.pivot_col[r])] = -rref.rows[r][static_cast<std::size_t>(f)];
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank_of_int_rows(const std::vector<const SparseRow*>& rows, int k) {
  std::vector<RatVec> dense;
  dense.reserve(rows.size());
  for (const auto* r : rows) {
    RatVec v(static_cast<std::size_t>(k), Rational(0));
    for (const auto& [j, c] : r->entries) v[static_cast<std::size_t>(j)] = c;
    dense.push_back(std::move(v));
  }
  return static_cast<int>(rref_of(dense, k).pivot_col.size());
}

struct Kernel {
  int k = 0;  // working dimension
  std::vector<SparseRow> rows;
  DDConfig config;

  std::vector<DDRay> rays;
  int processed = 0;
  int total_rows = 0;

  bool adjacent(const DDRay& p, const DDRay& n, const std::vector<std::vector<int>>& tight_at,
                int except_a, int except_b) const {
    std::vector<std::uint64_t> z(p.zero.w.size());
    int zcount = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = p.zero.w[i] & n.zero.w[i];
      zcount += std::popcount(z[i]);
    }
    if (zcount < k - 2) return false;
    if (config.adjacency == DDConfig::Adjacency::AlgebraicRank) {
      std::vector<const SparseRow*> active;
      for (int r = 0; r < processed; ++r)
        if ((z[static_cast<std::size_t>(r >> 6)] >> (r & 63)) & 1)
          active.push_back(&rows[static_cast<std::size_t>(r)]);
      return rank_of_int_rows(active, k) == k - 2;
    }
    // Combinatorial: no third ray's zero set may contain z. Scan the
    // shortest posting list among the common tight rows.
    const std::vector<int>* scan = nullptr;
    for (int r = 0; r < processed; ++r) {
      if (!((z[static_cast<std::size_t>(r >> 6)] >> (r & 63)) & 1)) continue;
      const auto& lst = tight_at[static_cast<std::size_t>(r)];
      if (scan == nullptr || lst.size() < scan->size()) scan = &lst;
    }
    if (scan == nullptr) {
      for (int i = 0; i < static_cast<int>(rays.size()); ++i) {
        if (i == except_a || i == except_b) continue;
        if (subset_words(z, rays[static_cast<std::size_t>(i)].zero)) return false;
      }
      return true;
    }
    for (int i : *scan) {
      if (i == except_a || i == except_b) continue;
      if (subset_words(z, rays[static_cast<std::size_t>(i)].zero)) return false;
    }
    return true;
  }

  void insert_row(int row_index) {
    const SparseRow& row = rows[static_cast<std::size_t>(row_index)];
    const int n = static_cast<int>(rays.size());
    std::vector<std::int64_t> val(static_cast<std::size_t>(n));
    std::vector<int> pos, neg;
    for (int i = 0; i < n; ++i) {
      val[static_cast<std::size_t>(i)] = sparse_dot(row, rays[static_cast<std::size_t>(i)].z);
      if (val[static_cast<std::size_t>(i)] > 0)
        pos.push_back(i);
      else if (val[static_cast<std::size_t>(i)] < 0)
        neg.push_back(i);
    }

    std::vector<DDRay> fresh;
    if (!pos.empty() && !neg.empty()) {
      // Posting lists over currently tight rows, for the adjacency scan.
      std::vector<std::vector<int>> tight_at(static_cast<std::size_t>(processed));
      for (int i = 0; i < n; ++i)
        for (int r = 0; r < processed; ++r)
          if (rays[static_cast<std::size_t>(i)].zero.get(r))
            tight_at[static_cast<std::size_t>(r)].push_back(i);

      struct Pair {
        int p, n;
      };
      std::vector<Pair> candidates;
      for (int p : pos)
        for (int ng : neg) candidates.push_back({p, ng});

      const int hw = config.threads > 0 ? config.threads
                                        : static_cast<int>(std::thread::hardware_concurrency());
      const int nthreads =
          candidates.size() < 4096 ? 1 : std::max(1, std::min<int>(hw, 8));
      std::vector<std::vector<DDRay>> chunk_out(static_cast<std::size_t>(nthreads));
      auto worker = [&](int t) {
        for (std::size_t c = static_cast<std::size_t>(t); c < candidates.size();
             c += static_cast<std::size_t>(nthreads)) {
          const auto [ip, in] = candidates[c];
          const DDRay& rp = rays[static_cast<std::size_t>(ip)];
          const DDRay& rn = rays[static_cast<std::size_t>(in)];
          if (!adjacent(rp, rn, tight_at, ip, in)) continue;
          DDRay nr;
          nr.z = combine(val[static_cast<std::size_t>(ip)], rn.z, -val[static_cast<std::size_t>(in)], rp.z);
          nr.zero = Bits(total_rows);
          for (int r = 0; r < processed; ++r)
            if (sparse_dot(rows[static_cast<std::size_t>(r)], nr.z) == 0) nr.zero.set(r);
          nr.zero.set(row_index);
          chunk_out[static_cast<std::size_t>(t)].push_back(std::move(nr));
        }
      };
      if (nthreads == 1) {
        worker(0);
      } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
      }
      // The ray *set* is order-independent and the final output is sorted,
      // so concatenating per-thread buckets keeps results deterministic.
      for (auto& bucket : chunk_out)
        for (auto& r : bucket) fresh.push_back(std::move(r));
    }

    std::vector<DDRay> next;
    next.reserve(static_cast<std::size_t>(n) + fresh.size());
    for (int i = 0; i < n; ++i) {
      if (val[static_cast<std::size_t>(i)] < 0) continue;
      DDRay r = std::move(rays[static_cast<std::size_t>(i)]);
      if (val[static_cast<std::size_t>(i)] == 0) r.zero.set(row_index);
      next.push_back(std::move(r));
    }
    for (auto& r : fresh) next.push_back(std::move(r));
    if (next.size() > config.max_intermediate_rays)
      throw ResourceLimitError("dd: intermediate ray cap exceeded");
    rays = std::move(next);
    ++processed;
  }
};

}  // namespace

DDResult dd_enumerate_full(const HCone& cone, const DDConfig& config) {
  cone.check_consistent();
  const int d = cone.dim();
  if (cone.inequalities.size() + cone.equalities.size() > config.max_rows)
    throw ResourceLimitError("dd: row cap exceeded");

  // Quotient out the equalities.
  std::vector<RatVec> eq_rows;
  for (const auto& e : cone.equalities) eq_rows.push_back(e.coeffs);
  const RREF eq_rref = rref_of(eq_rows, d);
  std::vector<RatVec> nbasis = null_basis(eq_rref, d);
  const int k0 = static_cast<int>(nbasis.size());

  DDResult result;
  result.rays.space = cone.space;
  if (k0 == 0) return result;

  // Transform the inequality rows into the quotient coordinates.
  std::vector<RatVec> reduced;
  for (const auto& f : cone.inequalities) {
    RatVec red(static_cast<std::size_t>(k0), Rational(0));
    bool nz = false;
    for (int j = 0; j < k0; ++j) {
      Rational acc = 0;
      for (int t = 0; t < d; ++t)
        if (f.coeffs[static_cast<std::size_t>(t)] != 0 &&
            nbasis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] != 0)
          acc += f.coeffs[static_cast<std::size_t>(t)] * nbasis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
      red[static_cast<std::size_t>(j)] = acc;
      nz = nz || acc != 0;
    }
    if (nz) reduced.push_back(std::move(red));
  }

  // Lineality = null space of the reduced rows.
  const RREF ineq_rref = rref_of(reduced, k0);
  const int rank = static_cast<int>(ineq_rref.pivot_col.size());
  std::vector<RatVec> lin = null_basis(ineq_rref, k0);
  std::vector<RatVec> work_basis;  // k0-dim vectors spanning the pointed part
  if (rank < k0) {
    if (!config.allow_lineality)
      throw Error("dd_enumerate: cone has nontrivial lineality (" + std::to_string(k0 - rank) +
                  " dimensions); not pointed");
    for (const auto& l : lin) {
      RatVec h(static_cast<std::size_t>(d), Rational(0));
      for (int t = 0; t < d; ++t)
        for (int j = 0; j < k0; ++j)
          if (l[static_cast<std::size_t>(j)] != 0)
            h[static_cast<std::size_t>(t)] += l[static_cast<std::size_t>(j)] * nbasis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
      result.lineality.push_back(canonical_scaled(h));
    }
    // Restrict to the span of the row vectors: substitute z = Q w where the
    // columns of Q are the reduced row-space basis (rows of the RREF).
    for (const auto& r : ineq_rref.rows) work_basis.push_back(r);
  }

  const int k = rank < k0 ? rank : k0;
  Kernel kern;
  kern.k = k;
  kern.config = config;

  std::vector<RatVec> final_rows;
  if (rank < k0) {
    for (const auto& row : reduced) {
      RatVec w(static_cast<std::size_t>(k), Rational(0));
      for (int j = 0; j < k; ++j) {
        Rational acc = 0;
        for (int t = 0; t < k0; ++t)
          if (row[static_cast<std::size_t>(t)] != 0 &&
              work_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] != 0)
            acc += row[static_cast<std::size_t>(t)] * work_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
        w[static_cast<std::size_t>(j)] = acc;
      }
      final_rows.push_back(std::move(w));
    }
  } else {
    final_rows = std::move(reduced);
  }

  // Integer sparse rows, deduplicated.
  std::vector<IntVec> int_rows;
  {
    std::vector<IntVec> seen;
    for (const auto& r : final_rows) {
      IntVec ir = to_int_row(r);
      if (std::find(seen.begin(), seen.end(), ir) == seen.end()) {
        seen.push_back(ir);
        int_rows.push_back(ir);
      }
    }
  }
  const int m = static_cast<int>(int_rows.size());
  kern.total_rows = m;
  for (const auto& r : int_rows) {
    SparseRow sr;
    for (int j = 0; j < k; ++j)
      if (r[static_cast<std::size_t>(j)] != 0) sr.entries.emplace_back(j, r[static_cast<std::size_t>(j)]);
    kern.rows.push_back(std::move(sr));
  }

  // Insertion order: ascending support size, then original index. The
  // initial simplicial basis greedily takes rank-increasing rows in that
  // order.
  std::vector<int> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto sa = kern.rows[static_cast<std::size_t>(a)].entries.size();
    const auto sb = kern.rows[static_cast<std::size_t>(b)].entries.size();
    if (sa != sb) return sa < sb;
    return a < b;
  });

  std::vector<int> basis_rows;
  {
    std::vector<RatVec> picked;
    std::vector<RatVec> probe;
    for (int idx : order) {
      if (static_cast<int>(basis_rows.size()) == k) break;
      RatVec dense(static_cast<std::size_t>(k), Rational(0));
      for (const auto& [j, c] : kern.rows[static_cast<std::size_t>(idx)].entries)
        dense[static_cast<std::size_t>(j)] = c;
      probe = picked;
      probe.push_back(dense);
      if (static_cast<int>(rref_of(probe, k).pivot_col.size()) > static_cast<int>(picked.size())) {
        picked.push_back(dense);
        basis_rows.push_back(idx);
      }
    }
    if (static_cast<int>(basis_rows.size()) != k)
      throw Error("internal: dd initial basis rank deficit");

    // Initial rays: columns of the inverse of the basis matrix, i.e. the
    // solutions B r_j = e_j.
    std::vector<RatVec> aug = picked;
    for (int r = 0; r < k; ++r) {
      aug[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(2 * k), Rational(0));
      aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(k + r)] = 1;
    }
    const RREF inv = rref_of(aug, k);
    // inv rows: [I | B^{-1}] with pivot order = column order.
    std::vector<RatVec> binv(static_cast<std::size_t>(k), RatVec(static_cast<std::size_t>(k), Rational(0)));
    for (int r = 0; r < k; ++r) {
      const int pc = inv.pivot_col[static_cast<std::size_t>(r)];
      for (int j = 0; j < k; ++j)
        binv[static_cast<std::size_t>(pc)][static_cast<std::size_t>(j)] =
            inv.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k + j)];
    }
    for (int j = 0; j < k; ++j) {
      RatVec col(static_cast<std::size_t>(k));
      for (int t = 0; t < k; ++t) col[static_cast<std::size_t>(t)] = binv[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
      DDRay ray;
      ray.z = to_int_row(col);
      ray.zero = Bits(m);
      for (int r = 0; r < m; ++r)
        if (sparse_dot(kern.rows[static_cast<std::size_t>(r)], ray.z) == 0) ray.zero.set(r);
      kern.rays.push_back(std::move(ray));
    }
  }

  // The basis rows count as processed; all rays are feasible for them.
  // Zero-set bits were computed against every row above, but adjacency may
  // only consult processed rows; reorder so basis rows come first.
  std::vector<int> rest;
  for (int idx : order)
    if (std::find(basis_rows.begin(), basis_rows.end(), idx) == basis_rows.end()) rest.push_back(idx);

  // Remap row indices so processed rows occupy a prefix of the bitset.
  std::vector<int> perm(static_cast<std::size_t>(m));
  {
    int at = 0;
    for (int idx : basis_rows) perm[static_cast<std::size_t>(idx)] = at++;
    for (int idx : rest) perm[static_cast<std::size_t>(idx)] = at++;
    std::vector<SparseRow> rows2(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) rows2[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = kern.rows[static_cast<std::size_t>(i)];
    kern.rows = std::move(rows2);
    // Zero-set bits are only maintained over processed rows; keep just the
    // basis prefix here.
    for (auto& ray : kern.rays) {
      Bits nz(m);
      for (int i = 0; i < m; ++i)
        if (ray.zero.get(i) && perm[static_cast<std::size_t>(i)] < k) nz.set(perm[static_cast<std::size_t>(i)]);
      ray.zero = nz;
    }
  }
  kern.processed = k;

  for (int r = k; r < m; ++r) kern.insert_row(r);

  // Map back to the ambient coordinates and canonicalize.
  std::vector<RatVec> out;
  out.reserve(kern.rays.size());
  for (const auto& ray : kern.rays) {
    RatVec z(static_cast<std::size_t>(k0), Rational(0));
    if (rank < k0) {
      for (int j = 0; j < k; ++j)
        if (ray.z[static_cast<std::size_t>(j)] != 0)
          for (int t = 0; t < k0; ++t)
            if (work_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] != 0)
              z[static_cast<std::size_t>(t)] += Rational(ray.z[static_cast<std::size_t>(j)]) *
                                                work_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
    } else {
      for (int j = 0; j < k0; ++j) z[static_cast<std::size_t>(j)] = ray.z[static_cast<std::size_t>(j)];
    }
    RatVec h(static_cast<std::size_t>(d), Rational(0));
    for (int j = 0; j < k0; ++j)
      if (z[static_cast<std::size_t>(j)] != 0)
        for (int t = 0; t < d; ++t)
          if (nbasis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] != 0)
            h[static_cast<std::size_t>(t)] += z[static_cast<std::size_t>(j)] * nbasis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
    out.push_back(canonical_scaled(h));
  }
  std::sort(out.begin(), out.end(), [](const RatVec& a, const RatVec& b) { return compare_lex(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  result.rays.rays = std::move(out);
  return result;
}

VCone dd_enumerate(const HCone& cone, const DDConfig& config) {
  return dd_enumerate_full(cone, config).rays;
}

HCone facets_of(const VCone& vcone, const DDConfig& config) {
  // The dual cone {y : <r,y> >= 0 for all rays r} enumerated by the same
  // kernel; its extremal rays are the facet normals, its lineality flags
  // the equalities satisfied by the span of the rays.
  HCone dual;
  dual.space = vcone.space;
  for (const auto& r : vcone.rays) dual.inequalities.push_back({r, Rel::GeqZero});
  DDConfig cfg = config;
  cfg.allow_lineality = true;
  DDResult res = dd_enumerate_full(dual, cfg);
  HCone out;
  out.space = vcone.space;
  for (const auto& f : res.rays.rays) out.inequalities.push_back({f, Rel::GeqZero});
  for (const auto& l : res.lineality) out.equalities.push_back({l, Rel::EqZero});
  return out;
}

}  // namespace entrocone
