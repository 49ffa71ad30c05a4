#include "entrocone/lp.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "entrocone/errors.hpp"

namespace entrocone {

namespace {

// ---------------------------------------------------------------------------
// Equality handling. Cone equalities and pins form an affine system
// E h + beta = 0 (beta nonzero only for pins). We reduce it once, keeping
// the combination of original rows behind every reduced row so that Farkas
// and validity certificates can be expressed over the caller's rows.
// ---------------------------------------------------------------------------

struct AffineEq {
  RatVec a;
  Rational beta;  // row asserts <a,h> + beta = 0
  RowRef ref;
};

struct EqElimination {
  bool contradiction = false;
  std::vector<std::pair<RowRef, Rational>> contradiction_combo;
  Rational contradiction_beta = 0;

  RatVec x0;                    // one solution of the affine system
  std::vector<RatVec> basis;    // null-space basis, d x k (columns)
  std::vector<RatVec> rref;     // reduced rows over d coords
  std::vector<Rational> rref_beta;
  std::vector<std::vector<std::pair<RowRef, Rational>>> combo;
  std::vector<int> pivot_col;

  int dim = 0;

  // Writes w (required to lie in the row space of the equalities) as a
  // combination of original equality/pin rows.
  std::vector<std::pair<RowRef, Rational>> express(RatVec w) const {
    std::vector<std::pair<RowRef, Rational>> terms;
    for (std::size_t r = 0; r < rref.size(); ++r) {
      const Rational coef = w[static_cast<std::size_t>(pivot_col[r])];
      if (coef == 0) continue;
      for (std::size_t j = 0; j < w.size(); ++j)
        if (rref[r][j] != 0) w[j] -= coef * rref[r][j];
      for (const auto& [ref, mult] : combo[r]) {
        if (coef * mult != 0) terms.emplace_back(ref, coef * mult);
      }
    }
    for (const auto& x : w)
      if (x != 0) throw Error("internal: residual outside equality row space");
    // Merge duplicate refs for a tidy certificate.
    std::sort(terms.begin(), terms.end(), [](const auto& p, const auto& q) {
      if (p.first.kind != q.first.kind) return p.first.kind < q.first.kind;
      return p.first.index < q.first.index;
    });
    std::vector<std::pair<RowRef, Rational>> merged;
    for (auto& t : terms) {
      if (!merged.empty() && merged.back().first == t.first)
        merged.back().second += t.second;
      else
        merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const auto& t) { return t.second == 0; });
    return merged;
  }
};

EqElimination eliminate_equalities(const HCone& cone, const Pins& pins) {
  const int d = cone.dim();
  std::vector<AffineEq> rows;
  for (std::size_t i = 0; i < cone.equalities.size(); ++i)
    rows.push_back({cone.equalities[i].coeffs, Rational(0),
                    RowRef{RowRef::Equality, static_cast<int>(i)}});
  for (std::size_t i = 0; i < pins.values.size(); ++i) {
    const auto& [coord, value] = pins.values[static_cast<std::size_t>(i)];
    if (coord < 0 || coord >= d) throw DimensionMismatchError("pin coordinate out of range");
    RatVec a(static_cast<std::size_t>(d), Rational(0));
    a[static_cast<std::size_t>(coord)] = 1;
    rows.push_back({std::move(a), -value, RowRef{RowRef::Pin, static_cast<int>(i)}});
  }

  EqElimination out;
  out.dim = d;
  // Gaussian elimination with combination tracking.
  struct Work {
    RatVec a;
    Rational beta;
    std::vector<std::pair<RowRef, Rational>> combo;
  };
  std::vector<Work> work;
  work.reserve(rows.size());
  for (auto& r : rows) work.push_back({std::move(r.a), r.beta, {{r.ref, Rational(1)}}});

  std::vector<bool> used(work.size(), false);
  std::vector<std::pair<int, int>> pivot_of;  // (row, col), in pivot order
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (!used[r] && work[r].a[static_cast<std::size_t>(col)] != 0) {
        pivot = static_cast<int>(r);
        break;
      }
    }
    if (pivot < 0) continue;
    used[static_cast<std::size_t>(pivot)] = true;
    pivot_of.emplace_back(pivot, col);
    Work& p = work[static_cast<std::size_t>(pivot)];
    const Rational inv = Rational(1) / p.a[static_cast<std::size_t>(col)];
    for (auto& x : p.a) x *= inv;
    p.beta *= inv;
    for (auto& t : p.combo) t.second *= inv;
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (static_cast<int>(r) == pivot) continue;
      Work& w = work[r];
      const Rational f = w.a[static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int j = 0; j < d; ++j)
        if (p.a[static_cast<std::size_t>(j)] != 0)
          w.a[static_cast<std::size_t>(j)] -= f * p.a[static_cast<std::size_t>(j)];
      w.beta -= f * p.beta;
      for (const auto& t : p.combo) w.combo.emplace_back(t.first, -f * t.second);
    }
  }
  // Collect the reduced rows only now: later pivots keep editing earlier
  // rows, so snapshots taken inside the loop would go stale.
  for (const auto& [row, col] : pivot_of) {
    out.rref.push_back(work[static_cast<std::size_t>(row)].a);
    out.rref_beta.push_back(work[static_cast<std::size_t>(row)].beta);
    out.pivot_col.push_back(col);
    out.combo.push_back(work[static_cast<std::size_t>(row)].combo);
  }

  // Any unused row reduced to 0 = beta with beta != 0 is a contradiction.
  for (std::size_t r = 0; r < work.size(); ++r) {
    if (used[r]) continue;
    if (work[r].beta != 0) {
      out.contradiction = true;
      // Normalize so the combined row reads 0 + beta >= 0 with beta < 0.
      Rational s = work[r].beta < 0 ? Rational(1) : Rational(-1);
      out.contradiction_beta = s * work[r].beta;
      for (auto& t : work[r].combo) t.second *= s;
      out.contradiction_combo = std::move(work[r].combo);
      return out;
    }
  }

  // Particular solution (free coordinates zero) and null-space basis.
  out.x0.assign(static_cast<std::size_t>(d), Rational(0));
  std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
  for (std::size_t r = 0; r < out.rref.size(); ++r) {
    is_pivot[static_cast<std::size_t>(out.pivot_col[r])] = true;
    out.x0[static_cast<std::size_t>(out.pivot_col[r])] = -out.rref_beta[r];
  }
  for (int f = 0; f < d; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    RatVec v(static_cast<std::size_t>(d), Rational(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < out.rref.size(); ++r)
      v[static_cast<std::size_t>(out.pivot_col[r])] = -out.rref[r][static_cast<std::size_t>(f)];
    out.basis.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standard-form exact simplex: min c'y  s.t.  A y = b, y >= 0.
// Bland's rule for entering and leaving variables; artificial columns double
// as an explicit B^{-1}, from which simplex multipliers are read off.
// ---------------------------------------------------------------------------

struct StdResult {
  enum Status { Optimal, Infeasible, Unbounded } status = Optimal;
  RatVec y;         // Optimal: primal solution
  Rational value{};  // Optimal: objective value
  RatVec pi;        // Optimal: simplex multipliers (A' pi <= c, pi'b = value)
  RatVec farkas;    // Infeasible: pi with pi'A <= 0, pi'b > 0
  RatVec ray;       // Unbounded: y-space direction, A ray = 0, ray >= 0, c'ray < 0
};

class StdSimplex {
 public:
  StdSimplex(std::vector<RatVec> a_rows, RatVec b, RatVec c)
      : m_(static_cast<int>(c.size())), k_(static_cast<int>(b.size())), c_(std::move(c)) {
    signs_.assign(static_cast<std::size_t>(k_), Rational(1));
    for (int r = 0; r < k_; ++r) {
      if (b[static_cast<std::size_t>(r)] < 0) {
        for (auto& x : a_rows[static_cast<std::size_t>(r)]) x = -x;
        b[static_cast<std::size_t>(r)] = -b[static_cast<std::size_t>(r)];
        signs_[static_cast<std::size_t>(r)] = -1;
      }
    }
    tab_.assign(static_cast<std::size_t>(k_), RatVec());
    for (int r = 0; r < k_; ++r) {
      RatVec& row = tab_[static_cast<std::size_t>(r)];
      row.assign(static_cast<std::size_t>(m_ + k_ + 1), Rational(0));
      for (int j = 0; j < m_; ++j) row[static_cast<std::size_t>(j)] = a_rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
      row[static_cast<std::size_t>(m_ + r)] = 1;
      row[static_cast<std::size_t>(m_ + k_)] = b[static_cast<std::size_t>(r)];
      basis_.push_back(m_ + r);
    }
  }

  StdResult solve() {
    // Phase I: minimize the artificial sum.
    RatVec obj(static_cast<std::size_t>(m_ + k_ + 1), Rational(0));
    for (int j = 0; j < m_ + k_; ++j) {
      Rational z = 0;
      for (int r = 0; r < k_; ++r) z += at(r, j);  // artificial costs are all 1
      obj[static_cast<std::size_t>(j)] = (j >= m_ ? Rational(1) : Rational(0)) - z;
    }
    Rational phase1 = 0;
    for (int r = 0; r < k_; ++r) phase1 += rhs(r);
    pivot_loop(obj, phase1, /*allow_artificial=*/false, nullptr);

    if (phase1 != 0) {
      // Rows negated at setup flip their multiplier back.
      StdResult res;
      res.status = StdResult::Infeasible;
      res.farkas.assign(static_cast<std::size_t>(k_), Rational(0));
      for (int r = 0; r < k_; ++r)
        res.farkas[static_cast<std::size_t>(r)] =
            signs_[static_cast<std::size_t>(r)] * (Rational(1) - obj[static_cast<std::size_t>(m_ + r)]);
      return res;
    }

    // Drive leftover artificials out of the basis; drop redundant rows.
    for (int r = 0; r < k_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < m_ || dead_[static_cast<std::size_t>(r)]) continue;
      int enter = -1;
      for (int j = 0; j < m_; ++j) {
        if (at(r, j) != 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) {
        dead_[static_cast<std::size_t>(r)] = true;  // redundant equation
      } else {
        do_pivot(r, enter, obj);
      }
    }

    // Phase II.
    RatVec obj2(static_cast<std::size_t>(m_ + k_ + 1), Rational(0));
    Rational value = 0;
    for (int r = 0; r < k_; ++r) {
      if (dead_[static_cast<std::size_t>(r)]) continue;
      const int bv = basis_[static_cast<std::size_t>(r)];
      const Rational cb = bv < m_ ? c_[static_cast<std::size_t>(bv)] : Rational(0);
      if (cb == 0) continue;
      for (int j = 0; j < m_ + k_; ++j) obj2[static_cast<std::size_t>(j)] -= cb * at(r, j);
      value += cb * rhs(r);
    }
    for (int j = 0; j < m_; ++j) obj2[static_cast<std::size_t>(j)] += c_[static_cast<std::size_t>(j)];

    int unbounded_col = -1;
    pivot_loop(obj2, value, /*allow_artificial=*/false, &unbounded_col);

    StdResult res;
    if (unbounded_col >= 0) {
      res.status = StdResult::Unbounded;
      res.ray.assign(static_cast<std::size_t>(m_), Rational(0));
      res.ray[static_cast<std::size_t>(unbounded_col)] = 1;
      for (int r = 0; r < k_; ++r) {
        if (dead_[static_cast<std::size_t>(r)]) continue;
        if (basis_[static_cast<std::size_t>(r)] < m_)
          res.ray[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = -at(r, unbounded_col);
      }
      return res;
    }
    res.status = StdResult::Optimal;
    res.value = value;
    res.y.assign(static_cast<std::size_t>(m_), Rational(0));
    for (int r = 0; r < k_; ++r) {
      if (dead_[static_cast<std::size_t>(r)]) continue;
      if (basis_[static_cast<std::size_t>(r)] < m_)
        res.y[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = rhs(r);
    }
    res.pi.assign(static_cast<std::size_t>(k_), Rational(0));
    for (int r = 0; r < k_; ++r)
      res.pi[static_cast<std::size_t>(r)] =
          signs_[static_cast<std::size_t>(r)] * -obj2[static_cast<std::size_t>(m_ + r)];
    return res;
  }

 private:
  Rational& at(int r, int j) { return tab_[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]; }
  Rational& rhs(int r) { return tab_[static_cast<std::size_t>(r)][static_cast<std::size_t>(m_ + k_)]; }

  // Bland: entering = lowest-index improving column; leaving = minimum
  // ratio, ties by lowest basis index. Objective row and value are updated
  // in place. If min-ratio fails (phase II), *unbounded_col is set.
  void pivot_loop(RatVec& obj, Rational& value, bool allow_artificial, int* unbounded_col) {
    const int limit = allow_artificial ? m_ + k_ : m_;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (obj[static_cast<std::size_t>(j)] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      Rational best_num, best_den;
      for (int r = 0; r < k_; ++r) {
        if (dead_[static_cast<std::size_t>(r)]) continue;
        const Rational& piv = at(r, enter);
        if (piv <= 0) continue;
        const Rational& num = rhs(r);
        // Compare num/piv < best_num/best_den without division.
        if (leave < 0 || num * best_den < best_num * piv ||
            (num * best_den == best_num * piv &&
             basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = r;
          best_num = num;
          best_den = piv;
        }
      }
      if (leave < 0) {
        if (unbounded_col != nullptr) {
          *unbounded_col = enter;
          return;
        }
        throw Error("internal: phase-I simplex unbounded");
      }
      value += obj[static_cast<std::size_t>(enter)] * rhs(leave) / at(leave, enter);
      do_pivot(leave, enter, obj);
    }
  }

  void do_pivot(int row, int col, RatVec& obj) {
    RatVec& prow = tab_[static_cast<std::size_t>(row)];
    const Rational inv = Rational(1) / prow[static_cast<std::size_t>(col)];
    for (auto& x : prow) x *= inv;
    for (int r = 0; r < k_; ++r) {
      if (r == row || dead_[static_cast<std::size_t>(r)]) continue;
      RatVec& wrow = tab_[static_cast<std::size_t>(r)];
      const Rational f = wrow[static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (std::size_t j = 0; j < wrow.size(); ++j)
        if (prow[j] != 0) wrow[j] -= f * prow[j];
    }
    const Rational fo = obj[static_cast<std::size_t>(col)];
    if (fo != 0) {
      for (std::size_t j = 0; j + 1 < prow.size(); ++j)
        if (prow[j] != 0) obj[j] -= fo * prow[j];
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  int m_, k_;
  RatVec c_;
  RatVec signs_;
  std::vector<RatVec> tab_;
  std::vector<int> basis_;
  std::vector<bool> dead_ = std::vector<bool>(static_cast<std::size_t>(k_), false);
};

Certificate make_infeasibility_cert(const HCone& cone,
                                    std::vector<std::pair<RowRef, Rational>> terms,
                                    const Rational& beta) {
  Certificate cert;
  cert.terms = std::move(terms);
  cert.target.coeffs.assign(static_cast<std::size_t>(cone.dim()), Rational(0));
  cert.target.rel = Rel::GeqZero;
  cert.constant = beta;  // < 0: the combination reads 0 + beta >= 0
  return cert;
}

}  // namespace

LPOutcome lp_check(const HCone& cone, const LinearForm& objective, const Pins& pins) {
  cone.check_consistent();
  const int d = cone.dim();
  if (objective.dim() != d) throw DimensionMismatchError("objective dimension mismatch");

  EqElimination eq = eliminate_equalities(cone, pins);
  LPOutcome out;
  if (eq.contradiction) {
    out.status = LPStatus::Infeasible;
    out.farkas = make_infeasibility_cert(cone, eq.contradiction_combo, eq.contradiction_beta);
    if (!verify_certificate(*out.farkas, cone, pins) || out.farkas->constant >= 0)
      throw Error("internal: bad equality Farkas certificate");
    return out;
  }

  const int k = static_cast<int>(eq.basis.size());
  const int m = static_cast<int>(cone.inequalities.size());

  // Reduced data: row i becomes  <a_i, N> u >= rhs_i  with rhs_i = -<a_i, x0>.
  std::vector<RatVec> reduced(static_cast<std::size_t>(m));
  RatVec rhs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const RatVec& a = cone.inequalities[static_cast<std::size_t>(i)].coeffs;
    RatVec& red = reduced[static_cast<std::size_t>(i)];
    red.assign(static_cast<std::size_t>(k), Rational(0));
    for (int j = 0; j < k; ++j) {
      Rational acc = 0;
      const RatVec& nj = eq.basis[static_cast<std::size_t>(j)];
      for (int t = 0; t < d; ++t)
        if (a[static_cast<std::size_t>(t)] != 0 && nj[static_cast<std::size_t>(t)] != 0)
          acc += a[static_cast<std::size_t>(t)] * nj[static_cast<std::size_t>(t)];
      red[static_cast<std::size_t>(j)] = acc;
    }
    Rational v = 0;
    for (int t = 0; t < d; ++t)
      if (a[static_cast<std::size_t>(t)] != 0) v += a[static_cast<std::size_t>(t)] * eq.x0[static_cast<std::size_t>(t)];
    rhs[static_cast<std::size_t>(i)] = -v;
  }
  RatVec cred(static_cast<std::size_t>(k), Rational(0));
  Rational c0 = 0;
  for (int j = 0; j < k; ++j) {
    Rational acc = 0;
    for (int t = 0; t < d; ++t)
      if (objective.coeffs[static_cast<std::size_t>(t)] != 0)
        acc += objective.coeffs[static_cast<std::size_t>(t)] * eq.basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
    cred[static_cast<std::size_t>(j)] = acc;
  }
  for (int t = 0; t < d; ++t)
    if (objective.coeffs[static_cast<std::size_t>(t)] != 0)
      c0 += objective.coeffs[static_cast<std::size_t>(t)] * eq.x0[static_cast<std::size_t>(t)];

  auto attach_validity = [&](const RatVec& y) {
    Certificate cert;
    RatVec w = objective.coeffs;
    for (int i = 0; i < m; ++i) {
      const Rational& yi = y[static_cast<std::size_t>(i)];
      if (yi == 0) continue;
      cert.terms.push_back({RowRef{RowRef::Inequality, i}, yi});
      const RatVec& a = cone.inequalities[static_cast<std::size_t>(i)].coeffs;
      for (int t = 0; t < d; ++t)
        if (a[static_cast<std::size_t>(t)] != 0) w[static_cast<std::size_t>(t)] -= yi * a[static_cast<std::size_t>(t)];
    }
    for (auto& t : eq.express(std::move(w))) cert.terms.push_back(t);
    cert.target = objective;
    cert.target.rel = Rel::GeqZero;
    Rational constant = 0;
    for (const auto& [ref, mult] : cert.terms)
      if (ref.kind == RowRef::Pin)
        constant -= mult * pins.values[static_cast<std::size_t>(ref.index)].second;
    cert.constant = constant;
    if (!verify_certificate(cert, cone, pins)) throw Error("internal: bad validity certificate");
    return cert;
  };

  auto make_farkas = [&](const RatVec& eta) {
    // eta >= 0 over inequality rows with sum(eta_i a_i) in the equality row
    // space and sum(eta_i rhs_i) > 0; the equality part closes the identity.
    std::vector<std::pair<RowRef, Rational>> terms;
    RatVec w(static_cast<std::size_t>(d), Rational(0));
    for (int i = 0; i < m; ++i) {
      const Rational& e = eta[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      terms.push_back({RowRef{RowRef::Inequality, i}, e});
      const RatVec& a = cone.inequalities[static_cast<std::size_t>(i)].coeffs;
      for (int t = 0; t < d; ++t)
        if (a[static_cast<std::size_t>(t)] != 0) w[static_cast<std::size_t>(t)] += e * a[static_cast<std::size_t>(t)];
    }
    for (auto& x : w) x = -x;
    for (auto& t : eq.express(std::move(w))) terms.push_back(t);
    Rational beta = 0;
    for (const auto& [ref, mult] : terms)
      if (ref.kind == RowRef::Pin) beta -= mult * pins.values[static_cast<std::size_t>(ref.index)].second;
    Certificate cert = make_infeasibility_cert(cone, std::move(terms), beta);
    if (!verify_certificate(cert, cone, pins) || cert.constant >= 0)
      throw Error("internal: bad Farkas certificate");
    return cert;
  };

  if (k == 0) {
    // Unique candidate point x0.
    int violated = -1;
    for (int i = 0; i < m; ++i) {
      if (rhs[static_cast<std::size_t>(i)] > 0) {  // a_i . x0 < 0
        violated = i;
        break;
      }
    }
    if (violated < 0) {
      out.status = LPStatus::Optimal;
      out.minimum = c0;
      RatVec zero(static_cast<std::size_t>(m), Rational(0));
      out.validity = attach_validity(zero);
      return out;
    }
    RatVec eta(static_cast<std::size_t>(m), Rational(0));
    eta[static_cast<std::size_t>(violated)] = 1;
    out.status = LPStatus::Infeasible;
    out.farkas = make_farkas(eta);
    return out;
  }

  // Dual: max rhs'y s.t. sum y_i reduced_i = cred, y >= 0.
  std::vector<RatVec> a_rows(static_cast<std::size_t>(k), RatVec(static_cast<std::size_t>(m), Rational(0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < k; ++j)
      a_rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = reduced[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  RatVec cneg(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) cneg[static_cast<std::size_t>(i)] = -rhs[static_cast<std::size_t>(i)];

  StdResult dual = StdSimplex(a_rows, cred, cneg).solve();

  switch (dual.status) {
    case StdResult::Optimal: {
      out.status = LPStatus::Optimal;
      out.minimum = -dual.value + c0;
      out.validity = attach_validity(dual.y);
      return out;
    }
    case StdResult::Unbounded: {
      out.status = LPStatus::Infeasible;
      out.farkas = make_farkas(dual.ray);
      return out;
    }
    case StdResult::Infeasible: {
      // No y >= 0 reproduces the objective: the primal cannot be bounded.
      // dual.farkas is r with <reduced_i, r> <= 0 for all i and <cred, r> > 0;
      // -r is a feasible recession direction improving the objective.
      RatVec dir(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) dir[static_cast<std::size_t>(j)] = -dual.farkas[static_cast<std::size_t>(j)];
      // Decide primal feasibility: max rhs'y over sum y_i reduced_i = 0.
      RatVec zero_b(static_cast<std::size_t>(k), Rational(0));
      StdResult feas = StdSimplex(a_rows, zero_b, cneg).solve();
      if (feas.status == StdResult::Unbounded) {
        out.status = LPStatus::Infeasible;
        out.farkas = make_farkas(feas.ray);
        return out;
      }
      if (feas.status != StdResult::Optimal || feas.value != 0)
        throw Error("internal: feasibility subproblem must close at zero");
      out.status = LPStatus::Unbounded;
      RatVec witness(static_cast<std::size_t>(d), Rational(0));
      for (int j = 0; j < k; ++j) {
        if (dir[static_cast<std::size_t>(j)] == 0) continue;
        const RatVec& nj = eq.basis[static_cast<std::size_t>(j)];
        for (int t = 0; t < d; ++t)
          if (nj[static_cast<std::size_t>(t)] != 0)
            witness[static_cast<std::size_t>(t)] += dir[static_cast<std::size_t>(j)] * nj[static_cast<std::size_t>(t)];
      }
      if (objective.eval(witness) >= 0) throw Error("internal: unbounded witness not improving");
      out.witness = canonical_scaled(witness);
      return out;
    }
  }
  throw Error("internal: unreachable LP status");
}

LPOutcome lp_feasible(const HCone& cone, const Pins& pins) {
  LinearForm zero;
  zero.coeffs.assign(static_cast<std::size_t>(cone.dim()), Rational(0));
  zero.rel = Rel::GeqZero;
  return lp_check(cone, zero, pins);
}

RawOutcome lp_solve_raw(int nvars, const std::vector<RawRow>& rows, const RatVec& objective) {
  const int d = nvars;
  // Plain Gauss-Jordan on the equality rows (no certificate tracking).
  std::vector<RatVec> eq_a;
  RatVec eq_b;
  for (const auto& r : rows) {
    if (r.rel != Rel::EqZero) continue;
    if (static_cast<int>(r.coeffs.size()) != d) throw DimensionMismatchError("raw row length");
    eq_a.push_back(r.coeffs);
    eq_b.push_back(r.constant);
  }
  std::vector<int> pivots;
  std::vector<bool> used(eq_a.size(), false);
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (std::size_t r = 0; r < eq_a.size(); ++r)
      if (!used[r] && eq_a[r][static_cast<std::size_t>(col)] != 0) {
        pivot = static_cast<int>(r);
        break;
      }
    if (pivot < 0) continue;
    used[static_cast<std::size_t>(pivot)] = true;
    pivots.push_back(pivot * (d + 1) + col);  // encode (row, col)
    RatVec& p = eq_a[static_cast<std::size_t>(pivot)];
    const Rational inv = Rational(1) / p[static_cast<std::size_t>(col)];
    for (auto& x : p) x *= inv;
    eq_b[static_cast<std::size_t>(pivot)] *= inv;
    for (std::size_t r = 0; r < eq_a.size(); ++r) {
      if (static_cast<int>(r) == pivot) continue;
      const Rational f = eq_a[r][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int j = 0; j < d; ++j)
        if (p[static_cast<std::size_t>(j)] != 0) eq_a[r][static_cast<std::size_t>(j)] -= f * p[static_cast<std::size_t>(j)];
      eq_b[r] -= f * eq_b[static_cast<std::size_t>(pivot)];
    }
  }
  for (std::size_t r = 0; r < eq_a.size(); ++r)
    if (!used[r] && eq_b[r] != 0) return {LPStatus::Infeasible, 0};

  std::vector<bool> is_pivot_col(static_cast<std::size_t>(d), false);
  RatVec x0(static_cast<std::size_t>(d), Rational(0));
  for (int enc : pivots) {
    const int row = enc / (d + 1), col = enc % (d + 1);
    is_pivot_col[static_cast<std::size_t>(col)] = true;
    // Row asserts <a,x> + b = 0 with a normalized at col: x[col] = -b - free part.
    x0[static_cast<std::size_t>(col)] = -eq_b[static_cast<std::size_t>(row)];
  }
  std::vector<RatVec> basis;
  for (int f = 0; f < d; ++f) {
    if (is_pivot_col[static_cast<std::size_t>(f)]) continue;
    RatVec v(static_cast<std::size_t>(d), Rational(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (int enc : pivots) {
      const int row = enc / (d + 1), col = enc % (d + 1);
      v[static_cast<std::size_t>(col)] = -eq_a[static_cast<std::size_t>(row)][static_cast<std::size_t>(f)];
    }
    basis.push_back(std::move(v));
  }
  const int k = static_cast<int>(basis.size());

  std::vector<RatVec> reduced;
  RatVec rhs;
  for (const auto& r : rows) {
    if (r.rel != Rel::GeqZero) continue;
    if (static_cast<int>(r.coeffs.size()) != d) throw DimensionMismatchError("raw row length");
    RatVec red(static_cast<std::size_t>(k), Rational(0));
    for (int j = 0; j < k; ++j) {
      Rational acc = 0;
      for (int t = 0; t < d; ++t)
        if (r.coeffs[static_cast<std::size_t>(t)] != 0 && basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] != 0)
          acc += r.coeffs[static_cast<std::size_t>(t)] * basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
      red[static_cast<std::size_t>(j)] = acc;
    }
    Rational v = r.constant;
    for (int t = 0; t < d; ++t)
      if (r.coeffs[static_cast<std::size_t>(t)] != 0) v += r.coeffs[static_cast<std::size_t>(t)] * x0[static_cast<std::size_t>(t)];
    reduced.push_back(std::move(red));
    rhs.push_back(-v);
  }
  RatVec cred(static_cast<std::size_t>(k), Rational(0));
  Rational c0 = 0;
  for (int j = 0; j < k; ++j)
    for (int t = 0; t < d; ++t)
      if (objective[static_cast<std::size_t>(t)] != 0 && basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] != 0)
        cred[static_cast<std::size_t>(j)] += objective[static_cast<std::size_t>(t)] * basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
  for (int t = 0; t < d; ++t)
    if (objective[static_cast<std::size_t>(t)] != 0) c0 += objective[static_cast<std::size_t>(t)] * x0[static_cast<std::size_t>(t)];

  const int m = static_cast<int>(reduced.size());
  if (k == 0) {
    for (int i = 0; i < m; ++i)
      if (rhs[static_cast<std::size_t>(i)] > 0) return {LPStatus::Infeasible, 0};
    return {LPStatus::Optimal, c0};
  }
  std::vector<RatVec> a_rows(static_cast<std::size_t>(k), RatVec(static_cast<std::size_t>(m), Rational(0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < k; ++j)
      a_rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = reduced[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  RatVec cneg(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) cneg[static_cast<std::size_t>(i)] = -rhs[static_cast<std::size_t>(i)];

  StdResult dual = StdSimplex(a_rows, cred, cneg).solve();
  switch (dual.status) {
    case StdResult::Optimal:
      return {LPStatus::Optimal, -dual.value + c0};
    case StdResult::Unbounded:
      return {LPStatus::Infeasible, 0};
    case StdResult::Infeasible: {
      RatVec zero_b(static_cast<std::size_t>(k), Rational(0));
      StdResult feas = StdSimplex(a_rows, zero_b, cneg).solve();
      if (feas.status == StdResult::Unbounded) return {LPStatus::Infeasible, 0};
      return {LPStatus::Unbounded, 0};
    }
  }
  throw Error("internal: unreachable raw LP status");
}

}  // namespace entrocone
