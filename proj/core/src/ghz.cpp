#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "entrocone/boxes.hpp"
#include "entrocone/errors.hpp"

namespace entrocone {

namespace {

// sin^2(pi t) with the argument reduced to [-1/2, 1/2] first; squared, so
// the half-period sign is irrelevant.
inline double sinpi_sq(double t) {
  const double r = t - std::nearbyint(t);
  const double s = std::sin(M_PI * r);
  return s * s;
}

// One probability cell; t = a+b+c + phase sum.
inline double fourier_prob(int d, double t) {
  const double u = t / d;
  const double ru = u - std::nearbyint(u);
  if (ru == 0.0) return 1.0 / (static_cast<double>(d) * d);
  const double num = sinpi_sq(t);
  const double den = sinpi_sq(u);
  const double dd = static_cast<double>(d) * d;
  return num / (dd * dd * den);
}

}  // namespace

Box ghz_box(int d, const PhaseConfig& phases) {
  if (d < 2) throw Error("ghz_box: need d >= 2");
  Box box;
  box.parties = 3;
  box.settings = {2, 2, 2};
  box.outcomes = {d, d, d};
  box.kind = ScalarKind::Float64;
  box.ftable.assign(box.table_size(), 0.0);
  std::size_t at = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        const double s = phases.alpha[0][static_cast<std::size_t>(x)] +
                         phases.alpha[1][static_cast<std::size_t>(y)] +
                         phases.alpha[2][static_cast<std::size_t>(z)];
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) box.ftable[at++] = fourier_prob(d, a + b + c + s);
      }
  return box;
}

// ---------------------------------------------------------------------------
// Witness evaluation specialized for the scan: only the marginals the
// witness touches are computed.
// ---------------------------------------------------------------------------

namespace {

struct WitnessTerm {
  double coeff;
  int vars[3];  // setting of A, B, C or -1 if the party is traced out
};

// Parses the registry form once into (coefficient, per-party setting) terms.
const std::vector<WitnessTerm>& slns_terms() {
  static const std::vector<WitnessTerm> terms = [] {
    const NamedInequality& slns = find_inequality("slns");
    const MarginalScenario sc = slns.scenario.build();
    SpacePtr space = sc.observable_space();
    const LinearForm f = slns.form(space);
    std::vector<WitnessTerm> out;
    for (int i = 0; i < space->dim(); ++i) {
      if (f.coeffs[static_cast<std::size_t>(i)] == 0) continue;
      WitnessTerm t{};
      t.coeff = f.coeffs[static_cast<std::size_t>(i)].convert_to<double>();
      t.vars[0] = t.vars[1] = t.vars[2] = -1;
      for (int v : set_members(space->set_at(i))) {
        const ObservableLabel& l = sc.labels[static_cast<std::size_t>(v)];
        t.vars[l.party] = l.setting;
      }
      out.push_back(t);
    }
    return out;
  }();
  return terms;
}

double entropy_of(const std::vector<double>& p) {
  double h = 0;
  for (double x : p)
    if (x > 0) h -= x * std::log2(x);
  return h;
}

}  // namespace

double ghz_witness_value(int d, const PhaseConfig& phases) {
  if (d < 2) throw Error("ghz_witness_value: need d >= 2");
  const auto& terms = slns_terms();
  double acc = 0;
  std::vector<double> joint(static_cast<std::size_t>(d) * d * d);
  std::vector<double> pair(static_cast<std::size_t>(d) * d);
  std::vector<double> single(static_cast<std::size_t>(d));
  for (const WitnessTerm& term : terms) {
    // Pick any containing context (free settings default to 0).
    const int x = term.vars[0] < 0 ? 0 : term.vars[0];
    const int y = term.vars[1] < 0 ? 0 : term.vars[1];
    const int z = term.vars[2] < 0 ? 0 : term.vars[2];
    const double s = phases.alpha[0][static_cast<std::size_t>(x)] +
                     phases.alpha[1][static_cast<std::size_t>(y)] +
                     phases.alpha[2][static_cast<std::size_t>(z)];
    std::size_t at = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) joint[at++] = fourier_prob(d, a + b + c + s);
    const bool keep[3] = {term.vars[0] >= 0, term.vars[1] >= 0, term.vars[2] >= 0};
    const int kept = (keep[0] ? 1 : 0) + (keep[1] ? 1 : 0) + (keep[2] ? 1 : 0);
    double h = 0;
    if (kept == 3) {
      h = entropy_of(joint);
    } else if (kept == 2) {
      std::fill(pair.begin(), pair.end(), 0.0);
      at = 0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int c = 0; c < d; ++c) {
            const int u = keep[0] ? a : b;
            const int v = keep[2] ? c : b;
            pair[static_cast<std::size_t>(u) * d + v] += joint[at++];
          }
      h = entropy_of(pair);
    } else {
      std::fill(single.begin(), single.end(), 0.0);
      at = 0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int c = 0; c < d; ++c) single[static_cast<std::size_t>(keep[0] ? a : (keep[1] ? b : c))] += joint[at++];
      h = entropy_of(single);
    }
    acc += term.coeff * h;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Multi-start Nelder-Mead over the six phases.
// ---------------------------------------------------------------------------

namespace {

using Point = std::array<double, 6>;

PhaseConfig to_phases(const Point& p) {
  PhaseConfig cfg;
  for (int i = 0; i < 6; ++i) cfg.alpha[static_cast<std::size_t>(i / 2)][static_cast<std::size_t>(i % 2)] =
      p[static_cast<std::size_t>(i)] - std::floor(p[static_cast<std::size_t>(i)]);
  return cfg;
}

struct NMResult {
  Point x;
  double value;
  double spread;
};

NMResult nelder_mead(int d, Point start, double step, int max_iter) {
  auto f = [&](const Point& p) { return ghz_witness_value(d, to_phases(p)); };
  constexpr int n = 6;
  std::array<Point, n + 1> simplex;
  std::array<double, n + 1> val;
  simplex[0] = start;
  val[0] = f(start);
  for (int i = 0; i < n; ++i) {
    simplex[static_cast<std::size_t>(i + 1)] = start;
    simplex[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] += step;
    val[static_cast<std::size_t>(i + 1)] = f(simplex[static_cast<std::size_t>(i + 1)]);
  }
  auto order = [&]() {
    std::array<int, n + 1> idx;
    for (int i = 0; i <= n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return val[static_cast<std::size_t>(a)] < val[static_cast<std::size_t>(b)]; });
    std::array<Point, n + 1> s2;
    std::array<double, n + 1> v2;
    for (int i = 0; i <= n; ++i) {
      s2[static_cast<std::size_t>(i)] = simplex[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      v2[static_cast<std::size_t>(i)] = val[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    simplex = s2;
    val = v2;
  };
  order();
  for (int it = 0; it < max_iter; ++it) {
    if (val[n] - val[0] < 1e-13) break;
    Point centroid{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[static_cast<std::size_t>(j)] += simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] / n;
    auto blend = [&](double t) {
      Point p;
      for (int j = 0; j < n; ++j)
        p[static_cast<std::size_t>(j)] = centroid[static_cast<std::size_t>(j)] +
                                         t * (centroid[static_cast<std::size_t>(j)] - simplex[n][static_cast<std::size_t>(j)]);
      return p;
    };
    const Point refl = blend(1.0);
    const double fr = f(refl);
    if (fr < val[0]) {
      const Point exp_p = blend(2.0);
      const double fe = f(exp_p);
      if (fe < fr) {
        simplex[n] = exp_p;
        val[n] = fe;
      } else {
        simplex[n] = refl;
        val[n] = fr;
      }
    } else if (fr < val[n - 1]) {
      simplex[n] = refl;
      val[n] = fr;
    } else {
      const Point con = blend(fr < val[n] ? 0.5 : -0.5);
      const double fc = f(con);
      if (fc < std::min(fr, val[n])) {
        simplex[n] = con;
        val[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          for (int j = 0; j < n; ++j)
            simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                simplex[0][static_cast<std::size_t>(j)] +
                0.5 * (simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - simplex[0][static_cast<std::size_t>(j)]);
          val[static_cast<std::size_t>(i)] = f(simplex[static_cast<std::size_t>(i)]);
        }
      }
    }
    order();
  }
  return {simplex[0], val[0], val[n] - val[0]};
}

}  // namespace

GhzOptimum optimize_ghz_violation(int d, const GhzOptimizerConfig& config) {
  if (d < 2) throw Error("optimize_ghz_violation: need d >= 2");
  std::vector<Point> starts;
  // Lattice corners on the second settings, base settings at zero.
  for (int mask = 0; mask < 8 && static_cast<int>(starts.size()) < config.starts; ++mask) {
    Point p{};
    p[1] = (mask & 1) ? 0.75 : 0.25;
    p[3] = (mask & 2) ? 0.75 : 0.25;
    p[5] = (mask & 4) ? 0.75 : 0.25;
    starts.push_back(p);
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  while (static_cast<int>(starts.size()) < config.starts) {
    Point p;
    for (int j = 0; j < 6; ++j) p[static_cast<std::size_t>(j)] = uni(rng);
    starts.push_back(p);
  }

  std::vector<NMResult> results(starts.size());
  const int nthreads = std::max(
      1, config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency()));
  auto run_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < starts.size(); i += stride) {
      NMResult coarse = nelder_mead(d, starts[i], 0.23, config.max_iterations);
      results[i] = nelder_mead(d, coarse.x, 0.01, config.max_iterations);  // polish
    }
  };
  if (nthreads == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(run_range, static_cast<std::size_t>(t), static_cast<std::size_t>(nthreads));
    for (auto& th : pool) th.join();
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value < results[best].value) best = i;
  GhzOptimum out;
  out.phases = to_phases(results[best].x);
  out.value = results[best].value;
  out.converged = results[best].spread < std::max(config.tolerance, 1e-9);
  return out;
}

}  // namespace entrocone
