// Offline oracle for the d=2 quantum-witness optimum: a dense grid over
// the phase space followed by a local polish. The probability table only
// depends on the per-context phase sums s(x,y,z) = u_x + v_y + w_z, which
// are invariant under (u,v,w) -> (u+a, v+b, w-a-b), so u_0 = v_0 = 0 is a
// gauge choice and the remaining four phases are swept on a 0.01 grid.
//
// The winning value is frozen into the acceptance suite as a regression
// constant; rerun  ./ghz_grid_oracle [step]  to reproduce it.

#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

#include "entrocone/boxes.hpp"

using namespace entrocone;

int main(int argc, char** argv) {
  const double step = argc > 1 ? std::atof(argv[1]) : 0.01;
  const int n = static_cast<int>(1.0 / step);
  const int d = 2;

  struct Best {
    double value = 1e9;
    PhaseConfig phases;
  };
  const int nthreads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Best> best(static_cast<std::size_t>(nthreads));

  auto worker = [&](int t) {
    Best& b = best[static_cast<std::size_t>(t)];
    for (int i1 = t; i1 < n; i1 += nthreads) {
      PhaseConfig cfg;
      cfg.alpha[0][0] = 0.0;
      cfg.alpha[1][0] = 0.0;
      cfg.alpha[0][1] = i1 * step;
      for (int i2 = 0; i2 < n; ++i2) {
        cfg.alpha[1][1] = i2 * step;
        for (int i3 = 0; i3 < n; ++i3) {
          cfg.alpha[2][0] = i3 * step;
          for (int i4 = 0; i4 < n; ++i4) {
            cfg.alpha[2][1] = i4 * step;
            const double v = ghz_witness_value(d, cfg);
            if (v < b.value) {
              b.value = v;
              b.phases = cfg;
            }
          }
        }
      }
      std::fprintf(stderr, "slice %d/%d done (best %.8f)\n", i1 + 1, n, b.value);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
  for (auto& th : pool) th.join();

  Best global;
  for (const auto& b : best)
    if (b.value < global.value) global = b;

  std::printf("grid best: %.12f at phases", global.value);
  for (const auto& row : global.phases.alpha)
    for (double x : row) std::printf(" %.4f", x);
  std::printf("\n");

  // Polish with the library optimizer seeded at the grid argmin.
  GhzOptimizerConfig cfg;
  cfg.starts = 1;
  cfg.threads = 1;
  // A single start at the grid point: shrink the lattice/random machinery
  // by running Nelder-Mead from the grid argmin via a tiny local scan.
  double refined = global.value;
  PhaseConfig at = global.phases;
  for (double h : {0.003, 0.001, 0.0003, 0.0001, 0.00003, 0.00001}) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int p = 0; p < 3; ++p) {
        for (int m = 0; m < 2; ++m) {
          for (double dir : {-1.0, 1.0}) {
            PhaseConfig trial = at;
            trial.alpha[static_cast<std::size_t>(p)][static_cast<std::size_t>(m)] += dir * h;
            const double v = ghz_witness_value(2, trial);
            if (v < refined) {
              refined = v;
              at = trial;
              improved = true;
            }
          }
        }
      }
    }
  }
  std::printf("polished: %.12f\n", refined);
  return 0;
}
