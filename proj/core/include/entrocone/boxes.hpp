#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "entrocone/classify.hpp"
#include "entrocone/entropy.hpp"
#include "entrocone/rational.hpp"
#include "entrocone/scenarios.hpp"

namespace entrocone {

/// Conditional probability table p(outcomes | settings) over labeled
/// parties. Rational tables carry the named discrete boxes exactly;
/// quantum boxes are Float64.
struct Box {
  int parties = 0;
  std::vector<int> settings;  // per party
  std::vector<int> outcomes;  // per party
  ScalarKind kind = ScalarKind::Rational;
  std::vector<Rational> rtable;
  std::vector<double> ftable;

  std::size_t table_size() const;
  std::size_t index(const std::vector<int>& setting, const std::vector<int>& outcome) const;
  Rational rat_at(const std::vector<int>& setting, const std::vector<int>& outcome) const;
  double at(const std::vector<int>& setting, const std::vector<int>& outcome) const;

  bool same_shape(const Box& other) const;
  /// Exact normalization/nonnegativity for rational tables, 1e-12 for
  /// floating ones. Throws on violation.
  void check() const;
};

/// Registry ids: pr, pc2, xyz, nltri, pc3, biloc_activation,
/// genuine_nonbilocal. All tables are exact rationals.
Box named_box(const std::string& id);
std::vector<std::string> named_box_ids();

/// Pointwise convex combination. Weights must be nonnegative and sum to 1.
Box mix(const std::vector<Box>& boxes, const std::vector<Rational>& weights);
Box mix(const std::vector<Box>& boxes, const std::vector<double>& weights);

/// The uniform box of the same shape.
Box uniform_like(const Box& box);

/// mix(box, uniform, v): v = 1 is the box itself, v = 0 is white noise.
Box white_noise(const Box& box, double visibility);
Box white_noise(const Box& box, const Rational& visibility);

/// Measurement phases for the d-outcome three-party Fourier box, one per
/// (party, setting); canonical domain [0, 1).
struct PhaseConfig {
  std::array<std::array<double, 2>, 3> alpha{{{0, 0}, {0, 0}, {0, 0}}};
};

/// Probability table p(a,b,c|x,y,z) = sin^2(pi t)/(d^4 sin^2(pi t / d))
/// with t = a+b+c+alpha_1x+alpha_2y+alpha_3z; the removable singularity at
/// t/d integral takes its limit value 1/d^2.
Box ghz_box(int d, const PhaseConfig& phases);

/// Shannon entropies (base 2) of all context marginals. Throws
/// SignalingBoxError if contexts disagree on a shared marginal beyond
/// 1e-12.
EntropyVector entropy_vector(const Box& box, const MarginalScenario& scenario);

/// Exact path for tables whose marginal probabilities are all powers of
/// two (or zero); throws otherwise.
EntropyVector entropy_vector_exact(const Box& box, const MarginalScenario& scenario);

/// <inequality coefficients, entropy_vector(box)> in the inequality's
/// conventional orientation.
double evaluate(const NamedInequality& ineq, const Box& box);
Rational evaluate_exact(const NamedInequality& ineq, const Box& box);

struct GhzOptimizerConfig {
  int starts = 24;  // lattice corners plus seeded random starts
  int max_iterations = 400;
  std::uint64_t seed = 1;
  int threads = 0;
  double tolerance = 1e-12;
};

struct GhzOptimum {
  PhaseConfig phases;
  double value = 0;
  bool converged = true;
};

/// Minimizes the hybrid local-nonsignaling witness over the measurement
/// phases by multi-start Nelder-Mead descent; negative values certify a
/// violation. Deterministic for a fixed seed.
GhzOptimum optimize_ghz_violation(int d, const GhzOptimizerConfig& config = {});

/// The scan objective (exposed for tests and the grid oracle).
double ghz_witness_value(int d, const PhaseConfig& phases);

}  // namespace entrocone
