#pragma once

#include <string>
#include <vector>

#include "entrocone/cone.hpp"
#include "entrocone/entropy.hpp"
#include "entrocone/space.hpp"

namespace entrocone {

/// Jointly measurable variable subsets (contexts) over labeled observables.
struct MarginalScenario {
  std::vector<std::string> variables;      // ordered
  std::vector<ObservableLabel> labels;     // parallel to variables
  std::vector<VarSet> contexts;            // maximal, cover all variables

  int num_parties = 0;
  std::vector<int> settings;  // per party

  /// All subsets of all contexts (the observable coordinates).
  SpacePtr observable_space() const;
  /// The full 2^n lattice over all observables.
  SpacePtr full_space() const;

  VarSet party_vars(int party) const;
  void check() const;
};

enum class ScenarioKind : std::uint8_t { Bell, Bilocal, InformationCausality };
enum class BilocalMode : std::uint8_t { Observable, Extended };

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::Bell;
  std::vector<int> settings;  // per party; empty for IC
  BilocalMode bilocal_mode = BilocalMode::Observable;

  MarginalScenario build() const;
};

/// One context per choice of one setting for each party. Parties with a
/// single setting render without the setting suffix ("B" not "B0").
MarginalScenario bell_scenario(int parties, const std::vector<int>& settings);

/// Bilocal network: Bell contexts plus the designated end parties A and C
/// (first and last). Requires >= 3 parties.
MarginalScenario bilocal_scenario(const std::vector<int>& settings);

/// The information-causality scenario: variables X0,X1,G0,G1,M with
/// contexts {X0,G0}, {X1,G1}, {M}.
MarginalScenario ic_scenario();

/// Union of the per-context elemental systems over the observable space,
/// duplicates merged; one H({})=0 equality.
HCone ns_cone(const MarginalScenario& scenario);

/// Shannon system over the full 2^n lattice (used with pins for locality).
HCone local_system(const MarginalScenario& scenario);

enum class Bipartition : std::uint8_t { A_BC, B_AC, C_AB };
std::string bipartition_name(Bipartition b);

/// Hybrid local-nonsignaling system for one bipartition of a tripartite
/// two-setting scenario: the union of the 4-variable elemental systems of
/// the contexts {isolated party's settings} + one setting each for the
/// others, over the space of all subsets of those contexts.
HCone hybrid_system(Bipartition bipartition, const MarginalScenario& scenario);

/// Independence constraints between the end parties A and C.
/// Observable mode: I(A_x:C_z) = 0 over the observable space, one equality
/// per setting pair. Extended mode: the single equality
/// H(A-vars) + H(C-vars) - H(A-vars, C-vars) = 0 over the full space.
std::vector<LinearForm> bilocal_constraints(const MarginalScenario& scenario, BilocalMode mode);

/// The information-causality cone: per-context elemental rows plus
/// H(M) - I(X_s:G_s) >= 0 for s = 0, 1.
HCone ic_cone();

/// "bell:2x2", "bell:3x3", "bell:2x2x2", "bilocal:2x2x2", "bilocal:2x1x1",
/// "ic".
ScenarioSpec parse_scenario_shorthand(const std::string& text);
std::string scenario_shorthand(const ScenarioSpec& spec);

}  // namespace entrocone
