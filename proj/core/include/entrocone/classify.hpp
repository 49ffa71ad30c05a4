#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "entrocone/cone.hpp"
#include "entrocone/dd.hpp"
#include "entrocone/lp.hpp"
#include "entrocone/scenarios.hpp"
#include "entrocone/symmetry.hpp"

namespace entrocone {

enum class Label : std::uint8_t {
  Local,
  Nonlocal,
  Bilocal,
  Nonbilocal,
  GenuinelyNonbilocal,
  Gtnl,
  IcViolating,
};

std::string label_name(Label l);

/// One symmetry class of extremal rays.
struct RayClass {
  RatVec representative;  // lexicographic minimum of the orbit
  std::size_t orbit_size = 1;
  std::set<Label> labels;
};

/// Partition of a ray set by canonical form. The representative is the
/// lexicographic minimum of the members present; orbit_size counts them.
/// With require_closed (the default) the set must be closed under the
/// group, so orbit_size equals the true orbit size. Bilocal ray sets are
/// only closed under the end-party swap but are conventionally counted up
/// to the full relabeling group; they pass require_closed = false.
std::vector<RayClass> orbit_classes(const VCone& rays, const SymmetryGroup& group,
                                    bool require_closed = true);

// ---------------------------------------------------------------------------
// Inequality registry
// ---------------------------------------------------------------------------

struct NamedInequality {
  std::string id;
  enum class Sense : std::uint8_t { LeqZero, GeqZero } sense = Sense::GeqZero;
  std::string expression;  // functional() syntax, in the conventional orientation
  ScenarioSpec scenario;
  std::string note;

  /// Coefficients of `expression` on the scenario's observable space.
  LinearForm form(const SpacePtr& space) const;
  /// Normalized to a GeqZero form (LeqZero expressions are negated).
  LinearForm geq_form(const SpacePtr& space) const;
  /// True if the value (in the conventional orientation) is a violation.
  bool violated_by_value(double value) const;
  bool violated_by_value(const Rational& value) const;
};

const std::vector<NamedInequality>& inequality_registry();
const NamedInequality& find_inequality(const std::string& id);

// ---------------------------------------------------------------------------
// Membership tests. Systems for a scenario are built once and reused.
// ---------------------------------------------------------------------------

struct ScenarioSystems {
  MarginalScenario scenario;
  SpacePtr obs;
  HCone ns;     // over obs
  HCone local;  // Shannon system over the full lattice
  std::vector<std::pair<Bipartition, HCone>> hybrids;  // tripartite only
  std::optional<HCone> local_bilocal;  // local + extended independence

  /// Pins placing an observable-space vector into a target system's space.
  Pins embed_pins(const RatVec& ray_obs, const HCone& target) const;

  static ScenarioSystems make(const MarginalScenario& scenario);
};

/// Feasibility of the full Shannon system with the ray pinned on the
/// observable coordinates. For more than three observables this is the
/// Shannon outer approximation of the entropy cone, so "local" verdicts
/// are relaxation verdicts (reports carry the note).
bool is_local(const RatVec& ray_obs, const ScenarioSystems& sys);

/// As is_local plus the extended independence constraint between the end
/// parties.
bool is_bilocal(const RatVec& ray_obs, const ScenarioSystems& sys);

bool hybrid_member(const RatVec& ray_obs, const ScenarioSystems& sys, Bipartition b);

/// For extremal rays of the nonsignaling cone: genuinely tripartite
/// nonlocal iff the ray lies in none of the three hybrid cones.
bool is_gtnl_extremal(const RatVec& ray_obs, const ScenarioSystems& sys);

/// General membership in the convex hull of the three hybrid cones: one
/// joint block LP over h1 + h2 + h3 = vector on the observable coordinates.
bool gtnl_membership_general(const RatVec& vec_obs, const ScenarioSystems& sys);

/// Float64 membership with pins inflated to a +-tolerance band.
bool is_local_float(const std::vector<double>& ray_obs, const ScenarioSystems& sys,
                    double tolerance = 1e-7);
bool hybrid_member_float(const std::vector<double>& ray_obs, const ScenarioSystems& sys,
                         Bipartition b, double tolerance = 1e-7);

// ---------------------------------------------------------------------------
// Validity and derivation
// ---------------------------------------------------------------------------

/// Valid iff min <ineq, h> over the system (plus extra equalities) is >= 0.
/// The inequality may live on a subspace of the system's coordinates.
/// On failure `witness` (if given) receives a system ray with a negative
/// value.
bool check_validity(const LinearForm& ineq, const SpacePtr& ineq_space, const HCone& system,
                    const std::vector<LinearForm>& extra_equalities = {},
                    RatVec* witness = nullptr, Certificate* validity = nullptr);

/// IIS + projection pipeline: shrinks the system against the infeasible
/// pinned ray, projects the surviving rows onto the ray's coordinates, and
/// returns the most violated resulting inequality (valid for the system,
/// strictly violated by the ray). Throws FeasibleInputError if the ray is
/// a member.
LinearForm derive_inequality(const RatVec& ray_obs, const SpacePtr& obs, const HCone& system);

// ---------------------------------------------------------------------------
// Whole-scenario classification
// ---------------------------------------------------------------------------

struct ClassificationOptions {
  int threads = 0;  // 0 = hardware
  bool with_gtnl = true;
  bool with_bilocal = true;
  /// True when the rays are certified extremal rays of the nonsignaling
  /// cone (straight from dd_enumerate on it); only then may the
  /// genuine-nonlocality check take the per-cone shortcut. Otherwise the
  /// joint block LP decides membership in the hybrid hull.
  bool extremal_input = true;
  BilocalMode bilocal_mode = BilocalMode::Observable;
  DDConfig dd;
  bool progress = false;  // stream row/ray counts to stderr
};

struct ClassificationReport {
  ScenarioSpec spec;
  SpacePtr space;
  std::vector<RayClass> classes;
  std::map<std::string, std::size_t> counts;
  std::size_t total_rays = 0;
  std::string method_note;
  std::string bilocal_mode;  // for bilocal runs: which constraint mode ran
};

ClassificationReport classify_scenario(const ScenarioSpec& spec,
                                       const ClassificationOptions& options = {});

/// Labels one class representative (used by classify_scenario and the CLI).
std::set<Label> classify_ray(const RatVec& ray_obs, const ScenarioSystems& sys,
                             const ClassificationOptions& options);

}  // namespace entrocone
