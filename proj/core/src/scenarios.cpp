#include "entrocone/scenarios.hpp"

#include <algorithm>
#include <map>

#include "entrocone/errors.hpp"
#include "entrocone/fm.hpp"

namespace entrocone {

SpacePtr MarginalScenario::observable_space() const {
  std::vector<VarSet> sets;
  for (VarSet ctx : contexts) {
    // All subsets of the context.
    std::vector<int> mem = set_members(ctx);
    for (VarSet pick = 0; pick < (VarSet{1} << mem.size()); ++pick) {
      VarSet s = 0;
      for (std::size_t t = 0; t < mem.size(); ++t)
        if ((pick >> t) & 1u) s |= VarSet{1} << mem[t];
      sets.push_back(s);
    }
  }
  return CoordinateSpace::make(variables, std::move(sets));
}

SpacePtr MarginalScenario::full_space() const { return CoordinateSpace::full(variables); }

VarSet MarginalScenario::party_vars(int party) const {
  VarSet s = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].party == party) s |= VarSet{1} << i;
  return s;
}

void MarginalScenario::check() const {
  if (variables.empty()) throw Error("scenario without observables");
  VarSet covered = 0;
  for (VarSet c : contexts) {
    for (VarSet other : contexts)
      if (c != other && subset_of(c, other))
        throw Error("contexts must be maximal (one contains another)");
    covered |= c;
  }
  if (covered != (VarSet{1} << variables.size()) - 1)
    throw Error("every observable must appear in at least one context");
}

MarginalScenario bell_scenario(int parties, const std::vector<int>& settings) {
  if (parties < 1 || static_cast<int>(settings.size()) != parties)
    throw Error("bell_scenario: need a settings count per party");
  for (int m : settings)
    if (m < 1) throw Error("bell_scenario: each party needs >= 1 setting");

  MarginalScenario sc;
  sc.num_parties = parties;
  sc.settings = settings;
  for (int p = 0; p < parties; ++p) {
    for (int x = 0; x < settings[static_cast<std::size_t>(p)]; ++x) {
      ObservableLabel l{p, x};
      sc.labels.push_back(l);
      sc.variables.push_back(l.name(settings[static_cast<std::size_t>(p)] > 1));
    }
  }
  // One context per setting choice.
  std::vector<int> choice(static_cast<std::size_t>(parties), 0);
  for (;;) {
    VarSet ctx = 0;
    for (int p = 0; p < parties; ++p) {
      for (std::size_t i = 0; i < sc.labels.size(); ++i)
        if (sc.labels[i].party == p && sc.labels[i].setting == choice[static_cast<std::size_t>(p)])
          ctx |= VarSet{1} << i;
    }
    sc.contexts.push_back(ctx);
    int p = parties - 1;
    while (p >= 0 && ++choice[static_cast<std::size_t>(p)] == settings[static_cast<std::size_t>(p)]) {
      choice[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) break;
  }
  sc.check();
  return sc;
}

MarginalScenario bilocal_scenario(const std::vector<int>& settings) {
  if (settings.size() < 3) throw Error("bilocal_scenario: need >= 3 parties");
  return bell_scenario(static_cast<int>(settings.size()), settings);
}

MarginalScenario ic_scenario() {
  MarginalScenario sc;
  sc.variables = {"X0", "X1", "G0", "G1", "M"};
  sc.labels = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}};
  sc.num_parties = 3;
  sc.settings = {2, 2, 1};
  sc.contexts = {0b00101, 0b01010, 0b10000};  // {X0,G0}, {X1,G1}, {M}
  sc.check();
  return sc;
}

MarginalScenario ScenarioSpec::build() const {
  switch (kind) {
    case ScenarioKind::Bell:
      return bell_scenario(static_cast<int>(settings.size()), settings);
    case ScenarioKind::Bilocal:
      return bilocal_scenario(settings);
    case ScenarioKind::InformationCausality:
      return ic_scenario();
  }
  throw Error("unknown scenario kind");
}

HCone ns_cone(const MarginalScenario& scenario) {
  SpacePtr space = scenario.observable_space();
  HCone out;
  out.space = space;
  for (VarSet ctx : scenario.contexts) {
    HCone part = elemental_inequalities(ctx, space);
    for (auto& f : part.inequalities) out.inequalities.push_back(std::move(f));
  }
  out = dedup_rows(out);
  LinearForm norm;
  norm.coeffs.assign(static_cast<std::size_t>(space->dim()), Rational(0));
  norm.coeffs[0] = 1;
  norm.rel = Rel::EqZero;
  out.equalities = {std::move(norm)};
  return out;
}

HCone local_system(const MarginalScenario& scenario) {
  SpacePtr space = scenario.full_space();
  return elemental_inequalities(static_cast<int>(scenario.variables.size()), space);
}

std::string bipartition_name(Bipartition b) {
  switch (b) {
    case Bipartition::A_BC:
      return "A|BC";
    case Bipartition::B_AC:
      return "B|AC";
    case Bipartition::C_AB:
      return "C|AB";
  }
  return "?";
}

HCone hybrid_system(Bipartition bipartition, const MarginalScenario& scenario) {
  if (scenario.num_parties != 3)
    throw Error("hybrid_system: tripartite scenarios only");
  const int isolated = bipartition == Bipartition::A_BC ? 0
                       : bipartition == Bipartition::B_AC ? 1
                                                          : 2;
  const VarSet iso_vars = scenario.party_vars(isolated);
  std::vector<int> others;
  for (int p = 0; p < 3; ++p)
    if (p != isolated) others.push_back(p);

  // Contexts: all of the isolated party's observables plus one setting for
  // each other party.
  std::vector<VarSet> contexts;
  for (int i : set_members(scenario.party_vars(others[0]))) {
    for (int j : set_members(scenario.party_vars(others[1]))) {
      contexts.push_back(iso_vars | (VarSet{1} << i) | (VarSet{1} << j));
    }
  }
  std::vector<VarSet> sets;
  for (VarSet ctx : contexts) {
    std::vector<int> mem = set_members(ctx);
    for (VarSet pick = 0; pick < (VarSet{1} << mem.size()); ++pick) {
      VarSet s = 0;
      for (std::size_t t = 0; t < mem.size(); ++t)
        if ((pick >> t) & 1u) s |= VarSet{1} << mem[t];
      sets.push_back(s);
    }
  }
  SpacePtr space = CoordinateSpace::make(scenario.variables, std::move(sets));

  HCone out;
  out.space = space;
  for (VarSet ctx : contexts) {
    HCone part = elemental_inequalities(ctx, space);
    for (auto& f : part.inequalities) out.inequalities.push_back(std::move(f));
  }
  out = dedup_rows(out);
  LinearForm norm;
  norm.coeffs.assign(static_cast<std::size_t>(space->dim()), Rational(0));
  norm.coeffs[0] = 1;
  norm.rel = Rel::EqZero;
  out.equalities = {std::move(norm)};
  return out;
}

std::vector<LinearForm> bilocal_constraints(const MarginalScenario& scenario, BilocalMode mode) {
  if (scenario.num_parties < 3) throw Error("bilocal_constraints: need >= 3 parties");
  const int a = 0;
  const int c = scenario.num_parties - 1;
  std::vector<LinearForm> out;
  if (mode == BilocalMode::Observable) {
    SpacePtr space = scenario.observable_space();
    for (int ia : set_members(scenario.party_vars(a))) {
      for (int ic : set_members(scenario.party_vars(c))) {
        LinearForm f;
        f.coeffs.assign(static_cast<std::size_t>(space->dim()), Rational(0));
        f.rel = Rel::EqZero;
        const VarSet va = VarSet{1} << ia, vc = VarSet{1} << ic;
        f.coeffs[static_cast<std::size_t>(space->index_of(va))] += 1;
        f.coeffs[static_cast<std::size_t>(space->index_of(vc))] += 1;
        f.coeffs[static_cast<std::size_t>(space->index_of(va | vc))] -= 1;
        out.push_back(std::move(f));
      }
    }
  } else {
    SpacePtr space = scenario.full_space();
    LinearForm f;
    f.coeffs.assign(static_cast<std::size_t>(space->dim()), Rational(0));
    f.rel = Rel::EqZero;
    const VarSet va = scenario.party_vars(a), vc = scenario.party_vars(c);
    f.coeffs[static_cast<std::size_t>(space->index_of(va))] += 1;
    f.coeffs[static_cast<std::size_t>(space->index_of(vc))] += 1;
    f.coeffs[static_cast<std::size_t>(space->index_of(va | vc))] -= 1;
    out.push_back(std::move(f));
  }
  return out;
}

HCone ic_cone() {
  const MarginalScenario sc = ic_scenario();
  HCone cone = ns_cone(sc);
  SpacePtr space = cone.space;
  for (int s = 0; s < 2; ++s) {
    // H(M) - I(X_s:G_s) >= 0.
    const std::string expr = "H(M) - I(X" + std::to_string(s) + ":G" + std::to_string(s) + ")";
    cone.inequalities.push_back(functional(expr, space));
  }
  return cone;
}

ScenarioSpec parse_scenario_shorthand(const std::string& text) {
  ScenarioSpec spec;
  if (text == "ic") {
    spec.kind = ScenarioKind::InformationCausality;
    return spec;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("scenario shorthand must look like bell:2x2 or ic: '" + text + "'");
  const std::string head = text.substr(0, colon);
  if (head == "bell")
    spec.kind = ScenarioKind::Bell;
  else if (head == "bilocal")
    spec.kind = ScenarioKind::Bilocal;
  else
    throw ParseError("unknown scenario family '" + head + "'");
  std::string rest = text.substr(colon + 1);
  std::size_t at = 0;
  while (at < rest.size()) {
    std::size_t end = rest.find('x', at);
    if (end == std::string::npos) end = rest.size();
    const std::string tok = rest.substr(at, end - at);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad settings list in scenario '" + text + "'");
    spec.settings.push_back(std::stoi(tok));
    at = end + 1;
  }
  if (spec.settings.empty()) throw ParseError("empty settings list in scenario '" + text + "'");
  return spec;
}

std::string scenario_shorthand(const ScenarioSpec& spec) {
  switch (spec.kind) {
    case ScenarioKind::InformationCausality:
      return "ic";
    case ScenarioKind::Bell:
    case ScenarioKind::Bilocal: {
      std::string out = spec.kind == ScenarioKind::Bell ? "bell:" : "bilocal:";
      for (std::size_t i = 0; i < spec.settings.size(); ++i) {
        if (i) out += "x";
        out += std::to_string(spec.settings[i]);
      }
      return out;
    }
  }
  return "?";
}

}  // namespace entrocone
