#include "entrocone/classify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

#include "entrocone/dd.hpp"
#include "entrocone/errors.hpp"
#include "entrocone/fm.hpp"
#include "entrocone/iis.hpp"

namespace entrocone {

std::string label_name(Label l) {
  switch (l) {
    case Label::Local:
      return "local";
    case Label::Nonlocal:
      return "nonlocal";
    case Label::Bilocal:
      return "bilocal";
    case Label::Nonbilocal:
      return "nonbilocal";
    case Label::GenuinelyNonbilocal:
      return "genuinely-nonbilocal";
    case Label::Gtnl:
      return "gtnl";
    case Label::IcViolating:
      return "ic-violating";
  }
  return "?";
}

std::vector<RayClass> orbit_classes(const VCone& rays, const SymmetryGroup& group,
                                    bool require_closed) {
  std::map<RatVec, RayClass> by_canon;
  for (const auto& r : rays.rays) {
    if (!is_canonical_scaled(r)) throw Error("orbit_classes: rays must be canonically scaled");
    RatVec canon = canonical_form(r, group);
    auto [it, fresh] = by_canon.try_emplace(std::move(canon));
    if (fresh || compare_lex(r, it->second.representative) < 0) it->second.representative = r;
    if (fresh)
      it->second.orbit_size = 1;
    else
      it->second.orbit_size += 1;
  }
  std::vector<RayClass> out;
  for (auto& [canon, cls] : by_canon) {
    if (require_closed && cls.orbit_size != orbit_size(cls.representative, group))
      throw Error("orbit_classes: ray set is not closed under the group");
    out.push_back(std::move(cls));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

LinearForm NamedInequality::form(const SpacePtr& space) const { return functional(expression, space); }

LinearForm NamedInequality::geq_form(const SpacePtr& space) const {
  LinearForm f = form(space);
  if (sense == Sense::LeqZero) f = negated(f);
  f.rel = Rel::GeqZero;
  return f;
}

bool NamedInequality::violated_by_value(double value) const {
  return sense == Sense::LeqZero ? value > 0 : value < 0;
}

bool NamedInequality::violated_by_value(const Rational& value) const {
  return sense == Sense::LeqZero ? value > 0 : value < 0;
}

const std::vector<NamedInequality>& inequality_registry() {
  using Sense = NamedInequality::Sense;
  static const std::vector<NamedInequality> registry = {
      {"echsh", Sense::LeqZero,
       "I(A0:B0)+I(A0:B1)+I(A1:B0)-I(A1:B1)-H(A0)-H(B0)",
       {ScenarioKind::Bell, {2, 2}, BilocalMode::Observable},
       "entropic CHSH (Braunstein-Caves form), any number of outcomes"},
      {"cg3", Sense::LeqZero,
       "I(A0:B2)-I(A0:B1)+I(A1:B1)-I(A1:B0)+I(A1:B2)+I(A2:B2)+I(A2:B1)+I(A2:B0)"
       "-H(A2)-2*H(B2)-H(B1)",
       {ScenarioKind::Bell, {3, 3}, BilocalMode::Observable},
       "entropic Collins-Gisin inequality for three settings"},
      {"m3", Sense::LeqZero,
       "H(A0,B1,C1)-H(A1,B1,C1)-H(A1,B1,C0)-H(A1,B0,C1)-H(A0,B0,C0)"
       "+H(B0,C0)+H(A1,C1)+H(A1,B1)",
       {ScenarioKind::Bell, {2, 2, 2}, BilocalMode::Observable},
       "tripartite nonlocality witness with a chain-rule proof"},
      {"monogamy", Sense::LeqZero,
       "I(A0:B0)+I(A0:B1)+I(A1:B0)-I(A1:B1)-H(A0)-H(B0)"
       "+I(A0:C0)+I(A0:C1)+I(A1:C0)-I(A1:C1)-H(A0)-H(C0)",
       {ScenarioKind::Bell, {2, 2, 2}, BilocalMode::Observable},
       "monogamy of entropic CHSH violations between A-B and A-C"},
      {"slns", Sense::GeqZero,
       "H(A1,B1,C0)+H(A1,B0,C0)+H(A1,B0,C1)+H(A0,B1,C0)+H(A0,B1,C1)"
       "-H(A1,B1,C1)-H(A1,B0)-H(A1,C0)-H(A0,C1)-H(B1,C0)",
       {ScenarioKind::Bell, {2, 2, 2}, BilocalMode::Observable},
       "genuine tripartite nonlocality witness for hybrid local-nonsignaling models"},
      {"bilocal5", Sense::GeqZero,
       "H(A0,B)+H(C|A1,B)-H(A0,C)",
       {ScenarioKind::Bilocal, {2, 1, 1}, BilocalMode::Observable},
       "bilocal network witness; only the first party has a measurement choice"},
      {"sbl", Sense::GeqZero,
       "-H(A0,B0,C0)+H(A1,B1,C0)+H(A0,B0,C1)+H(A1,B1,C1)-H(A1,C1)-H(A1,B1)",
       {ScenarioKind::Bilocal, {2, 2, 2}, BilocalMode::Observable},
       "genuine nonbilocality witness with marginal terms"},
      {"ic", Sense::LeqZero,
       "I(X0:G0)+I(X1:G1)-H(M)",
       {ScenarioKind::InformationCausality, {}, BilocalMode::Observable},
       "information causality bound on guess information"},
  };
  return registry;
}

const NamedInequality& find_inequality(const std::string& id) {
  for (const auto& e : inequality_registry())
    if (e.id == id) return e;
  throw UnknownNameError("unknown inequality id '" + id + "'");
}

// ---------------------------------------------------------------------------
// Scenario systems and membership
// ---------------------------------------------------------------------------

ScenarioSystems ScenarioSystems::make(const MarginalScenario& scenario) {
  ScenarioSystems sys;
  sys.scenario = scenario;
  sys.obs = scenario.observable_space();
  sys.ns = ns_cone(scenario);
  sys.local = local_system(scenario);
  if (scenario.num_parties == 3) {
    for (Bipartition b : {Bipartition::A_BC, Bipartition::B_AC, Bipartition::C_AB})
      sys.hybrids.emplace_back(b, hybrid_system(b, scenario));
    HCone lb = sys.local;
    for (auto& eq : bilocal_constraints(scenario, BilocalMode::Extended))
      lb.equalities.push_back(eq);
    sys.local_bilocal = std::move(lb);
  }
  return sys;
}

Pins ScenarioSystems::embed_pins(const RatVec& ray_obs, const HCone& target) const {
  if (static_cast<int>(ray_obs.size()) != obs->dim())
    throw DimensionMismatchError("ray length != observable space dimension");
  Pins pins;
  for (int i = 1; i < obs->dim(); ++i) {  // H({})=0 is already an equality
    const int t = target.space->index_of(obs->set_at(i));
    pins.values.emplace_back(t, ray_obs[static_cast<std::size_t>(i)]);
  }
  return pins;
}

bool is_local(const RatVec& ray_obs, const ScenarioSystems& sys) {
  return lp_feasible(sys.local, sys.embed_pins(ray_obs, sys.local)).feasible();
}

bool is_bilocal(const RatVec& ray_obs, const ScenarioSystems& sys) {
  if (!sys.local_bilocal) throw Error("is_bilocal: scenario has no bilocal structure");
  return lp_feasible(*sys.local_bilocal, sys.embed_pins(ray_obs, *sys.local_bilocal)).feasible();
}

bool hybrid_member(const RatVec& ray_obs, const ScenarioSystems& sys, Bipartition b) {
  for (const auto& [bp, cone] : sys.hybrids)
    if (bp == b) return lp_feasible(cone, sys.embed_pins(ray_obs, cone)).feasible();
  throw Error("hybrid_member: hybrid systems not built for this scenario");
}

bool is_gtnl_extremal(const RatVec& ray_obs, const ScenarioSystems& sys) {
  for (const auto& [bp, cone] : sys.hybrids)
    if (lp_feasible(cone, sys.embed_pins(ray_obs, cone)).feasible()) return false;
  return true;
}

bool gtnl_membership_general(const RatVec& vec_obs, const ScenarioSystems& sys) {
  if (sys.hybrids.size() != 3) throw Error("gtnl membership needs the three hybrid systems");
  // Block LP: h1 + h2 + h3 = vec on observable coordinates, h_i in cone i.
  int total = 0;
  std::vector<int> offset;
  for (const auto& [bp, cone] : sys.hybrids) {
    offset.push_back(total);
    total += cone.dim();
  }
  std::vector<RawRow> rows;
  for (std::size_t b = 0; b < 3; ++b) {
    const HCone& cone = sys.hybrids[b].second;
    for (const auto& f : cone.inequalities) {
      RawRow r;
      r.rel = Rel::GeqZero;
      r.coeffs.assign(static_cast<std::size_t>(total), Rational(0));
      for (int j = 0; j < cone.dim(); ++j)
        r.coeffs[static_cast<std::size_t>(offset[b] + j)] = f.coeffs[static_cast<std::size_t>(j)];
      rows.push_back(std::move(r));
    }
    for (const auto& f : cone.equalities) {
      RawRow r;
      r.rel = Rel::EqZero;
      r.coeffs.assign(static_cast<std::size_t>(total), Rational(0));
      for (int j = 0; j < cone.dim(); ++j)
        r.coeffs[static_cast<std::size_t>(offset[b] + j)] = f.coeffs[static_cast<std::size_t>(j)];
      rows.push_back(std::move(r));
    }
  }
  for (int i = 0; i < sys.obs->dim(); ++i) {
    RawRow r;
    r.rel = Rel::EqZero;
    r.coeffs.assign(static_cast<std::size_t>(total), Rational(0));
    for (std::size_t b = 0; b < 3; ++b) {
      const HCone& cone = sys.hybrids[b].second;
      r.coeffs[static_cast<std::size_t>(offset[b] + cone.space->index_of(sys.obs->set_at(i)))] = 1;
    }
    r.constant = -vec_obs[static_cast<std::size_t>(i)];
    rows.push_back(std::move(r));
  }
  RatVec zero(static_cast<std::size_t>(total), Rational(0));
  return lp_solve_raw(total, rows, zero).status != LPStatus::Infeasible;
}

namespace {

bool member_float(const std::vector<double>& ray_obs, const ScenarioSystems& sys,
                  const HCone& target, double tolerance) {
  const int d = target.dim();
  std::vector<RawRow> rows;
  for (const auto& f : target.inequalities) rows.push_back({f.coeffs, 0, Rel::GeqZero});
  for (const auto& f : target.equalities) rows.push_back({f.coeffs, 0, Rel::EqZero});
  const Rational tol = Rational(tolerance);
  for (int i = 1; i < sys.obs->dim(); ++i) {
    const int t = target.space->index_of(sys.obs->set_at(i));
    const Rational v(ray_obs[static_cast<std::size_t>(i)]);  // exact dyadic conversion
    RawRow lo;  // h[t] - (v - tol) >= 0
    lo.coeffs.assign(static_cast<std::size_t>(d), Rational(0));
    lo.coeffs[static_cast<std::size_t>(t)] = 1;
    lo.constant = tol - v;
    rows.push_back(std::move(lo));
    RawRow hi;  // (v + tol) - h[t] >= 0
    hi.coeffs.assign(static_cast<std::size_t>(d), Rational(0));
    hi.coeffs[static_cast<std::size_t>(t)] = -1;
    hi.constant = tol + v;
    rows.push_back(std::move(hi));
  }
  RatVec zero(static_cast<std::size_t>(d), Rational(0));
  return lp_solve_raw(d, rows, zero).status != LPStatus::Infeasible;
}

}  // namespace

bool is_local_float(const std::vector<double>& ray_obs, const ScenarioSystems& sys,
                    double tolerance) {
  return member_float(ray_obs, sys, sys.local, tolerance);
}

bool hybrid_member_float(const std::vector<double>& ray_obs, const ScenarioSystems& sys,
                         Bipartition b, double tolerance) {
  for (const auto& [bp, cone] : sys.hybrids)
    if (bp == b) return member_float(ray_obs, sys, cone, tolerance);
  throw Error("hybrid_member_float: hybrid systems not built");
}

// ---------------------------------------------------------------------------
// Validity and derivation
// ---------------------------------------------------------------------------

namespace {

LinearForm embed_form(const LinearForm& f, const CoordinateSpace& from, const CoordinateSpace& to) {
  LinearForm out;
  out.rel = f.rel;
  out.coeffs.assign(static_cast<std::size_t>(to.dim()), Rational(0));
  for (int i = 0; i < from.dim(); ++i) {
    if (f.coeffs[static_cast<std::size_t>(i)] == 0) continue;
    out.coeffs[static_cast<std::size_t>(to.index_of(from.set_at(i)))] = f.coeffs[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace

bool check_validity(const LinearForm& ineq, const SpacePtr& ineq_space, const HCone& system,
                    const std::vector<LinearForm>& extra_equalities, RatVec* witness,
                    Certificate* validity) {
  HCone work = system;
  for (const auto& eq : extra_equalities) work.equalities.push_back(eq);
  const LinearForm objective = ineq_space->same_layout(*system.space)
                                   ? ineq
                                   : embed_form(ineq, *ineq_space, *system.space);
  const LPOutcome out = lp_check(work, objective);
  if (out.status == LPStatus::Optimal && out.minimum >= 0) {
    if (validity != nullptr && out.validity) *validity = *out.validity;
    return true;
  }
  if (out.status == LPStatus::Unbounded && witness != nullptr && out.witness)
    *witness = *out.witness;
  return false;
}

LinearForm derive_inequality(const RatVec& ray_obs, const SpacePtr& obs, const HCone& system) {
  Pins pins;
  for (int i = 1; i < obs->dim(); ++i)
    pins.values.emplace_back(system.space->index_of(obs->set_at(i)),
                             ray_obs[static_cast<std::size_t>(i)]);

  const HCone iis = iis_shrink(system, pins);  // throws FeasibleInputError if member

  std::vector<int> keep;
  for (int i = 0; i < obs->dim(); ++i) keep.push_back(system.space->index_of(obs->set_at(i)));
  const HCone projected = fm_project_onto(iis, keep);

  // Most violated projected row, scaled to coprime integers; violation is
  // compared relative to the L1 norm of the row.
  const CoordinateSpace& pspace = *projected.space;
  LinearForm best;
  Rational best_score = 0;
  bool found = false;
  for (const auto& f : projected.inequalities) {
    Rational value = 0;
    Rational l1 = 0;
    for (int i = 0; i < pspace.dim(); ++i) {
      const Rational& c = f.coeffs[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      value += c * ray_obs[static_cast<std::size_t>(obs->index_of(pspace.set_at(i)))];
      l1 += c < 0 ? -c : c;
    }
    if (value >= 0) continue;
    const Rational score = value / l1;
    if (!found || score < best_score) {
      found = true;
      best_score = score;
      best = f;
    }
  }
  if (!found) throw Error("derive_inequality: projection produced no violated row");

  LinearForm result = embed_form(best, pspace, *obs);
  result.rel = Rel::GeqZero;
  if (!check_validity(result, obs, system))
    throw Error("derive_inequality: derived row is not valid for the system");
  return result;
}

// ---------------------------------------------------------------------------
// Whole-scenario classification
// ---------------------------------------------------------------------------

std::set<Label> classify_ray(const RatVec& ray_obs, const ScenarioSystems& sys,
                             const ClassificationOptions& options) {
  std::set<Label> labels;
  const bool local = is_local(ray_obs, sys);
  labels.insert(local ? Label::Local : Label::Nonlocal);
  if (options.with_gtnl && sys.hybrids.size() == 3 && !local) {
    const bool gtnl = options.extremal_input ? is_gtnl_extremal(ray_obs, sys)
                                             : !gtnl_membership_general(ray_obs, sys);
    if (gtnl) labels.insert(Label::Gtnl);
  }
  if (options.with_bilocal && sys.local_bilocal) {
    const bool bilocal = is_bilocal(ray_obs, sys);
    labels.insert(bilocal ? Label::Bilocal : Label::Nonbilocal);
    if (local && !bilocal) labels.insert(Label::GenuinelyNonbilocal);
  }
  return labels;
}

ClassificationReport classify_scenario(const ScenarioSpec& spec,
                                       const ClassificationOptions& options) {
  ClassificationReport report;
  report.spec = spec;
  const MarginalScenario scenario = spec.build();

  HCone cone;
  bool ic = false;
  switch (spec.kind) {
    case ScenarioKind::Bell:
      cone = ns_cone(scenario);
      break;
    case ScenarioKind::Bilocal: {
      if (spec.bilocal_mode == BilocalMode::Extended)
        throw Error("bilocal ray enumeration runs in observable mode; the extended "
                    "constraint is for certificate proofs");
      cone = ns_cone(scenario);
      for (auto& eq : bilocal_constraints(scenario, BilocalMode::Observable))
        cone.equalities.push_back(eq);
      report.bilocal_mode = "observable";
      break;
    }
    case ScenarioKind::InformationCausality:
      cone = ic_cone();
      ic = true;
      break;
  }
  report.space = cone.space;

  DDConfig dd = options.dd;
  if (dd.threads == 0) dd.threads = options.threads;
  const VCone rays = dd_enumerate(cone, dd);

  // Classes are counted up to the full party/setting relabeling group even
  // in the bilocal scenario, where the ray set itself is closed only under
  // the end-party swap; representatives are the members actually present.
  const SymmetryGroup group = ic ? SymmetryGroup::trivial(cone.space)
                                 : scenario_symmetry_group(scenario, cone.space, false);
  std::vector<RayClass> classes =
      orbit_classes(rays, group, /*require_closed=*/spec.kind != ScenarioKind::Bilocal);

  if (ic) {
    const LinearForm f = find_inequality("ic").form(cone.space);
    for (auto& cls : classes)
      if (find_inequality("ic").violated_by_value(f.eval(cls.representative)))
        cls.labels.insert(Label::IcViolating);
  } else {
    const ScenarioSystems sys = ScenarioSystems::make(scenario);
    ClassificationOptions opts = options;
    if (spec.kind == ScenarioKind::Bell) opts.with_bilocal = false;
    // Bilocal-cone rays need not be extremal in the nonsignaling cone.
    opts.extremal_input = spec.kind == ScenarioKind::Bell;
    const int nthreads = std::max(
        1, options.threads > 0 ? options.threads
                               : static_cast<int>(std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= classes.size()) return;
        classes[i].labels = classify_ray(classes[i].representative, sys, opts);
        done.fetch_add(1);
      }
    };
    if (nthreads == 1 || classes.size() < 8) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
      if (options.progress) {
        while (done.load() < classes.size()) {
          std::this_thread::sleep_for(std::chrono::seconds(2));
          fprintf(stderr, "classify: %zu/%zu classes\n", done.load(), classes.size());
        }
      }
      for (auto& th : pool) th.join();
    }
    if (static_cast<int>(scenario.variables.size()) > 3)
      report.method_note = "shannon-outer";  // locality via the Shannon relaxation
  }

  report.classes = std::move(classes);
  for (const auto& cls : report.classes) {
    report.total_rays += cls.orbit_size;
    for (Label l : cls.labels) report.counts[label_name(l)] += 1;
  }
  report.counts["total"] = report.classes.size();
  return report;
}

}  // namespace entrocone
