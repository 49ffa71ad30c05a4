// Command-line front end: cone construction, ray enumeration and
// classification, inequality checking and derivation, certificate replay,
// and the quantum witness scan.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "entrocone/boxes.hpp"
#include "entrocone/certificates.hpp"
#include "entrocone/classify.hpp"
#include "entrocone/dd.hpp"
#include "entrocone/errors.hpp"
#include "entrocone/json_io.hpp"

using namespace entrocone;

namespace {

bool g_json_diagnostics = false;

void diagnose(const std::string& type, const std::string& message) {
  if (g_json_diagnostics) {
    Json j;
    j["error"] = type;
    j["message"] = message;
    std::cerr << j.dump() << "\n";
  } else {
    std::cerr << "error: " << message << "\n";
  }
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << dump_deterministic(j);
  else
    save_json_file(out_path, j);
}

// ---------------------------------------------------------------------------
// System grammar: "local:2x2", "ns:2x2x2", "hybrid:2x2x2:a",
// "bilocal:2x2x2" (nonsignaling plus independence; ":extended" for the
// full-lattice variant), "ic".
// ---------------------------------------------------------------------------

struct SystemSpec {
  std::string name;
  HCone cone;
  ScenarioSpec scenario;
};

SystemSpec parse_system(const std::string& text) {
  SystemSpec out;
  out.name = text;
  if (text == "ic") {
    out.scenario = parse_scenario_shorthand("ic");
    out.cone = ic_cone();
    return out;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("bad system spec '" + text + "'");
  const std::string head = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  std::string suffix;
  const auto colon2 = rest.find(':');
  if (colon2 != std::string::npos) {
    suffix = rest.substr(colon2 + 1);
    rest = rest.substr(0, colon2);
  }
  const ScenarioSpec spec =
      parse_scenario_shorthand((head == "bilocal" ? "bilocal:" : "bell:") + rest);
  const MarginalScenario sc = spec.build();
  out.scenario = spec;
  if (head == "ns") {
    out.cone = ns_cone(sc);
  } else if (head == "local") {
    out.cone = local_system(sc);
  } else if (head == "bilocal") {
    if (suffix == "extended") {
      out.cone = local_system(sc);
      for (auto& eq : bilocal_constraints(sc, BilocalMode::Extended))
        out.cone.equalities.push_back(eq);
    } else {
      out.cone = ns_cone(sc);
      for (auto& eq : bilocal_constraints(sc, BilocalMode::Observable))
        out.cone.equalities.push_back(eq);
    }
  } else if (head == "hybrid") {
    const Bipartition b = suffix == "b"   ? Bipartition::B_AC
                          : suffix == "c" ? Bipartition::C_AB
                                          : Bipartition::A_BC;
    out.cone = hybrid_system(b, sc);
  } else {
    throw ParseError("unknown system family '" + head + "'");
  }
  return out;
}

HCone cone_for_family(const ScenarioSpec& spec, const std::string& family) {
  const MarginalScenario sc = spec.build();
  if (family == "ns") {
    if (spec.kind == ScenarioKind::InformationCausality) return ic_cone();
    HCone cone = ns_cone(sc);
    if (spec.kind == ScenarioKind::Bilocal)
      for (auto& eq : bilocal_constraints(sc, BilocalMode::Observable))
        cone.equalities.push_back(eq);
    return cone;
  }
  if (family == "local") return local_system(sc);
  if (family == "ic") return ic_cone();
  if (family == "hybrid-a") return hybrid_system(Bipartition::A_BC, sc);
  if (family == "hybrid-b") return hybrid_system(Bipartition::B_AC, sc);
  if (family == "hybrid-c") return hybrid_system(Bipartition::C_AB, sc);
  throw ParseError("unknown cone family '" + family + "'");
}

std::string settings_of(const ScenarioSpec& spec) {
  std::string s;
  for (std::size_t i = 0; i < spec.settings.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(spec.settings[i]);
  }
  return s;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"entropy-cone toolkit for nonsignaling correlation analysis"};
  app.require_subcommand(1);
  int threads = 0;
  std::uint64_t seed = 1;
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--seed", seed, "seed for randomized components");
  app.add_flag("--json", g_json_diagnostics, "machine-readable stderr diagnostics");

  // --- scenario -------------------------------------------------------------
  auto* cmd_scenario = app.add_subcommand("scenario", "describe a measurement scenario");
  std::string scenario_text, scenario_out;
  cmd_scenario->add_option("shorthand", scenario_text, "bell:2x2, bilocal:2x2x2, ic")->required();
  cmd_scenario->add_option("--out", scenario_out, "output file (default stdout)");
  cmd_scenario->callback([&] {
    const ScenarioSpec spec = parse_scenario_shorthand(scenario_text);
    const MarginalScenario sc = spec.build();
    Json j = scenario_spec_to_json(spec);
    Json contexts = Json::array();
    SpacePtr obs = sc.observable_space();
    for (VarSet ctx : sc.contexts) {
      Json names = Json::array();
      for (const auto& n : obs->set_names(ctx)) names.push_back(n);
      contexts.push_back(std::move(names));
    }
    j["contexts"] = std::move(contexts);
    j.update(space_to_json(*obs));
    emit(j, scenario_out);
  });

  // --- cone -----------------------------------------------------------------
  auto* cmd_cone = app.add_subcommand("cone", "build a cone in half-space form");
  std::string cone_scenario = "bell:2x2", cone_family = "ns", cone_out;
  cmd_cone->add_option("--scenario", cone_scenario, "scenario shorthand");
  cmd_cone->add_option("--family", cone_family, "ns | local | hybrid-a/b/c | ic");
  cmd_cone->add_option("--out", cone_out, "output file (default stdout)");
  cmd_cone->callback([&] {
    const ScenarioSpec spec = parse_scenario_shorthand(cone_scenario);
    const HCone cone = cone_for_family(spec, cone_family);
    Json j = hcone_to_json(cone);
    j["scenario"] = scenario_shorthand(spec);
    j["family"] = cone_family;
    emit(j, cone_out);
  });

  // --- rays -------------------------------------------------------------------
  auto* cmd_rays = app.add_subcommand("rays", "enumerate the extremal rays of a cone");
  std::string rays_input, rays_out, rays_group = "auto", rays_scenario;
  bool rays_classes = false;
  cmd_rays->add_option("cone", rays_input, "cone JSON file (from `cone --out`)");
  cmd_rays->add_option("--scenario", rays_scenario, "build the cone instead of reading a file");
  cmd_rays->add_flag("--classes", rays_classes, "group rays into symmetry classes");
  cmd_rays->add_option("--group", rays_group, "auto | none");
  cmd_rays->add_option("--out", rays_out, "output file (default stdout)");
  cmd_rays->callback([&] {
    HCone cone;
    std::optional<ScenarioSpec> spec;
    if (!rays_scenario.empty()) {
      spec = parse_scenario_shorthand(rays_scenario);
      cone = cone_for_family(*spec, "ns");
    } else if (!rays_input.empty()) {
      const Json j = load_json_file(rays_input);
      cone = hcone_from_json(j);
      if (j.contains("scenario"))
        spec = parse_scenario_shorthand(j.at("scenario").get<std::string>());
    } else {
      throw ParseError("rays: need a cone file or --scenario");
    }
    DDConfig cfg;
    cfg.threads = threads;
    const VCone rays = dd_enumerate(cone, cfg);
    Json j = vcone_to_json(rays);
    if (spec) j["scenario"] = scenario_shorthand(*spec);
    if (rays_classes) {
      SymmetryGroup group = SymmetryGroup::trivial(cone.space);
      if (rays_group == "auto" && spec && spec->kind != ScenarioKind::InformationCausality)
        group = scenario_symmetry_group(spec->build(), cone.space,
                                        spec->kind == ScenarioKind::Bilocal);
      const auto classes = orbit_classes(rays, group);
      Json jc = Json::array();
      for (const auto& cls : classes) {
        Json c;
        Json rep = Json::array();
        for (const auto& x : cls.representative) rep.push_back(format_rational(x));
        c["representative"] = std::move(rep);
        c["orbit_size"] = cls.orbit_size;
        jc.push_back(std::move(c));
      }
      j["classes"] = std::move(jc);
    }
    emit(j, rays_out);
  });

  // --- classify ----------------------------------------------------------------
  auto* cmd_classify = app.add_subcommand("classify", "label extremal rays or whole scenarios");
  std::string cls_input, cls_scenario, cls_labels = "local", cls_out;
  cmd_classify->add_option("rays", cls_input, "rays JSON file (from `rays --out`)");
  cmd_classify->add_option("--scenario", cls_scenario,
                           "classify a whole scenario (enumerates internally)");
  cmd_classify->add_option("--labels", cls_labels, "comma list: local,gtnl,bilocal");
  cmd_classify->add_option("--out", cls_out, "output file (default stdout)");
  cmd_classify->callback([&] {
    ClassificationOptions opt;
    opt.threads = threads;
    opt.with_gtnl = cls_labels.find("gtnl") != std::string::npos;
    opt.with_bilocal = cls_labels.find("bilocal") != std::string::npos;
    ClassificationReport report;
    if (!cls_scenario.empty()) {
      report = classify_scenario(parse_scenario_shorthand(cls_scenario), opt);
    } else if (!cls_input.empty()) {
      const Json j = load_json_file(cls_input);
      if (!j.contains("scenario"))
        throw ParseError("rays file carries no scenario; pass --scenario");
      const ScenarioSpec spec = parse_scenario_shorthand(j.at("scenario").get<std::string>());
      const VCone rays = vcone_from_json(j);
      const MarginalScenario sc = spec.build();
      report.spec = spec;
      report.space = rays.space;
      const SymmetryGroup group =
          spec.kind == ScenarioKind::InformationCausality
              ? SymmetryGroup::trivial(rays.space)
              : scenario_symmetry_group(sc, rays.space, spec.kind == ScenarioKind::Bilocal);
      report.classes = orbit_classes(rays, group);
      if (spec.kind == ScenarioKind::InformationCausality) {
        const NamedInequality& ic = find_inequality("ic");
        const LinearForm f = ic.form(rays.space);
        for (auto& cls : report.classes)
          if (ic.violated_by_value(f.eval(cls.representative)))
            cls.labels.insert(Label::IcViolating);
      } else {
        const ScenarioSystems sys = ScenarioSystems::make(sc);
        ClassificationOptions ropt = opt;
        if (spec.kind == ScenarioKind::Bell) ropt.with_bilocal = false;
        ropt.extremal_input = spec.kind == ScenarioKind::Bell;
        for (auto& cls : report.classes) cls.labels = classify_ray(cls.representative, sys, ropt);
      }
      for (const auto& cls : report.classes) {
        report.total_rays += cls.orbit_size;
        for (Label l : cls.labels) report.counts[label_name(l)] += 1;
      }
      report.counts["total"] = report.classes.size();
      if (sc.variables.size() > 3) report.method_note = "shannon-outer";
    } else {
      throw ParseError("classify: need a rays file or --scenario");
    }
    emit(report_to_json(report), cls_out);
  });

  // --- check ------------------------------------------------------------------
  auto* cmd_check = app.add_subcommand("check", "validity of an inequality for a system");
  std::string check_ineq, check_system, check_expr, check_out;
  cmd_check->add_option("--inequality", check_ineq, "registry id (echsh, slns, ic, ...)");
  cmd_check->add_option("--expression", check_expr, "raw functional expression (>= 0 form)");
  cmd_check->add_option("--system", check_system, "local:2x2, ns:2x2x2, hybrid:2x2x2:a, ic");
  cmd_check->add_option("--out", check_out, "output file (default stdout)");
  cmd_check->callback([&] {
    if (check_system.empty()) {
      if (check_ineq.empty()) throw ParseError("check: need --inequality or --expression");
      const NamedInequality& ineq = find_inequality(check_ineq);
      check_system = check_ineq == "ic"         ? "ic"
                     : check_ineq == "slns"     ? "hybrid:2x2x2:a"
                     : check_ineq == "bilocal5" ? "bilocal:2x1x1:extended"
                     : check_ineq == "sbl"      ? "bilocal:2x2x2:extended"
                                                : "local:" + settings_of(ineq.scenario);
    }
    const SystemSpec sys = parse_system(check_system);
    SpacePtr ineq_space;
    LinearForm geq;
    if (!check_expr.empty()) {
      ineq_space = sys.cone.space;
      geq = functional(check_expr, ineq_space);
    } else {
      const NamedInequality& ineq = find_inequality(check_ineq);
      ineq_space = ineq.scenario.build().observable_space();
      geq = ineq.geq_form(ineq_space);
    }
    RatVec witness;
    Certificate validity;
    const bool ok = check_validity(geq, ineq_space, sys.cone, {}, &witness, &validity);
    Json j;
    j["inequality"] = check_expr.empty() ? check_ineq : check_expr;
    j["system"] = sys.name;
    j["valid"] = ok;
    if (ok)
      j["certificate"] = certificate_to_json(validity, sys.cone);
    else if (!witness.empty()) {
      Json w = Json::array();
      for (const auto& x : witness) w.push_back(format_rational(x));
      j["witness_ray"] = std::move(w);
    }
    if (!check_out.empty()) save_json_file(check_out, j);
    std::printf("%s on %s: %s\n", j["inequality"].get<std::string>().c_str(), sys.name.c_str(),
                ok ? "valid" : "invalid");
  });

  // --- derive -----------------------------------------------------------------
  auto* cmd_derive = app.add_subcommand("derive", "derive a violated inequality from a ray");
  std::string derive_ray, derive_system = "local:2x2", derive_out;
  cmd_derive->add_option("--ray", derive_ray, "entropy vector JSON file")->required();
  cmd_derive->add_option("--system", derive_system,
                         "target system; 'hybrid' tries all three bipartitions");
  cmd_derive->add_option("--out", derive_out, "output file (default stdout)");
  cmd_derive->callback([&] {
    const EntropyVector v = entropy_vector_from_json(load_json_file(derive_ray));
    if (v.kind != ScalarKind::Rational)
      throw Error("derive needs an exact rational entropy vector");
    std::vector<SystemSpec> systems;
    if (derive_system == "hybrid" || derive_system == "hybrid:2x2x2") {
      for (const char* s : {"hybrid:2x2x2:a", "hybrid:2x2x2:b", "hybrid:2x2x2:c"})
        systems.push_back(parse_system(s));
    } else {
      systems.push_back(parse_system(derive_system));
    }
    Json j;
    bool derived_any = false;
    for (const auto& sys : systems) {
      LinearForm got;
      try {
        got = derive_inequality(v.rational, v.space, sys.cone);
      } catch (const FeasibleInputError&) {
        continue;  // the ray is a member of this cone
      }
      derived_any = true;
      Json coeffs = Json::array();
      for (const auto& x : got.coeffs) coeffs.push_back(format_rational(x));
      j["system"] = sys.name;
      j["coefficients"] = std::move(coeffs);
      j["violation"] = format_rational(got.eval(v.rational));
      Json valid_for = Json::array();
      for (const auto& other : systems)
        if (check_validity(got, v.space, other.cone)) valid_for.push_back(other.name);
      j["valid_for"] = std::move(valid_for);
      if (j["valid_for"].size() == systems.size()) break;  // a joint witness
    }
    if (!derived_any) throw FeasibleInputError("the ray is a member of every target cone");
    emit(j, derive_out);
  });

  // --- certify ----------------------------------------------------------------
  auto* cmd_certify = app.add_subcommand("certify", "replay the built-in certificates");
  bool certify_all = false;
  std::string certify_id, certify_out;
  cmd_certify->add_flag("--all", certify_all, "verify every certificate");
  cmd_certify->add_option("--id", certify_id, "verify one certificate");
  cmd_certify->add_option("--out", certify_out, "JSON report file");
  cmd_certify->callback([&] {
    if (!certify_all && certify_id.empty())
      throw ParseError("certify: pass --all or --id NAME");
    Json results = Json::array();
    std::size_t passed = 0, total = 0;
    bool found = false;
    for (const auto& bc : builtin_certificates()) {
      if (!certify_all && bc.id != certify_id) continue;
      found = true;
      const bool ok = verify_certificate(bc.certificate, bc.system);
      ++total;
      passed += ok ? 1 : 0;
      Json r;
      r["id"] = bc.id;
      r["system"] = bc.system_name;
      r["description"] = bc.description;
      r["verified"] = ok;
      results.push_back(std::move(r));
      std::printf("%-18s %s\n", bc.id.c_str(), ok ? "verified" : "FAILED");
    }
    if (!certify_all && !found) throw UnknownNameError("unknown certificate '" + certify_id + "'");
    std::printf("%zu/%zu certificates verified\n", passed, total);
    if (!certify_out.empty()) {
      Json j;
      j["results"] = std::move(results);
      j["passed"] = passed;
      j["total"] = total;
      save_json_file(certify_out, j);
    }
    if (passed != total) throw Error("certificate verification failed");
  });

  // --- ghz-scan -----------------------------------------------------------------
  auto* cmd_scan = app.add_subcommand("ghz-scan", "scan the quantum witness violation over d");
  int d_max = 40, d_min = 2;
  std::string scan_out;
  cmd_scan->add_option("--d-max", d_max, "largest outcome count");
  cmd_scan->add_option("--d-min", d_min, "smallest outcome count");
  cmd_scan->add_option("--out", scan_out, "CSV output file (default stdout)");
  cmd_scan->callback([&] {
    if (d_min < 2 || d_max < d_min) throw Error("ghz-scan: need 2 <= d-min <= d-max");
    std::FILE* out = scan_out.empty() ? stdout : std::fopen(scan_out.c_str(), "w");
    if (out == nullptr) throw Error("cannot write '" + scan_out + "'");
    std::fprintf(out, "d,alpha_1_0,alpha_1_1,alpha_2_0,alpha_2_1,alpha_3_0,alpha_3_1,S_value\n");
    GhzOptimum prev{};
    for (int d = d_min; d <= d_max; ++d) {
      GhzOptimizerConfig cfg;
      cfg.seed = seed;
      cfg.threads = threads;
      // Larger alphabets are slow to evaluate; fewer fresh starts plus the
      // previous optimum as a warm start keep the scan within budget.
      if (d > 6) cfg.starts = 8;
      GhzOptimum opt = optimize_ghz_violation(d, cfg);
      if (d > d_min) {
        const double warm = ghz_witness_value(d, prev.phases);
        if (warm < opt.value) opt = GhzOptimum{prev.phases, warm, true};
      }
      std::fprintf(out, "%d", d);
      for (int p = 0; p < 3; ++p)
        for (int m = 0; m < 2; ++m)
          std::fprintf(out, ",%.17g",
                       opt.phases.alpha[static_cast<std::size_t>(p)][static_cast<std::size_t>(m)]);
      std::fprintf(out, ",%.17g\n", opt.value);
      std::fflush(out);
      std::fprintf(stderr, "d=%d S=%.6f%s\n", d, opt.value, opt.converged ? "" : " (best found)");
      prev = opt;
    }
    if (out != stdout) std::fclose(out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the usage message
    return code == 0 ? 0 : 2;      // --help exits cleanly, anything else is usage
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ParseError& e) {
    diagnose("usage", e.what());
    return 2;
  } catch (const Error& e) {
    diagnose("domain", e.what());
    return 1;
  } catch (const std::exception& e) {
    diagnose("internal", e.what());
    return 1;
  }
}
