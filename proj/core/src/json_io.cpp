#include "entrocone/json_io.hpp"

#include <fstream>

#include "entrocone/errors.hpp"

namespace entrocone {

Json space_to_json(const CoordinateSpace& space) {
  Json sets = Json::array();
  for (VarSet s : space.sets()) {
    Json names = Json::array();
    for (const auto& n : space.set_names(s)) names.push_back(n);
    sets.push_back(std::move(names));
  }
  Json j;
  j["variables"] = space.variables();
  j["space"] = std::move(sets);
  return j;
}

SpacePtr space_from_json(const Json& j) {
  if (!j.contains("variables") || !j.contains("space"))
    throw ParseError("space JSON needs 'variables' and 'space'");
  std::vector<std::string> vars = j.at("variables").get<std::vector<std::string>>();
  auto var_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return static_cast<int>(i);
    throw ParseError("space JSON references unknown variable '" + name + "'");
  };
  std::vector<VarSet> sets;
  for (const auto& entry : j.at("space")) {
    VarSet s = 0;
    for (const auto& name : entry) s |= VarSet{1} << var_index(name.get<std::string>());
    sets.push_back(s);
  }
  return CoordinateSpace::make(std::move(vars), std::move(sets));
}

namespace {

Json rat_row_to_json(const RatVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

RatVec rat_row_from_json(const Json& j, int dim) {
  RatVec out;
  for (const auto& x : j) out.push_back(parse_rational(x.get<std::string>()));
  if (static_cast<int>(out.size()) != dim) throw ParseError("row length does not match the space");
  return out;
}

}  // namespace

Json hcone_to_json(const HCone& cone) {
  Json j = space_to_json(*cone.space);
  Json ineqs = Json::array();
  for (const auto& f : cone.inequalities) ineqs.push_back(rat_row_to_json(f.coeffs));
  Json eqs = Json::array();
  for (const auto& f : cone.equalities) eqs.push_back(rat_row_to_json(f.coeffs));
  j["inequalities"] = std::move(ineqs);
  j["equalities"] = std::move(eqs);
  return j;
}

HCone hcone_from_json(const Json& j) {
  HCone cone;
  cone.space = space_from_json(j);
  for (const auto& row : j.value("inequalities", Json::array()))
    cone.inequalities.push_back({rat_row_from_json(row, cone.dim()), Rel::GeqZero});
  for (const auto& row : j.value("equalities", Json::array()))
    cone.equalities.push_back({rat_row_from_json(row, cone.dim()), Rel::EqZero});
  cone.check_consistent();
  return cone;
}

Json vcone_to_json(const VCone& cone) {
  Json j = space_to_json(*cone.space);
  Json rays = Json::array();
  for (const auto& r : cone.rays) rays.push_back(rat_row_to_json(r));
  j["rays"] = std::move(rays);
  return j;
}

VCone vcone_from_json(const Json& j) {
  VCone cone;
  cone.space = space_from_json(j);
  for (const auto& row : j.value("rays", Json::array()))
    cone.rays.push_back(rat_row_from_json(row, cone.space->dim()));
  return cone;
}

Json entropy_vector_to_json(const EntropyVector& v) {
  Json j = space_to_json(*v.space);
  if (v.kind == ScalarKind::Rational) {
    j["kind"] = "rational";
    j["values"] = rat_row_to_json(v.rational);
  } else {
    j["kind"] = "float64";
    Json vals = Json::array();
    for (double x : v.values) vals.push_back(x);
    j["values"] = std::move(vals);
  }
  return j;
}

EntropyVector entropy_vector_from_json(const Json& j) {
  SpacePtr space = space_from_json(j);
  const std::string kind = j.value("kind", "float64");
  if (kind == "rational")
    return EntropyVector::exact(space, rat_row_from_json(j.at("values"), space->dim()));
  std::vector<double> vals;
  for (const auto& x : j.at("values")) vals.push_back(x.get<double>());
  if (static_cast<int>(vals.size()) != space->dim())
    throw ParseError("entropy vector length does not match the space");
  return EntropyVector::floating(space, std::move(vals));
}

Json scenario_spec_to_json(const ScenarioSpec& spec) {
  Json j;
  switch (spec.kind) {
    case ScenarioKind::Bell:
      j["kind"] = "bell";
      break;
    case ScenarioKind::Bilocal:
      j["kind"] = "bilocal";
      break;
    case ScenarioKind::InformationCausality:
      j["kind"] = "ic";
      break;
  }
  j["settings"] = spec.settings;
  if (spec.kind == ScenarioKind::Bilocal)
    j["bilocal_mode"] = spec.bilocal_mode == BilocalMode::Observable ? "observable" : "extended";
  return j;
}

ScenarioSpec scenario_spec_from_json(const Json& j) {
  ScenarioSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bell")
    spec.kind = ScenarioKind::Bell;
  else if (kind == "bilocal")
    spec.kind = ScenarioKind::Bilocal;
  else if (kind == "ic")
    spec.kind = ScenarioKind::InformationCausality;
  else
    throw ParseError("unknown scenario kind '" + kind + "'");
  spec.settings = j.value("settings", std::vector<int>{});
  const std::string mode = j.value("bilocal_mode", "observable");
  spec.bilocal_mode = mode == "extended" ? BilocalMode::Extended : BilocalMode::Observable;
  return spec;
}

Json report_to_json(const ClassificationReport& report) {
  Json j;
  j["scenario"] = scenario_shorthand(report.spec);
  if (!report.method_note.empty()) j["method"] = report.method_note;
  if (!report.bilocal_mode.empty()) j["bilocal_mode"] = report.bilocal_mode;
  Json classes = Json::array();
  for (const auto& cls : report.classes) {
    Json c;
    c["representative"] = rat_row_to_json(cls.representative);
    c["orbit_size"] = cls.orbit_size;
    Json labels = Json::array();
    for (Label l : cls.labels) labels.push_back(label_name(l));
    c["labels"] = std::move(labels);
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  Json counts;
  counts["total"] = report.counts.count("total") ? report.counts.at("total") : report.classes.size();
  for (const auto& [name, n] : report.counts)
    if (name != "total") counts[name] = n;
  j["counts"] = std::move(counts);
  j["total_rays"] = report.total_rays;
  return j;
}

Json certificate_to_json(const Certificate& cert, const HCone& system) {
  Json terms = Json::array();
  for (const auto& [ref, mult] : cert.terms) {
    Json t;
    t["row"] = row_ref_label(ref);
    t["multiplier"] = format_rational(mult);
    if (ref.kind == RowRef::Inequality)
      t["coefficients"] =
          rat_row_to_json(system.inequalities[static_cast<std::size_t>(ref.index)].coeffs);
    terms.push_back(std::move(t));
  }
  Json j;
  j["terms"] = std::move(terms);
  j["target"] = rat_row_to_json(cert.target.coeffs);
  if (cert.constant != 0) j["constant"] = format_rational(cert.constant);
  return j;
}

std::string dump_deterministic(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << dump_deterministic(j);
}

}  // namespace entrocone
