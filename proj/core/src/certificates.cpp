#include "entrocone/certificates.hpp"

#include "entrocone/errors.hpp"


namespace entrocone {

int find_system_row(const HCone& system, const std::string& expression) {
  const RatVec wanted = canonical_scaled(functional(expression, system.space).coeffs);
  for (std::size_t i = 0; i < system.inequalities.size(); ++i)
    if (canonical_scaled(system.inequalities[i].coeffs) == wanted) return static_cast<int>(i);
  throw UnknownNameError("no system row matches '" + expression + "'");
}

namespace {

struct RowTerm {
  const char* expression;
  int multiplier = 1;
};

Certificate from_rows(const HCone& system, const std::vector<RowTerm>& rows,
                      const std::vector<std::pair<int, Rational>>& equality_terms,
                      LinearForm target) {
  Certificate cert;
  for (const auto& rt : rows)
    cert.terms.push_back({RowRef{RowRef::Inequality, find_system_row(system, rt.expression)},
                          Rational(rt.multiplier)});
  for (const auto& [idx, mult] : equality_terms)
    cert.terms.push_back({RowRef{RowRef::Equality, idx}, mult});
  cert.target = std::move(target);
  cert.target.rel = Rel::GeqZero;
  return cert;
}

LinearForm registry_target(const std::string& id, const SpacePtr& space) {
  return find_inequality(id).geq_form(space);
}

}  // namespace

std::vector<BuiltinCertificate> builtin_certificates() {
  std::vector<BuiltinCertificate> out;

  // ---- monogamy of the entropic CHSH across A-B / A-C --------------------
  {
    const MarginalScenario sc = bell_scenario(3, {2, 2, 2});
    HCone system = ns_cone(sc);
    const std::vector<RowTerm> rows = {
        {"H(A0,B0)+H(A0,C1)-H(A0,B0,C1)-H(A0)"},
        {"H(A0,B1)+H(A0,C0)-H(A0,B1,C0)-H(A0)"},
        {"H(A1,B0)+H(B0,C1)-H(A1,B0,C1)-H(B0)"},
        {"H(A1,C0)+H(B1,C0)-H(A1,B1,C0)-H(C0)"},
        {"H(A0,B0,C1)-H(B0,C1)"},
        {"H(A0,B1,C0)-H(B1,C0)"},
        {"H(A1,B0,C1)-H(A1,C1)"},
        {"H(A1,B1,C0)-H(A1,B1)"},
    };
    Certificate cert = from_rows(system, rows, {}, registry_target("monogamy", system.space));
    out.push_back({"monogamy", "eight elemental nonsignaling rows summing to the monogamy form",
                   "ns:2x2x2", std::move(system), std::move(cert)});
  }

  // ---- hybrid local-nonsignaling witness, bipartition A|BC ---------------
  {
    const MarginalScenario sc = bell_scenario(3, {2, 2, 2});
    HCone system = hybrid_system(Bipartition::A_BC, sc);
    const std::vector<RowTerm> rows = {
        {"H(A0,A1,B1,C0)-H(A0,A1,C0)"},
        {"H(A0,A1,B1,C1)-H(A1,B1,C1)"},
        {"H(A0,A1,B0,C0)-H(A0,A1,B0)"},
        {"H(A0,A1,B0,C1)-H(A0,A1,C1)"},
        {"H(A1,B1,C0)+H(A0,B1,C0)-H(A0,A1,B1,C0)-H(B1,C0)"},
        {"H(A0,A1,C1)+H(A0,B1,C1)-H(A0,A1,B1,C1)-H(A0,C1)"},
        {"H(A0,A1,C0)+H(A1,B0,C0)-H(A0,A1,B0,C0)-H(A1,C0)"},
        {"H(A0,A1,B0)+H(A1,B0,C1)-H(A0,A1,B0,C1)-H(A1,B0)"},
    };
    Certificate cert = from_rows(system, rows, {}, registry_target("slns", system.space));
    out.push_back({"gtnl-a", "eight basic rows valid for the A|BC hybrid cone", "hybrid:2x2x2:a",
                   std::move(system), std::move(cert)});
  }

  // ---- the same witness for B|AC ------------------------------------------
  {
    const MarginalScenario sc = bell_scenario(3, {2, 2, 2});
    HCone system = hybrid_system(Bipartition::B_AC, sc);
    const std::vector<RowTerm> rows = {
        {"H(A0,B0,B1,C0)-H(B0,B1,C0)"},
        {"H(A0,B1,C0)+H(B0,B1,C0)-H(B1,C0)-H(A0,B0,B1,C0)"},
        {"H(A0,B0,B1,C1)-H(A0,B0,C1)"},
        {"H(A0,B0,C1)+H(A0,B1,C1)-H(A0,C1)-H(A0,B0,B1,C1)"},
        {"H(A1,B0,B1,C0)-H(A1,B0,B1)"},
        {"H(A1,B0,C0)+H(A1,B1,C0)-H(A1,C0)-H(A1,B0,B1,C0)"},
        {"H(A1,B0,B1,C1)-H(A1,B1,C1)"},
        {"H(A1,B0,B1)+H(A1,B0,C1)-H(A1,B0)-H(A1,B0,B1,C1)"},
    };
    Certificate cert = from_rows(system, rows, {}, registry_target("slns", system.space));
    out.push_back({"gtnl-b", "eight basic rows valid for the B|AC hybrid cone", "hybrid:2x2x2:b",
                   std::move(system), std::move(cert)});
  }

  // ---- and for C|AB --------------------------------------------------------
  {
    const MarginalScenario sc = bell_scenario(3, {2, 2, 2});
    HCone system = hybrid_system(Bipartition::C_AB, sc);
    const std::vector<RowTerm> rows = {
        {"H(A0,B1,C0,C1)-H(B1,C0,C1)"},
        {"H(A0,B1,C0,C1)-H(A0,C0,C1)"},
        {"H(A0,B1,C0)+H(B1,C0,C1)-H(B1,C0)-H(A0,B1,C0,C1)"},
        {"H(A0,B1,C1)+H(A0,C0,C1)-H(A0,C1)-H(A0,B1,C0,C1)"},
        {"H(A1,B0,C0,C1)-H(A1,C0,C1)"},
        {"H(A1,B0,C0)+H(A1,B0,C1)-H(A1,B0)-H(A1,B0,C0,C1)"},
        {"H(A1,B1,C0,C1)-H(A1,B1,C1)"},
        {"H(A1,B1,C0)+H(A1,C0,C1)-H(A1,C0)-H(A1,B1,C0,C1)"},
    };
    Certificate cert = from_rows(system, rows, {}, registry_target("slns", system.space));
    out.push_back({"gtnl-c", "eight basic rows valid for the C|AB hybrid cone", "hybrid:2x2x2:c",
                   std::move(system), std::move(cert)});
  }

  // ---- bilocal activation inequality (single-choice hub) -----------------
  {
    const MarginalScenario sc = bilocal_scenario({2, 1, 1});
    HCone system = local_system(sc);
    for (auto& eq : bilocal_constraints(sc, BilocalMode::Extended)) system.equalities.push_back(eq);
    const std::vector<RowTerm> rows = {
        {"H(A0)+H(C)-H(A0,C)"},
        {"H(A0,A1,B,C)-H(A0,A1,C)"},
        {"H(A0,A1)+H(A0,B)-H(A0,A1,B)-H(A0)"},
        {"H(A0,A1,B)+H(A1,B,C)-H(A0,A1,B,C)-H(A1,B)"},
    };
    // The independence constraint H(A0,A1)+H(C)-H(A0,A1,C) = 0 enters with
    // multiplier -1.
    Certificate cert = from_rows(system, rows, {{1, Rational(-1)}},
                                 registry_target("bilocal5", system.space));
    out.push_back({"bilocal5", "four Shannon rows plus the source-independence constraint",
                   "local:2x1x1+bilocality", std::move(system), std::move(cert)});
  }

  // ---- genuine nonbilocality witness with marginal terms -----------------
  {
    const MarginalScenario sc = bilocal_scenario({2, 2, 2});
    HCone system = local_system(sc);
    for (auto& eq : bilocal_constraints(sc, BilocalMode::Extended)) system.equalities.push_back(eq);
    const std::vector<RowTerm> rows = {
        {"H(A0,A1,B0,B1,C0,C1)-H(A0,A1,B0,B1,C0)"},
        {"H(A0,A1,B0,B1,C0,C1)-H(A0,A1,B0,C0,C1)"},
        {"H(B0,C1)+H(C0,C1)-H(B0,C0,C1)-H(C1)"},
        {"H(A0,A1)+H(A1,C1)-H(A0,A1,C1)-H(A1)"},
        {"H(A0,B0,C1)+H(B0,C0,C1)-H(A0,B0,C0,C1)-H(B0,C1)"},
        {"H(A1,B1,C0)+H(A1,B1,C1)-H(A1,B1,C0,C1)-H(A1,B1)"},
        {"H(A0,A1,C1)+H(A1,C0,C1)-H(A0,A1,C0,C1)-H(A1,C1)"},
        {"H(A0,B0,B1,C0)+H(A0,B0,C0,C1)-H(A0,B0,B1,C0,C1)-H(A0,B0,C0)"},
        {"H(A1,B0,C0,C1)+H(A1,B1,C0,C1)-H(A1,B0,B1,C0,C1)-H(A1,C0,C1)"},
        {"H(A0,A1,B0,B1,C0)+H(A0,B0,B1,C0,C1)-H(A0,A1,B0,B1,C0,C1)-H(A0,B0,B1,C0)"},
        {"H(A0,A1,B0,C0,C1)+H(A1,B0,B1,C0,C1)-H(A0,A1,B0,B1,C0,C1)-H(A1,B0,C0,C1)"},
        // The listed sum closes only together with I(A1:C1) >= 0; the
        // independence constraint alone leaves exactly this residual.
        {"H(A1)+H(C1)-H(A1,C1)"},
    };
    Certificate cert = from_rows(system, rows, {{1, Rational(-1)}},
                                 registry_target("sbl", system.space));
    out.push_back({"sbl", "eleven Shannon rows, one extra mutual-information row, and the "
                          "source-independence constraint",
                   "local:2x2x2+bilocality", std::move(system), std::move(cert)});
  }

  // ---- chain-rule tripartite witness --------------------------------------
  {
    const MarginalScenario sc = bell_scenario(3, {2, 2, 2});
    HCone system = local_system(sc);
    // The chain-rule decomposition of the joint entropy, unrolled into
    // elemental rows: monotonicity drops from the full set, then one
    // conditioning step at a time.
    const std::vector<RowTerm> rows = {
        {"H(A0,A1,B0,B1,C0,C1)-H(A0,B0,B1,C0,C1)"},
        {"H(A0,A1,B0,B1,C0,C1)-H(A0,A1,B1,C0,C1)"},
        {"H(A0,A1,B0,B1,C0,C1)-H(A0,A1,B0,B1,C1)"},
        {"H(A0,B0,B1,C0,C1)+H(A1,B0,B1,C0,C1)-H(B0,B1,C0,C1)-H(A0,A1,B0,B1,C0,C1)"},
        {"H(A0,B0,C0,C1)+H(B0,B1,C0,C1)-H(B0,C0,C1)-H(A0,B0,B1,C0,C1)"},
        {"H(A0,B0,C0)+H(B0,C0,C1)-H(B0,C0)-H(A0,B0,C0,C1)"},
        {"H(A0,A1,B1,C0,C1)+H(A0,B0,B1,C0,C1)-H(A0,B1,C0,C1)-H(A0,A1,B0,B1,C0,C1)"},
        {"H(A0,A1,B0,B1,C1)+H(A0,B0,B1,C0,C1)-H(A0,B0,B1,C1)-H(A0,A1,B0,B1,C0,C1)"},
        {"H(A1,B0,C0,C1)+H(A1,B1,C0,C1)-H(A1,C0,C1)-H(A1,B0,B1,C0,C1)"},
        {"H(A1,B0,C1)+H(A1,C0,C1)-H(A1,C1)-H(A1,B0,C0,C1)"},
        {"H(A0,B0,B1,C1)+H(A0,B1,C0,C1)-H(A0,B1,C1)-H(A0,B0,B1,C0,C1)"},
        {"H(A1,B1,C0)+H(A1,B1,C1)-H(A1,B1)-H(A1,B1,C0,C1)"},
    };
    Certificate cert = from_rows(system, rows, {}, registry_target("m3", system.space));
    out.push_back({"m3", "chain-rule proof expressed over the elemental rows", "local:2x2x2",
                   std::move(system), std::move(cert)});
  }

  // ---- CHSH projection ----------------------------------------------------
  {
    const MarginalScenario sc = bell_scenario(2, {2, 2});
    HCone system = local_system(sc);
    const std::vector<RowTerm> rows = {
        {"H(A0,A1,B0,B1)-H(A1,B0,B1)"},
        {"H(A0,A1,B0,B1)-H(A0,A1,B1)"},
        {"H(A0,B0,B1)+H(A1,B0,B1)-H(B0,B1)-H(A0,A1,B0,B1)"},
        {"H(A0,A1,B1)+H(A1,B0,B1)-H(A1,B1)-H(A0,A1,B0,B1)"},
        {"H(A1,B0)+H(B0,B1)-H(B0)-H(A1,B0,B1)"},
        {"H(A0,B0)+H(A0,B1)-H(A0)-H(A0,B0,B1)"},
    };
    Certificate cert = from_rows(system, rows, {}, registry_target("echsh", system.space));
    out.push_back({"echsh-projection",
                   "the entropic CHSH inequality as a combination of the four-variable "
                   "Shannon rows",
                   "local:2x2", std::move(system), std::move(cert)});
  }

  return out;
}

CertificateReport verify_all_certificates() {
  CertificateReport report;
  for (const auto& bc : builtin_certificates()) {
    const bool ok = verify_certificate(bc.certificate, bc.system);
    report.results.emplace_back(bc.id, ok);
    report.total += 1;
    if (ok) report.passed += 1;
  }
  return report;
}

}  // namespace entrocone
