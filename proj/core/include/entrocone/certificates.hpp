#pragma once

#include <string>
#include <vector>

#include "entrocone/classify.hpp"
#include "entrocone/cone.hpp"

namespace entrocone {

/// A frozen proof object: nonnegative elemental-row combination (plus
/// signed equality terms) reproducing a registry inequality exactly.
struct BuiltinCertificate {
  std::string id;
  std::string description;
  std::string system_name;
  HCone system;
  Certificate certificate;
};

/// The full registry of proofs: monogamy, the hybrid local-nonsignaling
/// witness for each bipartition, both bilocal inequalities, the chain-rule
/// tripartite witness, and the CHSH projection.
std::vector<BuiltinCertificate> builtin_certificates();

struct CertificateReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::vector<std::pair<std::string, bool>> results;
};

CertificateReport verify_all_certificates();

/// Finds the inequality row of `system` whose canonical scaling matches
/// the expression; throws UnknownNameError with the expression otherwise.
int find_system_row(const HCone& system, const std::string& expression);

}  // namespace entrocone
