#include "entrocone/iis.hpp"

#include <algorithm>

#include "entrocone/errors.hpp"
#include "entrocone/lp.hpp"

namespace entrocone {

namespace {

std::vector<int> farkas_support(const Certificate& cert) {
  std::vector<int> s;
  for (const auto& [ref, mult] : cert.terms)
    if (ref.kind == RowRef::Inequality && mult != 0) s.push_back(ref.index);
  std::sort(s.begin(), s.end());
  return s;
}

HCone subsystem(const HCone& cone, const std::vector<int>& rows) {
  HCone sub;
  sub.space = cone.space;
  sub.equalities = cone.equalities;
  for (int i : rows) sub.inequalities.push_back(cone.inequalities[static_cast<std::size_t>(i)]);
  return sub;
}

}  // namespace

HCone iis_shrink(const HCone& cone, const Pins& pins) {
  cone.check_consistent();
  LPOutcome first = lp_feasible(cone, pins);
  if (first.feasible()) throw FeasibleInputError("iis_shrink: system is feasible under the pins");

  // Start from the Farkas support, then run the deletion filter. Whenever a
  // deletion keeps the system infeasible, jump to the (smaller) support of
  // the fresh certificate.
  std::vector<int> active = farkas_support(*first.farkas);
  std::size_t at = 0;
  while (at < active.size()) {
    std::vector<int> trial = active;
    trial.erase(trial.begin() + static_cast<long>(at));
    const LPOutcome r = lp_feasible(subsystem(cone, trial), pins);
    if (r.feasible()) {
      ++at;  // this row is necessary
      continue;
    }
    std::vector<int> support = farkas_support(*r.farkas);
    std::vector<int> next;
    next.reserve(support.size());
    for (int s : support) next.push_back(trial[static_cast<std::size_t>(s)]);
    // Resume at the first position not yet confirmed necessary.
    std::size_t keep = 0;
    for (std::size_t i = 0; i < at && keep < next.size(); ++i)
      if (active[i] == next[keep]) ++keep;
    active = std::move(next);
    at = keep;
  }
  return subsystem(cone, active);
}

}  // namespace entrocone
