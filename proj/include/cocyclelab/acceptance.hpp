#pragma once

#include <string>
#include <vector>

namespace cocyclelab {

// One gate check: exact identities, oracle equivalences, and the explicit
// inequalities, each with its runtime budget. Tolerances are pinned in the
// implementation, not configurable.
struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  std::string detail;  // key measured quantities, empty on clean exact passes
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;

  bool all_passed() const;
};

// Runs the whole gate, or just the listed criterion numbers (empty = all).
AcceptanceReport run_acceptance(const std::vector<int>& only = {});

// One line per criterion: "PASS  1 fox-identity (0.42s < 10s) ..."
std::string acceptance_summary(const AcceptanceReport& report);

}  // namespace cocyclelab
