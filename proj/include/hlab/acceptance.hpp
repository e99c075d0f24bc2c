#pragma once

#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace hlab {

struct CheckOutcome {
  bool passed = false;
  std::string detail;
};

struct AcceptanceCheck {
  int id = 0;
  std::string name;
  double time_limit_seconds = 0.0;
  std::function<CheckOutcome()> run;
};

struct AcceptanceResult {
  int id = 0;
  std::string name;
  bool passed = false;  // check passed and finished within its time limit
  double seconds = 0.0;
  std::string detail;
};

/// The end-to-end acceptance suite, numbered 1..13.
std::vector<AcceptanceCheck> acceptance_checks();

/// Runs the selected checks (all when `only` is empty), printing one
/// PASS/FAIL line per check to `out`.
std::vector<AcceptanceResult> run_acceptance(const std::set<int>& only, std::ostream& out);

}  // namespace hlab
