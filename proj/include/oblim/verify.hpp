#pragma once

// The acceptance battery: every reference value and time limit is pinned in
// code here so a run is a self-contained pass/fail verdict.

#include <string>
#include <vector>

namespace oblim {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool required = true;  // stretch rows are informative, never gating
  bool pass = false;
  std::string expected;
  std::string actual;
  double elapsed_s = 0.0;
};

// Runs criteria 1-7, plus the stretch rows when asked. A run never throws:
// failures (including budget refusals) land in the result rows.  A positive
// time_cap additionally caps every per-criterion time limit at that value.
std::vector<CriterionResult> run_acceptance(bool include_stretch = false,
                                            double time_cap = 0.0);

}  // namespace oblim
