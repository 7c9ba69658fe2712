#pragma once

#include <string>
#include <vector>

namespace cfode {

// Pass/fail outcome of one acceptance criterion of the toolkit's
// headline claims (scheme equivalence at alpha = 1, modified-method
// convergence, original-method invalidity, the inconsistency ratio, the
// discrete derivative's fidelity, catalog self-certification, and
// determinism of this very report).
struct CriterionResult {
  int id;
  std::string title;
  bool passed;
  std::string detail;  // deterministic, human-readable evidence
};

std::vector<CriterionResult> run_acceptance_criteria();

bool all_passed(const std::vector<CriterionResult>& results);

// One line per criterion plus a summary; byte-identical across runs.
std::string reproduce_report();

}  // namespace cfode
