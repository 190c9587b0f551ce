#pragma once

#include <string>
#include <vector>

namespace qsdc {

struct ValidationOptions {
  unsigned seed = 1;
  double tolerance_scale = 1.0;  // multiplies every suite tolerance
  int jobs = 0;                  // 0 = hardware concurrency
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Self-check suites used by `qsdc validate`: analytic channels against the
// integrator, Kraus completeness, semigroup composition, invariances, the
// integrator's convergence order, and capacity identities.
std::vector<SuiteResult> run_validation(const ValidationOptions& opts = {});

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace qsdc
