#pragma once

#include <string>
#include <vector>

namespace fracheat {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

// Self-contained property suite behind the CLI `verify` command.
// `thorough` enables the larger Monte Carlo sample sizes.
std::vector<CheckResult> run_verification(bool thorough = false);

}  // namespace fracheat
