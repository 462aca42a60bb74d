// End-to-end verification matrix: each criterion exercises one published
// numerical example or invariant family at a pinned tolerance and reports a
// single pass/fail line.
#ifndef COMET_ACCEPTANCE_HPP
#define COMET_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace comet {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::int64_t mc_trials = 1000000;  // criterion 9 sample size
  std::uint64_t seed = 2013;
  int threads = 0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

}  // namespace comet

#endif
