#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gmax {

struct CriterionResult {
  std::string id;
  std::string summary;
  bool pass = false;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultMasterSeed = 20130121;

// Suite names: smoothmax, stein, anticonc, comparison, gumbel, bootstrap,
// oracles, determinism, all. Prints one line per criterion to `log`.
std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& suites,
                                            std::uint64_t master_seed, std::ostream& log);

std::vector<std::string> acceptance_suite_names();

}  // namespace gmax
