#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ifs::acceptance {

struct CriterionResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the full acceptance suite, printing one PASS/FAIL line per criterion.
std::vector<CriterionResult> run_all(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace ifs::acceptance
