// Acceptance suite runner: one PASS/FAIL line per criterion, nonzero exit on
// any failure.
#include <iostream>

#include "overlap_ifs/acceptance.hpp"

int main() {
  auto results = ifs::acceptance::run_all(std::cout);
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  std::cout << (failed == 0 ? "ACCEPTANCE: all criteria passed"
                            : "ACCEPTANCE: " + std::to_string(failed) + " criterion(s) failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
