// Runs every built-in verification suite and prints one pass/fail line per
// suite.  Exit code 0 iff all pass.

#include <cstdio>

#include "ptf/suites.hpp"

int main() {
  int failures = 0;
  for (const std::string& id : ptf::list_suites()) {
    const ptf::SuiteResult r = ptf::run_suite(id);
    std::printf("[%s] %s (%.1f s) %s\n", r.passed ? "PASS" : "FAIL",
                r.id.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failures;
  }
  if (failures) std::printf("%d suite(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
