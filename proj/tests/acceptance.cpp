// Acceptance suite: one PASS/FAIL line per criterion; exits nonzero on any failure.

#include "podforge/acceptance.hpp"

#include <cstdio>

int main() {
  const auto results = podforge::run_acceptance(podforge::podforge_threads());
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s\n", podforge::format_result(r).c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
