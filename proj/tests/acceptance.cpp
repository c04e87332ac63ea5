#include <iostream>

#include "semitall/acceptance.hpp"

int main() {
  semitall::AcceptanceConfig cfg;
  const auto results = semitall::run_acceptance(cfg, &std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
