#include "cocyclelab/acceptance.hpp"

#include <cstdio>

int main() {
  const auto report = cocyclelab::run_acceptance();
  std::fputs(cocyclelab::acceptance_summary(report).c_str(), stdout);
  return report.all_passed() ? 0 : 1;
}
