// One line per acceptance criterion; exits nonzero if any is red.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "tenrank/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  auto results = tenrank::run_acceptance(only);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << tenrank::format_result(r) << '\n';
    for (const auto& line : r.log) std::cout << "    " << line << '\n';
    if (!r.pass) ++failed;
  }
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
