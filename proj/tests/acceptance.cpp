// One line per acceptance criterion; exits nonzero if any fails.

#include <iostream>

#include <cusg/cli.hpp>

int main() {
  auto results = cusg::cli::run_all_criteria(&std::cout);
  int  failed  = 0;
  for (auto const& r : results) {
    failed += r.pass ? 0 : 1;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
