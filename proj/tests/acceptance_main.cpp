#include <cstdio>
#include <cstdlib>
#include <string>

#include "hl/acceptance.hpp"

int main(int argc, char** argv) {
  hl::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.only.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const hl::CriterionResult& r : hl::run_acceptance(options)) {
    std::printf("%s\n", hl::format_result(r).c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  return failed == 0 ? 0 : 1;
}
