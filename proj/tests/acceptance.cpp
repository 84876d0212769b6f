// Acceptance suite: one PASS/FAIL line per criterion on stdout, timings on stderr.

#include <iostream>

#include "kh/acceptance.hpp"

#ifndef KH_FIXTURES_DIR
#define KH_FIXTURES_DIR "fixtures"
#endif

int main(int argc, char** argv) {
  kh::AcceptanceOptions options;
  options.fixtures_dir = argc > 1 ? argv[1] : KH_FIXTURES_DIR;
  int failed = 0;
  kh::run_acceptance(options, [&failed](const kh::CriterionResult& r) {
    std::cout << kh::result_line(r) << std::endl;
    std::cerr << "  criterion " << r.id << ": " << r.seconds << " s\n";
    if (!r.pass) ++failed;
  });
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criterion(s) failed" : "acceptance: all passed")
            << std::endl;
  return failed ? 1 : 0;
}
