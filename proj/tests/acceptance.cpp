// Acceptance gate: runs every verification criterion against the shipped
// corpus and prints one pass/fail line per criterion. Exits nonzero if any
// criterion fails. The corpus directory comes from --corpus (default:
// compile-time PICGEN_CORPUS_DIR).
#include <cstring>
#include <iostream>
#include <string>

#include "picgen/suite.hpp"

#ifndef PICGEN_CORPUS_DIR
#define PICGEN_CORPUS_DIR "corpus"
#endif

int main(int argc, char** argv) {
  std::string corpus_dir = PICGEN_CORPUS_DIR;
  std::uint64_t guard = 1000000;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--corpus") == 0 && i + 1 < argc) {
      corpus_dir = argv[++i];
    } else if (std::strcmp(argv[i], "--guard") == 0 && i + 1 < argc) {
      guard = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::cerr << "usage: acceptance [--corpus DIR] [--guard N]\n";
      return 2;
    }
  }

  picgen::VerdictReport report;
  try {
    report = picgen::run_suite_dir(corpus_dir, guard);
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << "\n";
    return 1;
  }
  for (const auto& check : report.checks)
    std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << ": "
              << check.detail << "\n";
  std::cout << (report.all_pass() ? "acceptance: all criteria passed"
                                  : "acceptance: FAILURES present")
            << "\n";
  return report.all_pass() ? 0 : 1;
}
