#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fqdist/acceptance.hpp"

int main(int argc, char** argv) {
  const auto result = fqdist::run_acceptance();
  for (const auto& c : result.criteria) {
    std::printf("%s  criterion %d  %-28s checks=%zu violations=%zu vacuous=%zu refused=%zu", c.passed ? "PASS" : "FAIL",
                c.id, c.name.c_str(), c.checks, c.violations, c.vacuous, c.refused);
    if (c.id == 7) {
      std::printf("  (timed with criterion 6)\n");
    } else {
      std::printf("  %.2fs\n", c.elapsed_ms / 1000.0);
    }
    if (!c.passed) std::printf("      first failure: %s\n", c.first_failure.c_str());
  }

  std::stringstream jsonl;
  result.report.write_jsonl(jsonl);
  const auto schema_errors = fqdist::validate_report_jsonl(jsonl);
  std::printf("%s  report schema  errors=%zu\n", schema_errors.empty() ? "PASS" : "FAIL", schema_errors.size());
  for (const auto& e : schema_errors) std::printf("      %s\n", e.c_str());

  if (argc > 1) {
    std::ofstream out(argv[1]);
    result.report.write_jsonl(out);
  }
  return result.passed() && schema_errors.empty() ? 0 : 1;
}
