// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  The same rows back the CLI `reproduce` subcommand.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "zsum/reproduce.hpp"

int main(int argc, char** argv) {
  zsum::ReproduceOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--cache-dir") && i + 1 < argc) opts.cache_dir = argv[++i];
    if (!std::strcmp(argv[i], "--budget") && i + 1 < argc) opts.budget = std::strtoull(argv[++i], nullptr, 10);
    if (!std::strcmp(argv[i], "--workers") && i + 1 < argc) opts.workers = std::atoi(argv[++i]);
  }
  auto rows = zsum::reproduce_suite(opts);
  for (const auto& row : rows) {
    const char* status = row.skipped ? "SKIP" : row.pass ? "PASS" : "FAIL";
    std::printf("%s  criterion %-48s  (%lld ms)%s%s\n", status, row.name.c_str(),
                static_cast<long long>(row.millis), row.detail.empty() ? "" : "  ",
                row.detail.c_str());
  }
  bool ok = zsum::all_rows_pass(rows);
  std::printf("%s\n", ok ? "acceptance: all criteria pass" : "acceptance: FAILURES present");
  return ok ? 0 : 2;
}
