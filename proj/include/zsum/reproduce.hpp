#pragma once

#include <string>
#include <vector>

namespace zsum {

struct AcceptanceRow {
  std::string name;
  bool pass = false;
  bool skipped = false;  // a budget-limited row reports skipped, not failed
  std::string detail;
  int64_t millis = 0;
};

struct ReproduceOptions {
  std::string cache_dir;  // empty = no atom cache
  uint64_t budget = 100'000'000;
  int workers = 0;
};

// Runs every acceptance row in a fixed order; one entry per row.
std::vector<AcceptanceRow> reproduce_suite(const ReproduceOptions& opts = {});

bool all_rows_pass(const std::vector<AcceptanceRow>& rows);

}  // namespace zsum
