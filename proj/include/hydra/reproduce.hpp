#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace hydra {

struct ReproduceRow {
  int id = 0;
  std::string claim;       // short slug
  std::string anchor;      // what is being reproduced, in words
  std::string parameters;
  std::string expected;
  std::string basis;       // how the expected value was obtained
  std::string observed;
  bool pass = false;
  double seconds = 0;
};

struct ReproduceReport {
  std::vector<ReproduceRow> rows;
  // Public operations the run touched, by name.
  std::set<std::string> operations;
  // Löb truncation depth at which the verdict stabilized, 0 if none.
  int lob_depth = 0;

  bool all_pass() const;
};

struct ReproduceOptions {
  std::uint64_t seed = 20240611;
  // Criterion ids to run; empty runs all ten.
  std::vector<int> only;
};

ReproduceReport reproduce(const ReproduceOptions& opts = {});

// One block per row; timing lines are omitted when with_timing is false.
std::string format_report(const ReproduceReport& r, bool with_timing = true);
// One "PASS <id> <claim>" or "FAIL <id> <claim>" line per row.
std::string format_summary(const ReproduceReport& r);

}  // namespace hydra
