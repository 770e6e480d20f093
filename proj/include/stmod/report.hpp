#pragma once

// Theorem-verification reports used by the CLI and the golden test.

#include <cstdint>
#include <string>
#include <vector>

#include "stmod/io.hpp"

namespace stmod {

struct ReportRow {
  std::string check;
  std::string replay;  // CLI invocation or operation + inputs
  std::string result;
  bool pass = false;
};

struct Report {
  std::string name;
  std::vector<ReportRow> rows;
  std::uint64_t seed = 0;
  bool pass() const;
};

struct ReportConfig {
  int cap = kDefaultDegreeCap;
  std::uint64_t seed = 0x5eed;
  bool conjugacy_reduce = false;
  GroupPtr group;  // thm33 only; null means the default list
  int p = 0;
};

const std::vector<std::string>& report_names();
Report run_report(const std::string& name, const ReportConfig& cfg = {});
std::string format_report(const Report& r);
io::json report_to_json(const Report& r);

}  // namespace stmod
