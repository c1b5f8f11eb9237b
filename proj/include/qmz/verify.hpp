#pragma once
#include <string>
#include <vector>

namespace qmz {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// named verification suites, in fixed order
std::vector<std::string> suite_names();

// run one suite by name ("all" runs every suite in order)
std::vector<CheckResult> run_suite(const std::string& name);

}  // namespace qmz
