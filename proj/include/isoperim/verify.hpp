#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace isoperim {

struct CheckResult {
  std::string group;
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
};

/// Published constants, polynomial sign conditions, and the explicit
/// competitors checked against the kernel. Groups: thresholds, brackets,
/// competitor, fuglede, lemmas. `filter` keeps groups whose name contains it.
std::vector<CheckResult> run_paper_checks(std::string_view filter = {});

}  // namespace isoperim
