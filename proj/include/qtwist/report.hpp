#pragma once

#include <string>
#include <vector>

namespace qtwist {

/// Outcome of one verification check.
struct CheckResult {
  std::string id;
  std::string ref;  // which identity or construction the check exercises
  bool pass = false;
  std::string detail;
};

using CheckList = std::vector<CheckResult>;

inline bool all_pass(const CheckList& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace qtwist
