#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtwist/report.hpp"

namespace qtwist {

struct VerifyConfig {
  int p = 2;
  int m = 1;
  int n_max = 8;      // divided-power index bound for coefficient checks
  int degree = 8;     // x-degree bound for random functions
  int trunc_n = 2;    // adic order N
  int deg_d = 1;      // x-degree bound for truncated sections
  std::uint64_t seed = 42;
  int samples = 100;  // random cases per property check

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite). Checks come back sorted by id;
/// exceptions inside a check are reported as failures.
CheckList run_suite(const std::string& name, const VerifyConfig& cfg);

}  // namespace qtwist
