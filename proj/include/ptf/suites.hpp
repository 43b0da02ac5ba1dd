#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptf/parallel.hpp"

namespace ptf {

struct SuiteOptions {
  std::uint64_t seed = 271828;
  Exec exec = Exec::parallel;
};

struct SuiteResult {
  std::string id;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Stable identifiers of the built-in verification suites, in run order.
const std::vector<std::string>& list_suites();

/// Runs one suite by id; throws std::invalid_argument for unknown ids.
SuiteResult run_suite(const std::string& id, const SuiteOptions& opts = {});

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opts = {});

}  // namespace ptf
