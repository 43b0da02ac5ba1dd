#pragma once

#include <string>
#include <vector>

#include "ptf/config.hpp"

namespace ptf {

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 1 usage/config error, 2 suite failure
  std::vector<std::string> files;        // written report paths
  std::vector<std::string> diagnostics;  // validation / budget messages
  bool complete = true;                  // false when rows were skipped
};

/// Executes one experiment: writes <experiment>.csv and a JSON metadata
/// sidecar into cfg.out_dir.  Deterministic for a fixed config and seed at
/// any thread count; rows are ordered canonically by parameters.
RunOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace ptf
