#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ptf {

/// One experiment request.  Parsed from a JSON config document; CLI flags
/// override individual fields afterwards.  All randomness flows from the
/// root seed; there is no wall-clock seeding.
struct ExperimentConfig {
  std::string experiment;  // analyze | gaussian | critical-index | reduce |
                           // learn | verify-bounds | suite

  struct FamilySpec {
    std::string kind = "dense";  // dense | sparse | regular | middle-layers |
                                 // from-file
    std::uint32_t n = 10;
    std::uint32_t d = 2;
    std::uint32_t terms = 0;     // sparse family size (0 = default 2n)
    std::string path;            // from-file
  } family;

  std::uint32_t count = 20;          // polynomials per grid point
  std::vector<double> epsilon_grid = {0.05, 0.1, 0.3};
  std::vector<double> tau_grid;      // empty = default_tau(n, d)
  std::vector<double> threshold_grid = {0.5, 1.0, 2.0, 3.0};
  std::uint64_t samples = 1000000;
  std::uint64_t trials = 2000;
  std::uint64_t seed = 1;
  bool seed_set = true;
  std::string out_dir = "out";
  std::vector<std::string> suites;   // suite experiment: empty = all

  // learn experiment
  std::uint32_t train_size = 5000;
  std::uint32_t test_size = 2000;
  double label_noise = 0.1;
  std::string dataset_path;          // optional external dataset
};

/// Parses and validates; error messages carry the JSON field path.
ExperimentConfig parse_config(const std::string& json_text);

/// Validates a fully assembled config (also applied after flag overrides).
/// Returns the list of diagnostics; empty means valid.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

}  // namespace ptf
