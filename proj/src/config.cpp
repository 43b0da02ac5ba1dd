#include "ptf/config.hpp"

#include <set>
#include <stdexcept>

#include "json.hpp"

namespace ptf {

using nlohmann::json;

namespace {

template <class T>
void read_field(const json& obj, const char* key, T& out,
                const std::string& path) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("config." + path + key + ": wrong type");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: not valid JSON: ") +
                                e.what());
  }
  ExperimentConfig cfg;
  read_field(doc, "experiment", cfg.experiment, "");
  if (doc.contains("family")) {
    const json& fam = doc.at("family");
    read_field(fam, "kind", cfg.family.kind, "family.");
    read_field(fam, "n", cfg.family.n, "family.");
    read_field(fam, "d", cfg.family.d, "family.");
    read_field(fam, "terms", cfg.family.terms, "family.");
    read_field(fam, "path", cfg.family.path, "family.");
  }
  if (doc.contains("grids")) {
    const json& grids = doc.at("grids");
    read_field(grids, "epsilon", cfg.epsilon_grid, "grids.");
    read_field(grids, "tau", cfg.tau_grid, "grids.");
    read_field(grids, "thresholds", cfg.threshold_grid, "grids.");
  }
  read_field(doc, "count", cfg.count, "");
  read_field(doc, "samples", cfg.samples, "");
  read_field(doc, "trials", cfg.trials, "");
  read_field(doc, "out", cfg.out_dir, "");
  read_field(doc, "suites", cfg.suites, "");
  read_field(doc, "train_size", cfg.train_size, "");
  read_field(doc, "test_size", cfg.test_size, "");
  read_field(doc, "label_noise", cfg.label_noise, "");
  read_field(doc, "dataset", cfg.dataset_path, "");
  if (doc.contains("seed")) {
    read_field(doc, "seed", cfg.seed, "");
    cfg.seed_set = true;
  } else {
    cfg.seed_set = false;
  }
  return cfg;
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> errs;
  static const std::set<std::string> experiments = {
      "analyze",  "gaussian", "critical-index", "reduce",
      "learn",    "verify-bounds", "suite"};
  if (!experiments.count(cfg.experiment))
    errs.push_back("config.experiment: must be one of analyze, gaussian, "
                   "critical-index, reduce, learn, verify-bounds, suite");
  static const std::set<std::string> kinds = {"dense", "sparse", "regular",
                                              "middle-layers", "from-file"};
  if (!kinds.count(cfg.family.kind))
    errs.push_back("config.family.kind: must be one of dense, sparse, "
                   "regular, middle-layers, from-file");
  if (cfg.family.kind == "from-file" && cfg.family.path.empty())
    errs.push_back("config.family.path: required when kind is from-file");
  if (cfg.family.n < 1)
    errs.push_back("config.family.n: must be >= 1");
  if (cfg.family.d < 1 || cfg.family.d > cfg.family.n)
    errs.push_back("config.family.d: must satisfy 1 <= d <= n");
  if (cfg.epsilon_grid.empty())
    errs.push_back("config.grids.epsilon: must be nonempty");
  for (double e : cfg.epsilon_grid)
    if (!(e >= 0.0 && e <= 1.0)) {
      errs.push_back("config.grids.epsilon: entries must lie in [0, 1]");
      break;
    }
  for (double t : cfg.tau_grid)
    if (!(t > 0.0 && t < 1.0)) {
      errs.push_back("config.grids.tau: entries must lie in (0, 1)");
      break;
    }
  if (cfg.experiment == "gaussian" && cfg.threshold_grid.empty())
    errs.push_back("config.grids.thresholds: must be nonempty");
  if (cfg.count < 1) errs.push_back("config.count: must be >= 1");
  if (cfg.samples < 2) errs.push_back("config.samples: must be >= 2");
  if (cfg.trials < 2) errs.push_back("config.trials: must be >= 2");
  if (!cfg.seed_set)
    errs.push_back("config.seed: required (runs never seed from the clock)");
  if (cfg.out_dir.empty()) errs.push_back("config.out: must be nonempty");
  if (cfg.experiment == "learn") {
    if (cfg.train_size < 2) errs.push_back("config.train_size: must be >= 2");
    if (cfg.test_size < 1) errs.push_back("config.test_size: must be >= 1");
    if (!(cfg.label_noise >= 0.0 && cfg.label_noise < 0.5))
      errs.push_back("config.label_noise: must lie in [0, 0.5)");
  }
  return errs;
}

}  // namespace ptf
