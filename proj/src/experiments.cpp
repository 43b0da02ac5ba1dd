#include "ptf/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "ptf/boolean_sense.hpp"
#include "ptf/critical_index.hpp"
#include "ptf/families.hpp"
#include "ptf/gaussian_sense.hpp"
#include "ptf/io.hpp"
#include "ptf/learner.hpp"
#include "ptf/reduction.hpp"
#include "ptf/suites.hpp"
#include "ptf/truth_table.hpp"
#include "ptf/version.hpp"

namespace ptf {

namespace {

using nlohmann::json;

std::string fmt(double v) { return format_double(v); }

json config_echo(const ExperimentConfig& c) {
  return json{{"experiment", c.experiment},
              {"family",
               {{"kind", c.family.kind},
                {"n", c.family.n},
                {"d", c.family.d},
                {"terms", c.family.terms},
                {"path", c.family.path}}},
              {"grids",
               {{"epsilon", c.epsilon_grid},
                {"tau", c.tau_grid},
                {"thresholds", c.threshold_grid}}},
              {"count", c.count},
              {"samples", c.samples},
              {"trials", c.trials},
              {"seed", c.seed},
              {"out", c.out_dir},
              {"suites", c.suites},
              {"train_size", c.train_size},
              {"test_size", c.test_size},
              {"label_noise", c.label_noise},
              {"dataset", c.dataset_path}};
}

struct Sidecar {
  json extra = json::object();
  std::vector<std::string> diagnostics;
};

void write_reports(const ExperimentConfig& cfg, const CsvWriter& csv,
                   Sidecar& side, double t0, RunOutcome& out) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  const std::string base = cfg.out_dir + "/" + cfg.experiment;
  csv.save(base + ".csv");
  out.files.push_back(base + ".csv");
  json meta{{"tool", "ptfsense"},
            {"version", kVersion},
            {"config", config_echo(cfg)},
            {"threads", max_threads()},
            {"log_base", "e"},
            {"wall_seconds", wall_time() - t0},
            {"complete", out.complete},
            {"diagnostics", side.diagnostics}};
  for (auto& [k, v] : side.extra.items()) meta[k] = v;
  write_file(base + ".meta.json", meta.dump(2));
  out.files.push_back(base + ".meta.json");
  out.diagnostics = side.diagnostics;
}

MultilinearPoly family_poly(const ExperimentConfig& cfg, std::uint64_t index,
                            std::string& label) {
  const auto& fam = cfg.family;
  label = fam.kind;
  if (fam.kind == "middle-layers") {
    // The table is what analysis consumes; its Walsh expansion is the
    // canonical polynomial.
    return fourier_transform(middle_layers_symmetric(fam.n, fam.d).table);
  }
  if (fam.kind == "from-file") return poly_from_json(read_file(fam.path));
  Rng rng = Rng::stream(cfg.seed, kOpFamilyDense + index, index);
  if (fam.kind == "dense") return random_dense_poly(fam.n, fam.d, rng);
  if (fam.kind == "sparse")
    return random_sparse_poly(fam.n, fam.d,
                              fam.terms == 0 ? 2 * fam.n : fam.terms, rng);
  return regular_poly(fam.n, fam.d, rng);
}

PtfBoolean family_ptf(const ExperimentConfig& cfg, std::uint64_t index,
                      std::string& label) {
  const auto& fam = cfg.family;
  label = fam.kind;
  if (fam.kind == "middle-layers") {
    PtfBoolean f;
    f.table = middle_layers_symmetric(fam.n, fam.d).table;
    f.p = fourier_transform(*f.table);
    return f;
  }
  if (fam.kind == "from-file") {
    PtfBoolean f;
    f.p = poly_from_json(read_file(fam.path));
    f.ensure_table();
    return f;
  }
  Rng rng = Rng::stream(cfg.seed, kOpFamilyDense + index, index);
  return random_ptf_checked(fam.kind, fam.n, fam.d, fam.terms, rng);
}

RunOutcome run_analyze(const ExperimentConfig& cfg) {
  RunOutcome out;
  Sidecar side;
  const double t0 = wall_time();
  std::vector<std::string> header = {"family", "n", "d", "seed",
                                     "index",  "AS", "bound", "status"};
  for (double eps : cfg.epsilon_grid) header.push_back("ns_eps=" + fmt(eps));
  CsvWriter csv(header);
  const std::uint32_t count =
      cfg.family.kind == "middle-layers" || cfg.family.kind == "from-file"
          ? 1
          : cfg.count;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string label;
    std::vector<std::string> row;
    try {
      PtfBoolean f = family_ptf(cfg, i, label);
      const TruthTable& table = f.ensure_table();
      const double as = exact_as(table);
      const double bound = as_bound_closed(table.n, cfg.family.d);
      const auto weights = spectrum_level_weights(table);
      row = {label,
             std::to_string(table.n),
             std::to_string(cfg.family.d),
             std::to_string(cfg.seed),
             std::to_string(i),
             fmt(as),
             fmt(bound),
             "ok"};
      for (double eps : cfg.epsilon_grid)
        row.push_back(fmt(ns_from_level_weights(weights, eps)));
    } catch (const std::exception& e) {
      side.diagnostics.push_back("index " + std::to_string(i) + ": " +
                                 e.what());
      out.complete = false;
      row = {label.empty() ? cfg.family.kind : label,
             std::to_string(cfg.family.n),
             std::to_string(cfg.family.d),
             std::to_string(cfg.seed),
             std::to_string(i),
             "",
             "",
             "incomplete"};
      row.resize(header.size(), "");
    }
    csv.add_row(row);
  }
  write_reports(cfg, csv, side, t0, out);
  return out;
}

RunOutcome run_gaussian(const ExperimentConfig& cfg) {
  RunOutcome out;
  Sidecar side;
  const double t0 = wall_time();
  CsvWriter csv({"probe", "family", "n", "d", "parameter", "mean", "stderr",
                 "samples", "seed"});
  auto add = [&](const std::string& probe, const std::string& fam,
                 std::uint32_t n, std::uint32_t d, double param,
                 const Estimate& e) {
    csv.add_row({probe, fam, std::to_string(n), std::to_string(d), fmt(param),
                 fmt(e.mean), fmt(e.std_err), std::to_string(e.samples),
                 std::to_string(e.seed)});
  };
  for (std::uint32_t i = 0; i < cfg.count; ++i) {
    Rng rng = Rng::stream(cfg.seed, kOpFamilyExpansion, i);
    const HermiteExpansion p =
        cfg.family.kind == "regular"
            ? regular_expansion(cfg.family.n, cfg.family.d, rng)
            : random_expansion(cfg.family.n, cfg.family.d, rng);
    const std::string fam = "expansion-" + cfg.family.kind;
    for (double eps : cfg.epsilon_grid) {
      add("gns", fam, p.n, cfg.family.d, eps,
          estimate_gns(p, eps, cfg.samples, cfg.seed + i));
      PerturbationNorm pn =
          perturbation_norm(p, eps, cfg.samples, cfg.seed + i);
      add("perturbation-norm", fam, p.n, cfg.family.d, eps, pn.mc);
      add("perturbation-norm-exact", fam, p.n, cfg.family.d, eps,
          Estimate{pn.exact, 0.0, 0, cfg.seed + i});
    }
    add("gi", fam, p.n, cfg.family.d, 1.0,
        estimate_gi(p, 1, cfg.samples, cfg.seed + i));
    for (const TailRow& row :
         tail_probe(p.scaled(1.0 / std::sqrt(p.norm_sq())),
                    cfg.threshold_grid, cfg.samples, cfg.seed + i))
      add(row.in_regime ? "tail" : "tail-below-regime", fam, p.n,
          cfg.family.d, row.t, row.prob);
    for (const auto& [eps, est] : anticoncentration_gaussian(
             p, cfg.epsilon_grid, cfg.samples, cfg.seed + i))
      add("anticoncentration", fam, p.n, cfg.family.d, eps, est);
  }
  // Invariance probe on the matching multilinear family.
  for (std::uint32_t i = 0; i < cfg.count; ++i) {
    std::string label;
    const MultilinearPoly mp = family_poly(cfg, i, label);
    InvarianceReport inv = invariance_distance(mp, cfg.samples, cfg.seed + i);
    add("invariance-ks", label, mp.n, cfg.family.d, inv.max_influence,
        Estimate{inv.ks_distance, 0.0, inv.samples, inv.seed});
  }
  write_reports(cfg, csv, side, t0, out);
  return out;
}

RunOutcome run_critical_index(const ExperimentConfig& cfg) {
  RunOutcome out;
  Sidecar side;
  const double t0 = wall_time();
  CsvWriter csv({"family", "n", "d", "seed", "index", "tau", "critical_index",
                 "kind", "K", "tau_prime", "fraction", "trials", "status"});
  json outcomes = json::array();
  const std::vector<double> taus =
      cfg.tau_grid.empty()
          ? std::vector<double>{default_tau(cfg.family.n, cfg.family.d)}
          : cfg.tau_grid;
  for (std::uint32_t i = 0; i < cfg.count; ++i) {
    std::string label;
    const MultilinearPoly p = family_poly(cfg, i, label);
    for (double tau : taus) {
      std::vector<std::string> row;
      try {
        DecompositionOutcome d = decompose(p, tau, cfg.trials, cfg.seed + i);
        const std::string kind =
            d.kind == DecompKind::regular
                ? "regular"
                : d.kind == DecompKind::small_ci ? "small-critical-index"
                                                 : "large-critical-index";
        const double fraction = d.kind == DecompKind::small_ci
                                    ? d.fraction_regular_tail
                                    : d.fraction_constant;
        row = {label,
               std::to_string(p.n),
               std::to_string(cfg.family.d),
               std::to_string(cfg.seed),
               std::to_string(i),
               fmt(tau),
               d.report.index ? std::to_string(*d.report.index) : "inf",
               kind,
               fmt(d.K),
               fmt(d.tau_prime),
               fmt(fraction),
               std::to_string(d.trials),
               d.degenerate ? "degenerate" : "ok"};
        outcomes.push_back(json::parse(d.to_json()));
      } catch (const std::exception& e) {
        side.diagnostics.push_back("index " + std::to_string(i) + ": " +
                                   e.what());
        out.complete = false;
        row.assign(13, "");
        row[0] = label;
        row[12] = "incomplete";
      }
      csv.add_row(row);
    }
  }
  side.extra["decompositions"] = outcomes;
  write_reports(cfg, csv, side, t0, out);
  return out;
}

RunOutcome run_reduce(const ExperimentConfig& cfg) {
  RunOutcome out;
  Sidecar side;
  const double t0 = wall_time();
  CsvWriter csv({"family", "n", "d", "index", "eps", "m", "estimate",
                 "stderr", "exact_ns", "bound_over_m", "seed"});
  for (std::uint32_t i = 0; i < cfg.count; ++i) {
    std::string label;
    PtfBoolean f = family_ptf(cfg, i, label);
    const TruthTable& table = f.ensure_table();
    const auto weights = spectrum_level_weights(table);
    for (double eps : cfg.epsilon_grid) {
      if (!(eps > 0.0)) {
        side.diagnostics.push_back("reduce: eps must be positive, got " +
                                   fmt(eps));
        out.complete = false;
        continue;
      }
      ReductionReport rep = reduction_estimate(table, cfg.family.d, eps,
                                               cfg.trials, cfg.seed + i);
      csv.add_row({label, std::to_string(table.n),
                   std::to_string(cfg.family.d), std::to_string(i), fmt(eps),
                   std::to_string(rep.m), fmt(rep.estimate.mean),
                   fmt(rep.estimate.std_err),
                   fmt(ns_from_level_weights(weights, rep.noise_rate)),
                   fmt(rep.bound_over_m), std::to_string(cfg.seed + i)});
    }
  }
  write_reports(cfg, csv, side, t0, out);
  return out;
}

RunOutcome run_learn(const ExperimentConfig& cfg) {
  RunOutcome out;
  Sidecar side;
  const double t0 = wall_time();
  CsvWriter csv({"run", "n", "d", "train", "test", "label_noise", "seed",
                 "train_error", "test_error", "objective", "threshold"});
  for (std::uint32_t run = 0; run < cfg.count; ++run) {
    Dataset train, test;
    if (!cfg.dataset_path.empty()) {
      Dataset all = dataset_from_text(read_file(cfg.dataset_path));
      if (all.size() < 4)
        throw std::invalid_argument("learn: dataset too small");
      const std::size_t cut = all.size() * 3 / 4;
      train.assign(all.begin(), all.begin() + cut);
      test.assign(all.begin() + cut, all.end());
    } else {
      Rng prng = Rng::stream(cfg.seed, kOpFamilyDense, run);
      const MultilinearPoly target =
          random_dense_poly(cfg.family.n, cfg.family.d, prng);
      auto draw = [&](std::size_t count, std::uint64_t tag) {
        Rng xs = Rng::stream(cfg.seed, kOpDataset, run, tag);
        Rng noise = Rng::stream(cfg.seed, kOpLabelNoise, run, tag);
        Dataset data;
        for (std::size_t j = 0; j < count; ++j) {
          std::vector<double> x(cfg.family.n);
          for (double& v : x) v = xs.sign();
          int y =
              evaluate(target, std::span<const double>(x)) < 0.0 ? -1 : +1;
          if (noise.uniform01() < cfg.label_noise) y = -y;
          data.push_back(
              LabeledSample{std::move(x), static_cast<std::int8_t>(y)});
        }
        return data;
      };
      train = draw(cfg.train_size, 1);
      test = draw(cfg.test_size, 2);
    }
    const RegressionModel model = l1_fit(train, cfg.family.d);
    const double train_err = evaluate_model(model, train);
    const double test_err = evaluate_model(model, test);
    std::vector<double> w;
    for (const VarSet& s :
         feature_subsets(model.n, model.degree))
      w.push_back(model.weights.count(s) ? model.weights.at(s) : 0.0);
    csv.add_row({std::to_string(run), std::to_string(model.n),
                 std::to_string(model.degree), std::to_string(train.size()),
                 std::to_string(test.size()), fmt(cfg.label_noise),
                 std::to_string(cfg.seed), fmt(train_err), fmt(test_err),
                 fmt(l1_objective(train, model.degree, w)),
                 fmt(model.threshold)});
    write_file(cfg.out_dir + "/model-" + std::to_string(run) + ".json",
               model_to_json(model));
    out.files.push_back(cfg.out_dir + "/model-" + std::to_string(run) +
                        ".json");
  }
  write_reports(cfg, csv, side, t0, out);
  return out;
}

RunOutcome run_verify_bounds(const ExperimentConfig& cfg) {
  RunOutcome out;
  Sidecar side;
  const double t0 = wall_time();
  CsvWriter csv({"kind", "family", "n", "d", "index", "AS", "bound_closed",
                 "bound_recursive", "violation", "seed"});
  const std::uint32_t n_hi = std::max<std::uint32_t>(cfg.family.n, 8);
  int violations = 0;
  for (std::uint32_t n = 8; n <= n_hi; ++n) {
    for (std::uint32_t i = 0; i < cfg.count; ++i) {
      Rng rng = Rng::stream(cfg.seed, kOpFamilyDense, n * 10000 + i);
      PtfBoolean f =
          random_ptf_checked(cfg.family.kind == "middle-layers"
                                 ? "dense"
                                 : cfg.family.kind,
                             n, cfg.family.d, cfg.family.terms, rng);
      const double as = exact_as(f.ensure_table());
      const double closed = as_bound_closed(n, cfg.family.d);
      const double recursive = as_bound_recursive(n, cfg.family.d);
      const bool bad = as > closed;
      if (bad) ++violations;
      csv.add_row({"sampled", cfg.family.kind, std::to_string(n),
                   std::to_string(cfg.family.d), std::to_string(i), fmt(as),
                   fmt(closed), fmt(recursive), bad ? "yes" : "no",
                   std::to_string(cfg.seed)});
    }
    // Halfspace extremal record: the binomial-coefficient expression next
    // to the exact majority total influence (they differ by a factor of n).
    const std::uint32_t odd_n = n % 2 == 1 ? n : n - 1;
    csv.add_row({"halfspace-extremal", "majority", std::to_string(odd_n), "1",
                 "-", fmt(majority_exact_as(odd_n)),
                 fmt(halfspace_binomial_expression(odd_n)), "-", "-",
                 std::to_string(cfg.seed)});
  }
  side.extra["violations"] = violations;
  write_reports(cfg, csv, side, t0, out);
  if (violations > 0) out.exit_code = 2;
  return out;
}

RunOutcome run_suites_experiment(const ExperimentConfig& cfg) {
  RunOutcome out;
  Sidecar side;
  const double t0 = wall_time();
  CsvWriter csv({"suite", "passed", "seconds", "detail"});
  SuiteOptions opts;
  opts.seed = cfg.seed;
  const std::vector<std::string> ids =
      cfg.suites.empty() ? list_suites() : cfg.suites;
  bool all_pass = true;
  for (const std::string& id : ids) {
    SuiteResult res = run_suite(id, opts);
    all_pass = all_pass && res.passed;
    std::cout << (res.passed ? "[PASS] " : "[FAIL] ") << res.id << " ("
              << fmt(res.seconds) << " s) " << res.detail << "\n";
    std::string detail = res.detail;
    for (char& c : detail)
      if (c == ',') c = ';';
    csv.add_row({res.id, res.passed ? "pass" : "fail", fmt(res.seconds),
                 detail});
  }
  write_reports(cfg, csv, side, t0, out);
  if (!all_pass) out.exit_code = 2;
  return out;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg) {
  const std::vector<std::string> errs = validate_config(cfg);
  if (!errs.empty()) {
    RunOutcome out;
    out.exit_code = 1;
    out.diagnostics = errs;
    return out;
  }
  if (cfg.experiment == "analyze") return run_analyze(cfg);
  if (cfg.experiment == "gaussian") return run_gaussian(cfg);
  if (cfg.experiment == "critical-index") return run_critical_index(cfg);
  if (cfg.experiment == "reduce") return run_reduce(cfg);
  if (cfg.experiment == "learn") return run_learn(cfg);
  if (cfg.experiment == "verify-bounds") return run_verify_bounds(cfg);
  return run_suites_experiment(cfg);
}

}  // namespace ptf
