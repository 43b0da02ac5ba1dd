#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "ptf/config.hpp"
#include "ptf/experiments.hpp"
#include "ptf/families.hpp"
#include "ptf/io.hpp"
#include "ptf/rng.hpp"

using namespace ptf;

TEST_CASE("format_double round-trips bit-exactly") {
  Rng rng = Rng::stream(23, 1);
  for (int t = 0; t < 200; ++t) {
    const double v = rng.normal() * std::pow(10.0, (int)rng.below(8) - 4);
    double back = 0.0;
    std::sscanf(format_double(v).c_str(), "%lf", &back);
    CHECK(back == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("polynomial documents round trip") {
  MultilinearPoly p(4);
  p.add_term({1, 3}, 0.25);
  p.add_term({}, -1.5);
  p.add_term({2}, 1e-9);
  const std::string doc = poly_to_json(p);
  CHECK(doc.find("\"basis\": \"monomial\"") != std::string::npos);
  const MultilinearPoly q = poly_from_json(doc);
  CHECK(q.n == 4);
  CHECK(q.coeffs == p.coeffs);
  CHECK_THROWS(poly_from_json("{\"n\": 2, \"basis\": \"hermite\", "
                              "\"terms\": []}"));
  // duplicate term keys rejected
  CHECK_THROWS(poly_from_json(
      "{\"n\":2,\"basis\":\"monomial\",\"terms\":[{\"vars\":[1],\"coeff\":1}"
      ",{\"vars\":[1],\"coeff\":2}]}"));
  // unsorted vars rejected
  CHECK_THROWS(poly_from_json(
      "{\"n\":3,\"basis\":\"monomial\",\"terms\":[{\"vars\":[2,1],"
      "\"coeff\":1}]}"));
}

TEST_CASE("hermite documents round trip") {
  HermiteExpansion p(3);
  p.add_term({2, 0, 1}, 0.5);
  p.add_term({}, 2.0);
  const HermiteExpansion q = expansion_from_json(expansion_to_json(p));
  CHECK(q.n == 3);
  CHECK(q.coeffs == p.coeffs);
}

TEST_CASE("model documents round trip") {
  RegressionModel m;
  m.n = 3;
  m.degree = 2;
  m.weights[{1, 2}] = -0.75;
  m.weights[{}] = 0.1;
  m.threshold = 0.325;
  const RegressionModel back = model_from_json(model_to_json(m));
  CHECK(back.n == m.n);
  CHECK(back.degree == m.degree);
  CHECK(back.threshold == m.threshold);
  CHECK(back.weights == m.weights);
}

TEST_CASE("datasets parse from delimited text") {
  const std::string text =
      "# comment\n"
      "1 -1 1 1\n"
      "-1,1,-1,-1\n"
      "0.5\t0.25\t-0.125\t1\n";
  const Dataset data = dataset_from_text(text);
  REQUIRE(data.size() == 3);
  CHECK(data[0].x == std::vector<double>{1, -1, 1});
  CHECK(data[0].y == 1);
  CHECK(data[1].y == -1);
  CHECK(data[2].x[2] == -0.125);
  const Dataset again = dataset_from_text(dataset_to_text(data));
  REQUIRE(again.size() == 3);
  CHECK(again[2].x == data[2].x);
  CHECK_THROWS(dataset_from_text("1 1 0.5\n"));   // bad label
  CHECK_THROWS(dataset_from_text("1 1 1\n1 1 1 1\n"));  // ragged
}

TEST_CASE("config parsing, validation diagnostics") {
  const std::string good = R"({
    "experiment": "reduce",
    "family": {"kind": "dense", "n": 10, "d": 2},
    "grids": {"epsilon": [0.1, 0.25]},
    "trials": 500,
    "seed": 7,
    "out": "out-test"
  })";
  const ExperimentConfig cfg = parse_config(good);
  CHECK(cfg.experiment == "reduce");
  CHECK(cfg.family.n == 10);
  CHECK(cfg.epsilon_grid == std::vector<double>{0.1, 0.25});
  CHECK(validate_config(cfg).empty());

  ExperimentConfig bad = cfg;
  bad.epsilon_grid.clear();
  auto errs = validate_config(bad);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].find("grids.epsilon") != std::string::npos);

  bad = cfg;
  bad.seed_set = false;
  errs = validate_config(bad);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].find("seed") != std::string::npos);

  bad = cfg;
  bad.experiment = "nonsense";
  CHECK(!validate_config(bad).empty());

  CHECK_THROWS(parse_config("not json"));
  CHECK_THROWS(parse_config(R"({"seed": "abc"})"));
}

TEST_CASE("experiment runner writes reports and rejects bad configs") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg;
  cfg.experiment = "analyze";
  cfg.family.kind = "dense";
  cfg.family.n = 6;
  cfg.family.d = 2;
  cfg.count = 3;
  cfg.epsilon_grid = {0.1};
  cfg.seed = 99;
  cfg.out_dir = "io-test-out";
  const RunOutcome out = run_experiment(cfg);
  CHECK(out.exit_code == 0);
  REQUIRE(out.files.size() == 2);
  const std::string csv = read_file(out.files[0]);
  CHECK(csv.find("family,n,d,seed") != std::string::npos);
  CHECK(csv.find("dense,6,2,99") != std::string::npos);
  const std::string meta = read_file(out.files[1]);
  CHECK(meta.find("\"version\"") != std::string::npos);
  CHECK(meta.find("\"log_base\": \"e\"") != std::string::npos);

  // deterministic rerun: identical CSV bytes
  const RunOutcome again = run_experiment(cfg);
  CHECK(read_file(again.files[0]) == csv);

  ExperimentConfig bad = cfg;
  bad.epsilon_grid.clear();
  const RunOutcome rej = run_experiment(bad);
  CHECK(rej.exit_code == 1);
  CHECK(!rej.diagnostics.empty());
  fs::remove_all("io-test-out");
}
