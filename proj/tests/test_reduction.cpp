#include "doctest.h"

#include <bit>
#include <cmath>

#include "ptf/boolean_sense.hpp"
#include "ptf/families.hpp"
#include "ptf/reduction.hpp"
#include "ptf/rng.hpp"
#include "support/oracles.hpp"

using namespace ptf;

namespace {

TruthTable dictator(std::uint32_t n) {
  std::vector<std::int8_t> vals(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < vals.size(); ++i)
    vals[i] = static_cast<std::int8_t>(TruthTable::input_bit(i, 1));
  return TruthTable(n, std::move(vals));
}

TruthTable parity(std::uint32_t n) {
  std::vector<std::int8_t> vals(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < vals.size(); ++i)
    vals[i] = std::popcount(i) % 2 ? -1 : 1;
  return TruthTable(n, std::move(vals));
}

}  // namespace

TEST_CASE("reduction sample marginals") {
  Rng rng = Rng::stream(15, 1);
  const std::uint32_t n = 8, m = 5;
  std::vector<double> bias(n, 0.0);
  std::vector<double> fliprate(n, 0.0);
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    const ReductionSample s = sample_reduction(n, m, rng);
    for (std::uint32_t i = 0; i < n; ++i) {
      bias[i] += s.a[i] * s.z[s.alpha[i]];
      if (s.alpha[i] == s.r) fliprate[i] += 1.0;
    }
  }
  // 16 checks on one fixed seed: use 3.9 sigma so a single unlucky
  // coordinate does not trip the run
  const double se_bias = 1.0 / std::sqrt(static_cast<double>(trials));
  const double se_flip =
      std::sqrt(0.2 * 0.8 / static_cast<double>(trials));
  for (std::uint32_t i = 0; i < n; ++i) {
    CHECK(std::fabs(bias[i] / trials) <= 3.9 * se_bias);
    CHECK(std::fabs(fliprate[i] / trials - 1.0 / m) <= 3.9 * se_flip);
  }
}

TEST_CASE("reduction estimate: dictator is exact") {
  const TruthTable d = dictator(10);
  for (double eps : {0.6, 0.25, 0.1}) {
    const ReductionReport rep = reduction_estimate(d, 1, eps, 200, 15);
    const std::uint32_t m = static_cast<std::uint32_t>(1.0 / eps);
    CHECK(rep.m == m);
    // every trial contributes exactly 1/m; only summation rounding remains
    CHECK(rep.estimate.mean ==
          doctest::Approx(1.0 / static_cast<double>(m)).epsilon(1e-14));
    CHECK(rep.estimate.std_err < 1e-12);
  }
  CHECK_THROWS(reduction_estimate(d, 1, 0.0, 100, 15));
  CHECK_THROWS(reduction_estimate(d, 1, 1.5, 100, 15));
}

TEST_CASE("reduction estimate matches exact noise sensitivity") {
  struct Case {
    TruthTable table;
    std::uint32_t d;
  };
  std::vector<Case> cases;
  cases.push_back({parity(10), 10});
  cases.push_back({middle_layers_symmetric(9, 1).table, 1});
  Rng rng = Rng::stream(15, 2);
  for (int t = 0; t < 5; ++t) {
    PtfBoolean f = random_ptf_checked("dense", 10, 2, 0, rng);
    cases.push_back({f.ensure_table(), 2});
  }
  for (const Case& c : cases) {
    const auto w = spectrum_level_weights(c.table);
    for (double eps : {0.5, 0.1}) {
      const ReductionReport rep =
          reduction_estimate(c.table, c.d, eps, 3000, 15);
      const double exact = ns_from_level_weights(w, rep.noise_rate);
      CHECK(std::fabs(rep.estimate.mean - exact) <=
            3.0 * rep.estimate.std_err + 1e-12);
      CHECK(rep.bound_over_m ==
            doctest::Approx(as_bound_closed(rep.m, c.d) / rep.m));
    }
  }
  // parity at m = 2: exact NS_(1/2) = 1/2
  const auto w = spectrum_level_weights(parity(10));
  CHECK(ns_from_level_weights(w, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("replicate: sign of replicated sums") {
  MultilinearPoly x1(1);
  x1.add_term({1}, 1.0);

  // k = 1 is the original PTF
  PtfBoolean same = replicate(x1, 1);
  CHECK(same.table->n == 1);
  CHECK(same.table->values[0] == 1);
  CHECK(same.table->values[1] == -1);

  // k = 3 on one variable is the 3-bit majority
  PtfBoolean maj = replicate(x1, 3);
  const TruthTable expect = middle_layers_symmetric(3, 1).table;
  CHECK(maj.table->values == expect.values);
  // the pre-sign polynomial is the replicated sum (y1+y2+y3)/sqrt(3)
  CHECK(maj.p.coeff({1}) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  // while the PTF's own Walsh expansion is the majority expansion
  const MultilinearPoly f = fourier_transform(*maj.table);
  CHECK(f.coeff({1}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.coeff({1, 2, 3}) == doctest::Approx(-0.5).epsilon(1e-12));

  CHECK_THROWS(replicate(x1, 0));
  MultilinearPoly wide(13);
  wide.add_term({1}, 1.0);
  CHECK_THROWS(replicate(wide, 2));  // 26 > 24 replica budget
}

TEST_CASE("replication brings NS toward the gaussian arccos law") {
  // Flipping each bit with probability eps leaves correlation 1 - 2 eps,
  // so the k -> infinity limit of NS_eps(h_k) is the sign-disagreement
  // probability of (1-2 eps)-correlated Gaussians.
  MultilinearPoly x1(1);
  x1.add_term({1}, 1.0);
  const double eps = 0.1;
  const double limit = std::acos(1.0 - 2.0 * eps) / M_PI;
  const double gauss_same_rate = std::acos(1.0 - eps) / M_PI;
  double prev_gap = 1e9;
  for (std::uint32_t k : {1u, 3u, 9u}) {
    PtfBoolean h = replicate(x1, k);
    const double ns = exact_ns(*h.table, eps);
    const double gap = std::fabs(ns - limit);
    CHECK(gap < prev_gap);
    prev_gap = gap;
    if (k == 9) {
      CHECK(gap < 0.05);
      // the Boolean side dominates the Gaussian side at the same rate
      CHECK(ns >= gauss_same_rate);
    }
  }
}
