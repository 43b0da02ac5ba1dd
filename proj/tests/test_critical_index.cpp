#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ptf/critical_index.hpp"
#include "ptf/families.hpp"
#include "ptf/rng.hpp"

using namespace ptf;

namespace {

/// Polynomial with prescribed squared singleton coefficients, so the
/// influence profile is exactly the given vector.
MultilinearPoly with_influences(const std::vector<double>& inf) {
  MultilinearPoly p(static_cast<std::uint32_t>(inf.size()));
  for (std::uint32_t i = 0; i < inf.size(); ++i)
    p.add_term({i + 1}, std::sqrt(inf[i]));
  return p;
}

}  // namespace

TEST_CASE("critical index on pinned influence profiles") {
  // 0.8/1.0 > 0.5 at i=0; 0.1/0.2 <= 0.5 at i=1
  auto rep = critical_index(with_influences({0.8, 0.1, 0.05, 0.05}), 0.5);
  REQUIRE(rep.index.has_value());
  CHECK(*rep.index == 1);

  // all equal influences are regular for tau >= 1/n
  auto reg = critical_index(with_influences({0.25, 0.25, 0.25, 0.25}), 0.25);
  CHECK(reg.regular());

  // every ratio exceeds 0.3: no critical index
  auto inf = critical_index(with_influences({0.4, 0.3, 0.2, 0.1}), 0.3);
  CHECK(!inf.index.has_value());

  CHECK_THROWS(critical_index(with_influences({0.5, 0.5}), 0.0));
  MultilinearPoly c(2);
  c.add_term({}, 3.0);
  CHECK_THROWS(critical_index(c, 0.5));
}

TEST_CASE("critical index is scale and relabeling invariant") {
  Rng rng = Rng::stream(13, 1);
  for (int t = 0; t < 20; ++t) {
    const MultilinearPoly p = random_dense_poly(8, 2, rng);
    const double tau = 0.05 + 0.1 * (t % 4);
    const auto rep = critical_index(p, tau);
    const auto scaled = critical_index(p.scaled(3.25), tau);
    CHECK(rep.index == scaled.index);
    for (std::size_t k = 0; k < rep.influences.size(); ++k)
      CHECK(scaled.influences[k] ==
            doctest::Approx(rep.influences[k] * 3.25 * 3.25).epsilon(1e-12));

    // relabel variables by the reversal permutation
    MultilinearPoly q(p.n);
    for (const auto& [s, coef] : p.coeffs) {
      VarSet renamed;
      for (std::uint32_t v : s) renamed.push_back(p.n + 1 - v);
      std::sort(renamed.begin(), renamed.end());
      q.coeffs[renamed] = coef;
    }
    const auto relabeled = critical_index(q, tau);
    CHECK(rep.index == relabeled.index);
    // coefficient sums re-accumulate in a different order after the
    // relabeling, so compare to rounding tolerance
    for (std::size_t k = 0; k < rep.influences.size(); ++k)
      CHECK(relabeled.influences[k] ==
            doctest::Approx(rep.influences[k]).epsilon(1e-12));
    for (std::size_t k = 0; k < rep.tails.size(); ++k)
      CHECK(relabeled.tails[k] ==
            doctest::Approx(rep.tails[k]).epsilon(1e-11));
  }
}

TEST_CASE("tail decay bound") {
  // j = 0: tail equals the bound
  auto rows = tail_decay_check(with_influences({0.4, 0.3, 0.2, 0.1}), 0.2);
  CHECK(rows[0].tail == doctest::Approx(rows[0].bound).epsilon(1e-14));
  for (const auto& row : rows) CHECK(row.ok);

  // geometric influences with ratio (1 - tau) sit exactly on the bound
  const double tau = 0.25;
  std::vector<double> geo;
  double v = 1.0;
  for (int i = 0; i < 8; ++i) {
    geo.push_back(v * tau / (1 - tau));
    v *= (1 - tau);
  }
  // normalize so the tail sums telescope: tail_j = (1-tau)^j * total
  for (const auto& row : tail_decay_check(with_influences(geo), tau)) {
    CHECK(row.ok);
    CHECK(row.tail <= row.bound * (1 + 1e-9));
  }

  // random degree-2: zero violations
  Rng rng = Rng::stream(13, 2);
  for (int t = 0; t < 30; ++t) {
    const MultilinearPoly p = random_dense_poly(10, 2, rng);
    for (const auto& row : tail_decay_check(p, 0.1)) CHECK(row.ok);
  }
}

TEST_CASE("restriction influence deviation") {
  // independent of the head: influence never moves
  MultilinearPoly p(5);
  p.add_term({4, 5}, 1.0);
  p.add_term({5}, 0.5);
  auto dev = restriction_influence_deviation(p, {1, 2, 3}, 5, {1.0, 2.0}, 0,
                                             7, Exec::parallel);
  CHECK(dev.exact);
  CHECK(dev.mean_influence == dev.base_influence);
  for (const auto& [t, rate] : dev.exceedance) CHECK(rate == 0.0);

  // exact mean equals the unrestricted influence for k <= 6
  Rng rng = Rng::stream(13, 3);
  for (int t = 0; t < 15; ++t) {
    const MultilinearPoly q = random_dense_poly(9, 3, rng);
    std::vector<std::uint32_t> head;
    for (std::uint32_t v = 1; v <= 1 + t % 6u; ++v) head.push_back(v);
    auto d2 = restriction_influence_deviation(q, head, 9, {1.0}, 0, 7,
                                              Exec::parallel);
    CHECK(d2.exact);
    CHECK(std::fabs(d2.mean_influence - d2.base_influence) < 1e-12);
  }

  CHECK_THROWS(restriction_influence_deviation(p, {1, 5}, 5, {1.0}, 0, 7,
                                               Exec::parallel));
}

TEST_CASE("decompose: regular input comes back untouched") {
  Rng rng = Rng::stream(13, 4);
  const MultilinearPoly p = regular_poly(12, 2, rng);
  const auto out = decompose(p, 2.0 / 12.0, 128, 7);
  CHECK(out.kind == DecompKind::regular);
  CHECK(out.trials == 0);
  CHECK(out.report.regular());
  const std::string json = out.to_json();
  CHECK(json.find("\"kind\":\"regular\"") != std::string::npos);
  CHECK(json.find("\"log_base\":\"e\"") != std::string::npos);
}

TEST_CASE("decompose: dominant head variable gives a small critical index") {
  // x1 + delta * (x2 + ... + x10): index 1, restrictions leave a flat tail
  MultilinearPoly p(10);
  p.add_term({1}, 1.0);
  for (std::uint32_t v = 2; v <= 10; ++v) p.add_term({v}, 1e-3);
  const auto out = decompose(p, 0.2, 64, 7);
  CHECK(out.kind == DecompKind::small_ci);
  REQUIRE(out.report.index.has_value());
  CHECK(*out.report.index == 1);
  CHECK(out.enumerated);  // 2 assignments
  CHECK(out.fraction_regular_tail == 1.0);
}

TEST_CASE("decompose: geometric head certifies constant restrictions") {
  MultilinearPoly p(30);
  for (std::uint32_t i = 1; i <= 30; ++i)
    p.add_term({i}, std::pow(0.5, static_cast<double>(i)));
  const auto out = decompose(p, 0.25, 200, 7);
  CHECK(out.kind == DecompKind::large_ci);
  CHECK(!out.report.index.has_value());
  CHECK(!out.degenerate);
  CHECK(out.fraction_constant == 1.0);

  // tiny n with K >= n: degenerate, reported but not fatal
  MultilinearPoly q(4);
  for (std::uint32_t i = 1; i <= 4; ++i)
    q.add_term({i}, std::pow(0.5, static_cast<double>(i)));
  const auto deg = decompose(q, 0.05, 64, 7);
  CHECK(deg.degenerate);
}

TEST_CASE("default tau and head length") {
  CHECK(default_tau(100, 1) ==
        doctest::Approx(std::pow(100.0, -5.0 / 6.0)).epsilon(1e-14));
  CHECK(head_length(100, 2, 0.1) ==
        doctest::Approx(2.0 * 2.0 * std::log(100.0) / 0.1).epsilon(1e-14));
}
