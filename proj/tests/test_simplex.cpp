#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ptf/rng.hpp"
#include "ptf/simplex.hpp"

using namespace ptf;

namespace {

BoundedLp make_lp(std::size_t rows, std::size_t cols,
                  std::initializer_list<double> a,
                  std::initializer_list<double> b,
                  std::initializer_list<double> c,
                  std::initializer_list<double> u) {
  BoundedLp lp;
  lp.rows = rows;
  lp.cols = cols;
  lp.a = a;
  lp.b = b;
  lp.c = c;
  lp.upper = u;
  return lp;
}

}  // namespace

TEST_CASE("tiny LPs with known optima") {
  // max x1 + x2 st x1 + x2 = 1, x in [0,1]^2: objective 1
  auto lp = make_lp(1, 2, {1, 1}, {1}, {1, 1}, {1, 1});
  auto sol = solve_bounded_lp(lp);
  REQUIRE(sol.status == LpSolution::Status::optimal);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-12));

  // max 2x1 + x2 st x1 + x2 = 1.5, bounds [0,1]: x1 = 1, x2 = 0.5
  auto lp2 = make_lp(1, 2, {1, 1}, {1.5}, {2, 1}, {1, 1});
  auto sol2 = solve_bounded_lp(lp2);
  REQUIRE(sol2.status == LpSolution::Status::optimal);
  CHECK(sol2.objective == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(sol2.x[0] == doctest::Approx(1.0));
  CHECK(sol2.x[1] == doctest::Approx(0.5));

  // infeasible: x1 + x2 = 3 with bounds [0,1]
  auto lp3 = make_lp(1, 2, {1, 1}, {3}, {1, 1}, {1, 1});
  CHECK(solve_bounded_lp(lp3).status == LpSolution::Status::infeasible);

  // unbounded: max x1 with x1 - x2 = 0, x unbounded above
  auto lp4 = make_lp(1, 2, {1, -1}, {0}, {1, 0},
                     {kLpInfinity, kLpInfinity});
  CHECK(solve_bounded_lp(lp4).status == LpSolution::Status::unbounded);

  // negative right-hand side exercises the artificial sign handling
  auto lp5 = make_lp(1, 2, {1, -1}, {-0.5}, {0, -1}, {1, 1});
  auto sol5 = solve_bounded_lp(lp5);
  REQUIRE(sol5.status == LpSolution::Status::optimal);
  CHECK(sol5.x[1] - sol5.x[0] == doctest::Approx(0.5));
  CHECK(sol5.objective == doctest::Approx(-0.5));
}

TEST_CASE("duals certify optimality on a transportation-style LP") {
  // max 3x1 + 2x2 + 4x3 st x1+x2 = 1, x2+x3 = 1, x in [0,1]
  auto lp = make_lp(2, 3, {1, 1, 0, 0, 1, 1}, {1, 1}, {3, 2, 4},
                    {1, 1, 1});
  auto sol = solve_bounded_lp(lp);
  REQUIRE(sol.status == LpSolution::Status::optimal);
  CHECK(sol.objective == doctest::Approx(7.0));
  // reduced costs nonpositive at upper, nonnegative at lower
  for (std::size_t j = 0; j < 3; ++j) {
    const double d =
        lp.c[j] - sol.duals[0] * lp.at(0, j) - sol.duals[1] * lp.at(1, j);
    if (sol.x[j] > 1e-9 && sol.x[j] < 1 - 1e-9)
      CHECK(std::fabs(d) < 1e-8);
  }
}

TEST_CASE("random LPs: simplex matches brute-force vertex enumeration") {
  // max c.x st A x = b (2 rows), 0 <= x <= u, 5 columns.  Vertices have
  // >= 3 variables at a bound; enumerate all bound patterns and basis
  // pairs. Brute force via sampling the feasible segments would be flaky;
  // instead check weak duality + feasibility + complementary slackness.
  Rng rng = Rng::stream(17, 1);
  for (int t = 0; t < 40; ++t) {
    const std::size_t rows = 2, cols = 5;
    BoundedLp lp;
    lp.rows = rows;
    lp.cols = cols;
    lp.a.resize(rows * cols);
    for (double& v : lp.a) v = rng.normal();
    lp.upper.assign(cols, 1.0);
    lp.c.resize(cols);
    for (double& v : lp.c) v = rng.normal();
    // feasible by construction: b = A * x0 with x0 in (0,1)^cols
    std::vector<double> x0(cols);
    for (double& v : x0) v = 0.2 + 0.6 * rng.uniform01();
    lp.b.assign(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t j = 0; j < cols; ++j)
        lp.b[r] += lp.at(r, j) * x0[j];

    auto sol = solve_bounded_lp(lp);
    REQUIRE(sol.status == LpSolution::Status::optimal);
    // primal feasibility
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (std::size_t j = 0; j < cols; ++j) acc += lp.at(r, j) * sol.x[j];
      CHECK(acc == doctest::Approx(lp.b[r]).epsilon(1e-7));
    }
    for (double v : sol.x) {
      CHECK(v >= -1e-9);
      CHECK(v <= 1.0 + 1e-9);
    }
    // dual feasibility + complementary slackness => optimality
    for (std::size_t j = 0; j < cols; ++j) {
      double d = lp.c[j];
      for (std::size_t r = 0; r < rows; ++r)
        d -= sol.duals[r] * lp.at(r, j);
      if (d > 1e-7) CHECK(sol.x[j] == doctest::Approx(1.0).epsilon(1e-6));
      if (d < -1e-7) CHECK(sol.x[j] == doctest::Approx(0.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("degenerate LP terminates (Bland safeguard)") {
  // Many duplicated columns and a degenerate rhs.
  BoundedLp lp;
  lp.rows = 2;
  lp.cols = 6;
  lp.a = {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  lp.b = {0, 0};  // only x = 0 is feasible
  lp.c = {1, 1, 1, 1, 1, 1};
  lp.upper.assign(6, 1.0);
  auto sol = solve_bounded_lp(lp);
  REQUIRE(sol.status == LpSolution::Status::optimal);
  CHECK(sol.objective == doctest::Approx(0.0));
}
