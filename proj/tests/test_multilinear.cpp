#include "doctest.h"

#include <cmath>

#include "ptf/boolean_sense.hpp"
#include "ptf/families.hpp"
#include "ptf/multilinear.hpp"
#include "ptf/rng.hpp"
#include "ptf/truth_table.hpp"
#include "support/oracles.hpp"

using namespace ptf;

namespace {

MultilinearPoly maj3() {
  MultilinearPoly p(3);
  p.add_term({1}, 0.5);
  p.add_term({2}, 0.5);
  p.add_term({3}, 0.5);
  p.add_term({1, 2, 3}, -0.5);
  return p;
}

std::vector<double> pm(std::initializer_list<int> bits) {
  std::vector<double> x;
  for (int b : bits) x.push_back(b);
  return x;
}

}  // namespace

TEST_CASE("evaluate: direct substitution") {
  MultilinearPoly p(3);
  p.add_term({1, 2}, 1.0);
  p.add_term({3}, 1.0);
  CHECK(evaluate(p, pm({1, 1, -1})) == 0.0);

  MultilinearPoly one(2);
  one.add_term({}, 1.0);
  CHECK(evaluate(one, pm({-1, 1})) == 1.0);
  CHECK(evaluate(one, pm({1, 1})) == 1.0);

  // sign(x1+x2+x3) at (1,-1,-1) is -1; its expansion evaluates to exactly
  // that on every cube point.
  const MultilinearPoly m = maj3();
  CHECK(evaluate(m, pm({1, -1, -1})) == -1.0);
  for (std::uint64_t i = 0; i < 8; ++i) {
    const int s1 = TruthTable::input_bit(i, 1);
    const int s2 = TruthTable::input_bit(i, 2);
    const int s3 = TruthTable::input_bit(i, 3);
    const int expected = (s1 + s2 + s3) > 0 ? 1 : -1;
    CHECK(evaluate(m, pm({s1, s2, s3})) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("evaluate: dimension mismatch") {
  MultilinearPoly p(3);
  p.add_term({1}, 1.0);
  CHECK_THROWS(evaluate(p, pm({1, 1})));
}

TEST_CASE("influence and total influence") {
  const MultilinearPoly m = maj3();
  CHECK(influence_poly(m, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(total_influence_poly(m) == doctest::Approx(1.5).epsilon(1e-15));

  MultilinearPoly p(3);
  p.add_term({3}, 1.0);
  CHECK(influence_poly(p, 1) == 0.0);

  MultilinearPoly q(2);
  q.add_term({1, 2}, 1.0);
  CHECK(influence_poly(q, 2) == 1.0);
  CHECK_THROWS(influence_poly(q, 3));

  // parity has one size-n monomial
  MultilinearPoly par(5);
  par.add_term({1, 2, 3, 4, 5}, 1.0);
  CHECK(total_influence_poly(par) == 5.0);
  MultilinearPoly c(4);
  c.add_term({}, 2.0);
  CHECK(total_influence_poly(c) == 0.0);
}

TEST_CASE("total influence vs nonconstant mass lies in [1, d]") {
  for (int t = 0; t < 30; ++t) {
    Rng rng = Rng::stream(5, 1, t);
    const std::uint32_t d = 1 + t % 4;
    const MultilinearPoly p = random_dense_poly(8, d, rng);
    const double ratio = total_influence_poly(p) / p.variance();
    CHECK(ratio >= 1.0 - 1e-12);
    CHECK(ratio <= static_cast<double>(d) + 1e-12);
  }
}

TEST_CASE("derivative: definition and flip identity") {
  MultilinearPoly p(3);
  p.add_term({1, 2}, 1.0);
  p.add_term({1}, 1.0);
  p.add_term({3}, 1.0);
  const MultilinearPoly d1 = derivative(p, 1);
  CHECK(d1.coeff({}) == 1.0);
  CHECK(d1.coeff({2}) == 1.0);
  CHECK(d1.coeff({3}) == 0.0);

  MultilinearPoly q(3);
  q.add_term({3}, 1.0);
  CHECK(derivative(q, 1).coeffs.empty());

  const MultilinearPoly dm = derivative(maj3(), 1);
  CHECK(dm.coeff({}) == 0.5);
  CHECK(dm.coeff({2, 3}) == -0.5);

  // D_i p(x) = x_i (p(x) - p(x^i)) / 2 for random p, all i, all x.
  for (int t = 0; t < 10; ++t) {
    Rng rng = Rng::stream(5, 2, t);
    const MultilinearPoly r = random_dense_poly(5, 3, rng);
    for (std::uint32_t i = 1; i <= 5; ++i) {
      const MultilinearPoly di = derivative(r, i);
      CHECK(influence_poly(di, i) == 0.0);  // result independent of x_i
      for (std::uint64_t idx = 0; idx < 32; ++idx) {
        std::vector<double> x(5), xf(5);
        for (std::uint32_t v = 1; v <= 5; ++v)
          x[v - 1] = xf[v - 1] = TruthTable::input_bit(idx, v);
        xf[i - 1] = -xf[i - 1];
        const double lhs = evaluate(di, std::span<const double>(x));
        const double rhs =
            0.5 * x[i - 1] *
            (evaluate(r, std::span<const double>(x)) -
             evaluate(r, std::span<const double>(xf)));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("restrict: substitution and completions") {
  MultilinearPoly p(3);
  p.add_term({1, 2}, 1.0);
  p.add_term({3}, 1.0);
  Restriction rho;
  rho.assignments[1] = -1;
  const MultilinearPoly r = restrict_poly(p, rho);
  CHECK(r.coeff({2}) == -1.0);
  CHECK(r.coeff({3}) == 1.0);
  CHECK(r.coeff({}) == 0.0);

  // empty restriction is the identity
  const MultilinearPoly same = restrict_poly(p, Restriction{});
  CHECK(same.coeffs == p.coeffs);

  // restriction referencing a variable beyond n
  Restriction bad;
  bad.assignments[9] = 1;
  CHECK_THROWS(restrict_poly(p, bad));

  // every completion agrees with the original
  for (int t = 0; t < 10; ++t) {
    Rng rng = Rng::stream(5, 3, t);
    const MultilinearPoly q = random_dense_poly(6, 3, rng);
    Restriction r2;
    r2.assignments[2] = rng.sign();
    r2.assignments[5] = rng.sign();
    const MultilinearPoly qr = restrict_poly(q, r2);
    for (std::uint64_t idx = 0; idx < 64; ++idx) {
      std::vector<double> x(6);
      for (std::uint32_t v = 1; v <= 6; ++v)
        x[v - 1] = TruthTable::input_bit(idx, v);
      x[1] = r2.assignments[2];
      x[4] = r2.assignments[5];
      CHECK(evaluate(qr, std::span<const double>(x)) ==
            doctest::Approx(evaluate(q, std::span<const double>(x)))
                .epsilon(1e-13));
    }
  }
}

TEST_CASE("restrict MAJ3 to x1=1 gives an OR-like function with AS 1") {
  Restriction rho;
  rho.assignments[1] = 1;
  const MultilinearPoly r = restrict_poly(maj3(), rho);
  // sign over the 4 completions: +1 except when x2 = x3 = -1.
  TruthTable t = sign_table(r);
  int negatives = 0;
  for (std::uint64_t i = 0; i < 8; ++i)
    if (t.values[i] == -1) ++negatives;
  CHECK(negatives == 2);  // x1 free but irrelevant: 2 of 8 rows
  double as = 0.0;
  for (std::uint32_t i = 1; i <= 3; ++i) as += exact_influence(t, i);
  CHECK(as == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("restriction conservation: mean influence over a head is exact") {
  for (int t = 0; t < 10; ++t) {
    Rng rng = Rng::stream(5, 4, t);
    const MultilinearPoly p = random_dense_poly(8, 3, rng);
    const std::uint32_t k = 1 + t % 6;
    const std::uint32_t ell = 8;
    double mean = 0.0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
      Restriction rho;
      for (std::uint32_t v = 1; v <= k; ++v)
        rho.assignments[v] = (bits >> (v - 1)) & 1 ? -1 : +1;
      mean += influence_poly(restrict_poly(p, rho), ell);
    }
    mean /= static_cast<double>(std::uint64_t{1} << k);
    CHECK(std::fabs(mean - influence_poly(p, ell)) < 1e-12);
  }
}

TEST_CASE("scaled and sum helpers") {
  const MultilinearPoly m = maj3();
  CHECK(m.scaled(2.0).coeff({1}) == 1.0);
  const MultilinearPoly s = sum(m, m.scaled(-1.0));
  CHECK(s.norm_sq() == 0.0);
  CHECK(m.degree() == 3);
  CHECK(m.norm_sq() == doctest::Approx(1.0).epsilon(1e-15));
}
