#include "doctest.h"

#include <cmath>

#include "ptf/families.hpp"
#include "ptf/multilinear.hpp"
#include "ptf/rng.hpp"
#include "ptf/truth_table.hpp"
#include "support/oracles.hpp"

using namespace ptf;

TEST_CASE("fourier transform of named functions") {
  // dictator
  std::vector<std::int8_t> dict(8);
  for (std::uint64_t i = 0; i < 8; ++i)
    dict[i] = static_cast<std::int8_t>(TruthTable::input_bit(i, 1));
  const MultilinearPoly pd = fourier_transform(TruthTable(3, dict));
  CHECK(pd.coeff({1}) == 1.0);
  CHECK(pd.coeffs.size() == 1);

  // majority of 3: compare against brute-force inner products
  std::vector<std::int8_t> maj(8);
  TruthTable mt(3, std::vector<std::int8_t>(8, 1));
  for (std::uint64_t i = 0; i < 8; ++i) {
    const int s = TruthTable::input_bit(i, 1) + TruthTable::input_bit(i, 2) +
                  TruthTable::input_bit(i, 3);
    mt.values[i] = s > 0 ? 1 : -1;
  }
  const MultilinearPoly pm = fourier_transform(mt);
  for (const VarSet& s :
       {VarSet{1}, VarSet{2}, VarSet{3}, VarSet{1, 2, 3}, VarSet{1, 2}})
    CHECK(pm.coeff(s) ==
          doctest::Approx(oracle::fourier_coeff_brute(mt, s)).epsilon(1e-15));
  CHECK(pm.coeff({1}) == 0.5);
  CHECK(pm.coeff({1, 2, 3}) == -0.5);

  // parity
  std::vector<std::int8_t> par(32);
  for (std::uint64_t i = 0; i < 32; ++i)
    par[i] = std::popcount(i) % 2 ? -1 : 1;
  const MultilinearPoly pp = fourier_transform(TruthTable(5, par));
  CHECK(pp.coeff({1, 2, 3, 4, 5}) == 1.0);
  CHECK(pp.coeffs.size() == 1);
}

TEST_CASE("round trip table -> expansion -> table, n <= 12") {
  for (std::uint32_t n : {1u, 4u, 9u, 12u}) {
    Rng rng = Rng::stream(6, 1, n);
    std::vector<std::int8_t> vals(std::size_t{1} << n);
    for (auto& v : vals) v = static_cast<std::int8_t>(rng.sign());
    const TruthTable f(n, vals);
    const MultilinearPoly p = fourier_transform(f);
    const std::vector<double> back = evaluate_on_cube(p);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < f.size(); ++i)
      worst = std::max(worst, std::fabs(back[i] - f.values[i]));
    CHECK(worst < 1e-12);
    // Parseval for Boolean-valued f
    CHECK(std::fabs(p.norm_sq() - 1.0) < 1e-12);
  }
}

TEST_CASE("parallel transform matches the serial reference bit for bit") {
  Rng rng = Rng::stream(6, 2);
  std::vector<double> v(std::size_t{1} << 14);
  for (auto& x : v) x = rng.normal();
  std::vector<double> a = v, b = v;
  walsh_hadamard_serial(a);
  walsh_hadamard(b, Exec::parallel);
  CHECK(a == b);
}

TEST_CASE("sign table uses sign(0) = +1") {
  MultilinearPoly p(2);
  p.add_term({1}, 1.0);
  p.add_term({2}, 1.0);  // p = x1 + x2, zero on two points
  const TruthTable t = sign_table(p);
  CHECK(t.values[0] == 1);   // (+1,+1) -> 2
  CHECK(t.values[3] == -1);  // (-1,-1) -> -2
  CHECK(t.values[1] == 1);   // (-1,+1) -> 0 -> +1
  CHECK(t.values[2] == 1);
  CHECK(has_zero_on_cube(p));
  MultilinearPoly q(2);
  q.add_term({1}, 1.0);
  q.add_term({}, 0.25);
  CHECK(!has_zero_on_cube(q));
}

TEST_CASE("packed serialization round trip") {
  Rng rng = Rng::stream(6, 3);
  for (std::uint32_t n : {1u, 3u, 10u}) {
    std::vector<std::int8_t> vals(std::size_t{1} << n);
    for (auto& v : vals) v = static_cast<std::int8_t>(rng.sign());
    const TruthTable f(n, vals);
    const TruthTable g = deserialize_table(serialize_table(f));
    CHECK(g.n == f.n);
    CHECK(g.values == f.values);
  }
  CHECK_THROWS(deserialize_table(std::vector<std::uint8_t>{'x'}));
}

TEST_CASE("table constructor validates entries") {
  CHECK_THROWS(TruthTable(2, {1, 1, 1}));          // wrong length
  CHECK_THROWS(TruthTable(1, {1, 0}));             // non +/-1 entry
  CHECK_THROWS(TruthTable(30, {}));                // over budget
}
