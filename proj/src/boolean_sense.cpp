#include "ptf/boolean_sense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ptf {

namespace {

constexpr std::uint64_t kCubeChunk = 1 << 16;

void check_table_var(const TruthTable& f, std::uint32_t i) {
  if (i < 1 || i > f.n)
    throw std::out_of_range("variable index out of range [1, n]");
}

}  // namespace

double exact_influence_serial(const TruthTable& f, std::uint32_t i) {
  check_table_var(f, i);
  const std::uint64_t bit = std::uint64_t{1} << (i - 1);
  std::uint64_t cnt = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x)
    if (f.values[x] != f.values[x ^ bit]) ++cnt;
  return static_cast<double>(cnt) / static_cast<double>(f.size());
}

double exact_influence(const TruthTable& f, std::uint32_t i, Exec exec) {
  check_table_var(f, i);
  const std::uint64_t bit = std::uint64_t{1} << (i - 1);
  const std::int8_t* vals = f.values.data();
  auto parts = run_chunks<std::uint64_t>(
      f.size(), kCubeChunk,
      [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
        std::uint64_t cnt = 0;
        for (std::uint64_t x = b; x < e; ++x)
          if (vals[x] != vals[x ^ bit]) ++cnt;
        return cnt;
      },
      exec);
  std::uint64_t cnt = 0;
  for (std::uint64_t c : parts) cnt += c;
  return static_cast<double>(cnt) / static_cast<double>(f.size());
}

double exact_as_serial(const TruthTable& f) {
  std::uint64_t cnt = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x)
    for (std::uint32_t i = 0; i < f.n; ++i)
      if (f.values[x] != f.values[x ^ (std::uint64_t{1} << i)]) ++cnt;
  return static_cast<double>(cnt) / static_cast<double>(f.size());
}

double exact_as(const TruthTable& f, Exec exec) {
  const std::int8_t* vals = f.values.data();
  const std::uint32_t n = f.n;
  auto parts = run_chunks<std::uint64_t>(
      f.size(), kCubeChunk,
      [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
        std::uint64_t cnt = 0;
        for (std::uint64_t x = b; x < e; ++x) {
          const std::int8_t fx = vals[x];
          for (std::uint32_t i = 0; i < n; ++i)
            if (fx != vals[x ^ (std::uint64_t{1} << i)]) ++cnt;
        }
        return cnt;
      },
      exec);
  std::uint64_t cnt = 0;
  for (std::uint64_t c : parts) cnt += c;
  return static_cast<double>(cnt) / static_cast<double>(f.size());
}

std::vector<double> spectrum_level_weights(const TruthTable& f, Exec exec) {
  std::vector<double> v(f.values.begin(), f.values.end());
  walsh_hadamard(v, exec);
  const double scale = 1.0 / static_cast<double>(f.size());
  // Per-chunk partial level sums merged in chunk order: deterministic for
  // any thread count.
  auto parts = run_chunks<std::vector<double>>(
      f.size(), kCubeChunk,
      [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
        std::vector<double> w(f.n + 1, 0.0);
        for (std::uint64_t mask = b; mask < e; ++mask) {
          const double c = v[mask] * scale;
          w[std::popcount(mask)] += c * c;
        }
        return w;
      },
      exec);
  std::vector<double> w(f.n + 1, 0.0);
  for (const auto& part : parts)
    for (std::size_t k = 0; k < w.size(); ++k) w[k] += part[k];
  return w;
}

double ns_from_level_weights(const std::vector<double>& weights, double eps) {
  if (eps < 0.0 || eps > 1.0)
    throw std::invalid_argument("noise rate must lie in [0, 1]");
  const double rho = 1.0 - 2.0 * eps;
  double corr = 0.0;
  double rk = 1.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    corr += rk * weights[k];
    rk *= rho;
  }
  return 0.5 - 0.5 * corr;
}

double exact_ns(const TruthTable& f, double eps, Exec exec) {
  return ns_from_level_weights(spectrum_level_weights(f, exec), eps);
}

double influence_via_derivative(PtfBoolean& f, std::uint32_t i, Exec exec) {
  if (i < 1 || i > f.p.n)
    throw std::out_of_range("variable index out of range [1, n]");
  const TruthTable& table = f.ensure_table(exec);
  const std::vector<double> deriv = evaluate_on_cube(derivative(f.p, i), exec);
  const std::uint64_t bit = std::uint64_t{1} << (i - 1);
  const std::int8_t* vals = table.values.data();
  auto parts = run_chunks<std::int64_t>(
      table.size(), kCubeChunk,
      [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
        std::int64_t acc = 0;
        for (std::uint64_t x = b; x < e; ++x) {
          const int xi = (x & bit) ? -1 : +1;
          const int sgn_d = deriv[x] < 0.0 ? -1 : +1;
          acc += vals[x] * xi * sgn_d;
        }
        return acc;
      },
      exec);
  std::int64_t acc = 0;
  for (std::int64_t a : parts) acc += a;
  return static_cast<double>(acc) / static_cast<double>(table.size());
}

double as_bound_closed(std::uint32_t n, std::uint32_t d) {
  if (n < 1) throw std::invalid_argument("as_bound_closed: n >= 1");
  return 2.0 * std::pow(static_cast<double>(n),
                        1.0 - std::pow(2.0, -static_cast<double>(d)));
}

double as_bound_recursive(std::uint32_t n, std::uint32_t d) {
  if (n < 1) throw std::invalid_argument("as_bound_recursive: n >= 1");
  double bound = 0.0;  // degree-0 PTFs are constant
  const double nd = static_cast<double>(n);
  for (std::uint32_t k = 0; k < d; ++k) bound = std::sqrt(nd + nd * bound);
  return bound;
}

MiddleLayers middle_layers_symmetric(std::uint32_t n, std::uint32_t d) {
  if (d < 1 || d > n) throw std::invalid_argument("middle layers: 1 <= d <= n");
  if ((n % 2) != (d % 2))
    throw std::invalid_argument(
        "middle layers: need n == d (mod 2) for symmetric boundaries");
  if (n > kMaxExactVars)
    throw std::invalid_argument("middle layers: n exceeds enumeration budget");
  MiddleLayers out;
  for (std::uint32_t t = 0; t < d; ++t)
    out.boundaries.push_back(-static_cast<int>(d - 1) + 2 * static_cast<int>(t));
  // Sign at level L = sum(x): sign of prod_b (L - b); levels step by 2 and
  // never hit a boundary (opposite parity).
  out.level_signs.resize(n + 1);
  for (std::uint32_t k = 0; k <= n; ++k) {  // k = number of -1 coordinates
    const int level = static_cast<int>(n) - 2 * static_cast<int>(k);
    int s = 1;
    for (int b : out.boundaries)
      if (level < b) s = -s;
    out.level_signs[(level + static_cast<int>(n)) / 2] =
        static_cast<std::int8_t>(s);
  }
  std::vector<std::int8_t> vals(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < vals.size(); ++x) {
    const int ones = std::popcount(x);  // bits set = -1 coordinates
    const int level = static_cast<int>(n) - 2 * ones;
    vals[x] = out.level_signs[(level + static_cast<int>(n)) / 2];
  }
  out.table = TruthTable(n, std::move(vals));
  return out;
}

double pairwise_cross_term(const MultilinearPoly& f, const MultilinearPoly& g,
                           std::uint32_t i, std::uint32_t j) {
  if (i == j) throw std::invalid_argument("pairwise_cross_term: i != j");
  if (influence_poly(f, i) != 0.0)
    throw std::invalid_argument("pairwise_cross_term: f depends on x_i");
  if (influence_poly(g, j) != 0.0)
    throw std::invalid_argument("pairwise_cross_term: g depends on x_j");
  // E[x_i x_j chi_S chi_T] = 1 iff S xor T = {i, j}.
  double acc = 0.0;
  for (const auto& [s, cf] : f.coeffs) {
    if (cf == 0.0) continue;
    // T = S xor {i, j}; f has no i, g has no j, so T = (S + i) - j if j in S.
    VarSet t;
    t.reserve(s.size() + 1);
    bool has_j = false;
    for (std::uint32_t v : s) {
      if (v == j) {
        has_j = true;
        continue;
      }
      t.push_back(v);
    }
    if (!has_j) continue;  // need j in S so that j not in T
    auto pos = std::lower_bound(t.begin(), t.end(), i);
    t.insert(pos, i);
    acc += cf * g.coeff(t);
  }
  return acc;
}

double majority_exact_as(std::uint32_t n) {
  if (n % 2 == 0) throw std::invalid_argument("majority needs odd n");
  // n * C(n-1, (n-1)/2) / 2^(n-1)
  double c = 1.0;
  const std::uint32_t m = n - 1;
  for (std::uint32_t k = 0; k < m / 2; ++k)
    c = c * static_cast<double>(m - k) / static_cast<double>(k + 1);
  return static_cast<double>(n) * c * std::pow(0.5, static_cast<double>(m));
}

double halfspace_binomial_expression(std::uint32_t n) {
  double c = 1.0;
  for (std::uint32_t k = 0; k < n / 2; ++k)
    c = c * static_cast<double>(n - k) / static_cast<double>(k + 1);
  return c * std::pow(0.5, static_cast<double>(n));
}

}  // namespace ptf
