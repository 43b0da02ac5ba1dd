#include "ptf/reduction.hpp"

#include <cmath>
#include <stdexcept>

namespace ptf {

ReductionSample sample_reduction(std::uint32_t n, std::uint32_t m, Rng& rng) {
  ReductionSample s;
  s.a.resize(n);
  s.alpha.resize(n);
  s.z.resize(m);
  for (std::uint32_t i = 0; i < n; ++i)
    s.a[i] = static_cast<std::int8_t>(rng.sign());
  for (std::uint32_t i = 0; i < n; ++i)
    s.alpha[i] = static_cast<std::uint32_t>(rng.below(m));
  for (std::uint32_t r = 0; r < m; ++r)
    s.z[r] = static_cast<std::int8_t>(rng.sign());
  s.r = static_cast<std::uint32_t>(rng.below(m));
  return s;
}

namespace {

/// Total influence of g(z) = f(a_i z_{alpha(i)}) over {-1,1}^m, exact.
double block_total_influence(const TruthTable& f,
                             const std::vector<std::int8_t>& a,
                             const std::vector<std::uint32_t>& alpha,
                             std::uint32_t m,
                             std::vector<std::int8_t>& gbuf) {
  // block_mask[r]: the x-index bits toggled when z_r flips.
  std::uint64_t block_mask[64] = {0};
  std::uint64_t base = 0;
  for (std::uint32_t i = 0; i < f.n; ++i) {
    block_mask[alpha[i]] |= std::uint64_t{1} << i;
    if (a[i] == -1) base ^= std::uint64_t{1} << i;
  }
  // g over all z by Gray-code walk (flipping z_r toggles block_mask[r]).
  const std::uint64_t zcount = std::uint64_t{1} << m;
  gbuf.resize(zcount);
  std::uint64_t x = base;  // z = all +1 maps to x = a
  std::uint64_t gray_prev = 0;
  for (std::uint64_t zi = 0; zi < zcount; ++zi) {
    const std::uint64_t gray = zi ^ (zi >> 1);
    if (zi != 0) {
      const std::uint64_t changed = gray ^ gray_prev;
      int bit = 0;
      while (!((changed >> bit) & 1)) ++bit;
      x ^= block_mask[bit];
    }
    gray_prev = gray;
    gbuf[gray] = f.values[x];
  }
  std::uint64_t sensitive = 0;
  for (std::uint64_t zi = 0; zi < zcount; ++zi)
    for (std::uint32_t r = 0; r < m; ++r)
      if (gbuf[zi] != gbuf[zi ^ (std::uint64_t{1} << r)]) ++sensitive;
  return static_cast<double>(sensitive) / static_cast<double>(zcount);
}

/// Nested estimate of the same quantity when 2^m is too large.
double block_influence_sampled(const TruthTable& f,
                               const std::vector<std::int8_t>& a,
                               const std::vector<std::uint32_t>& alpha,
                               std::uint32_t m, Rng& rng,
                               std::uint64_t inner) {
  std::vector<std::uint64_t> block_mask(m, 0);
  std::uint64_t base = 0;
  for (std::uint32_t i = 0; i < f.n; ++i) {
    block_mask[alpha[i]] |= std::uint64_t{1} << i;
    if (a[i] == -1) base ^= std::uint64_t{1} << i;
  }
  // E_z[# sensitive blocks] estimated over random (z, r) with the m factor.
  std::uint64_t sensitive = 0;
  for (std::uint64_t t = 0; t < inner; ++t) {
    std::uint64_t x = base;
    for (std::uint32_t r = 0; r < m; ++r)
      if (rng.sign() == -1) x ^= block_mask[r];
    const std::uint32_t r = static_cast<std::uint32_t>(rng.below(m));
    if (f.values[x] != f.values[x ^ block_mask[r]]) ++sensitive;
  }
  return static_cast<double>(m) * static_cast<double>(sensitive) /
         static_cast<double>(inner);
}

}  // namespace

ReductionReport reduction_estimate(const TruthTable& f, std::uint32_t d,
                                   double eps, std::uint64_t trials,
                                   std::uint64_t seed, Exec exec) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("reduction: eps must lie in (0, 1]");
  const std::uint32_t m = static_cast<std::uint32_t>(std::floor(1.0 / eps));
  ReductionReport report;
  report.m = m;
  report.noise_rate = 1.0 / static_cast<double>(m);
  report.bound_over_m = as_bound_closed(m, d) / static_cast<double>(m);
  const bool exact_inner = m <= 20;
  const std::uint64_t inner = 4096;

  auto parts = run_chunks<Accum>(
      trials, 1 << 8,
      [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
        Rng rng = Rng::stream(seed, kOpReduction, chunk);
        Accum acc;
        std::vector<std::int8_t> gbuf;
        for (std::uint64_t t = b; t < e; ++t) {
          ReductionSample s = sample_reduction(f.n, m, rng);
          const double inf =
              exact_inner
                  ? block_total_influence(f, s.a, s.alpha, m, gbuf)
                  : block_influence_sampled(f, s.a, s.alpha, m, rng, inner);
          acc.add(inf / static_cast<double>(m));
        }
        return acc;
      },
      exec);
  Accum total;
  for (const Accum& a : parts) total.merge(a);
  report.estimate = total.to_estimate(seed);
  return report;
}

PtfBoolean replicate(const MultilinearPoly& p, std::uint32_t k, Exec exec) {
  if (k < 1) throw std::invalid_argument("replicate: k >= 1");
  const std::uint64_t total_vars = static_cast<std::uint64_t>(p.n) * k;
  if (total_vars > 24)
    throw std::invalid_argument("replicate: n*k exceeds enumeration budget");
  const std::uint32_t nk = static_cast<std::uint32_t>(total_vars);
  // Variable (i, j) -> index (i-1)*k + j, j in [0, k).  Evaluate the real
  // function q(y) = p(S_1/sqrt(k), ...) on the whole cube, then take its
  // Walsh expansion; sign(q) is the replicated PTF.
  const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
  std::vector<double> vals(std::size_t{1} << nk);
  const std::int64_t count = static_cast<std::int64_t>(vals.size());
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    std::vector<double> x(p.n);
    for (std::uint32_t i = 0; i < p.n; ++i) {
      int s = 0;
      for (std::uint32_t j = 0; j < k; ++j)
        s += (idx >> (i * k + j)) & 1 ? -1 : +1;
      x[i] = static_cast<double>(s) * inv_sqrt_k;
    }
    vals[static_cast<std::size_t>(idx)] =
        evaluate(p, std::span<const double>(x));
  }
  std::vector<std::int8_t> signs(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    signs[i] = vals[i] < 0.0 ? -1 : +1;

  walsh_hadamard(vals, exec);
  const double scale = 1.0 / static_cast<double>(vals.size());
  MultilinearPoly q(nk);
  for (std::uint64_t mask = 0; mask < vals.size(); ++mask) {
    const double c = vals[mask] * scale;
    if (std::fabs(c) > 1e-13) q.coeffs.emplace(mask_varset(mask), c);
  }
  PtfBoolean out;
  out.p = std::move(q);
  out.table = TruthTable(nk, std::move(signs));
  return out;
}

}  // namespace ptf
