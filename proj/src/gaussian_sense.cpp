#include "ptf/gaussian_sense.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ptf {

namespace {

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("noise rate must lie in [0, 1]");
}

int sign_of(double v) { return v < 0.0 ? -1 : +1; }

/// Canonical merge of per-chunk accumulators.
Estimate merge_to_estimate(const std::vector<Accum>& parts,
                           std::uint64_t seed) {
  Accum total;
  for (const Accum& a : parts) total.merge(a);
  return total.to_estimate(seed);
}

}  // namespace

NoisePair sample_noise_pair(std::uint32_t n, double eps, Rng& rng) {
  check_eps(eps);
  const double alpha = 1.0 - eps;
  const double beta = std::sqrt(2.0 * eps - eps * eps);
  NoisePair pair;
  pair.x.resize(n);
  pair.y.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) pair.x[i] = rng.normal();
  if (eps == 0.0) {
    pair.y = pair.x;
    return pair;
  }
  for (std::uint32_t i = 0; i < n; ++i)
    pair.y[i] = alpha * pair.x[i] + beta * rng.normal();
  return pair;
}

Estimate estimate_gi(const HermiteExpansion& p, std::uint32_t i,
                     std::uint64_t samples, std::uint64_t seed, Exec exec) {
  if (i < 1 || i > p.n)
    throw std::out_of_range("variable index out of range [1, n]");
  if (gaussian_influence_poly(p, i) == 0.0)
    return Estimate{0.0, 0.0, samples, seed};
  auto parts = run_chunks<Accum>(
      samples, kMcChunk,
      [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
        Rng xs = Rng::stream(seed, kOpGi, i, chunk);
        Rng rep = Rng::stream(seed, kOpGiReplacement, i, chunk);
        Accum acc;
        std::vector<double> x(p.n);
        for (std::uint64_t s = b; s < e; ++s) {
          for (std::uint32_t v = 0; v < p.n; ++v) x[v] = xs.normal();
          const int s1 = sign_of(evaluate_expansion(p, x));
          x[i - 1] = rep.normal();
          const int s2 = sign_of(evaluate_expansion(p, x));
          acc.add(s1 != s2 ? 2.0 : 0.0);
        }
        return acc;
      },
      exec);
  return merge_to_estimate(parts, seed);
}

GasReport estimate_gas(const HermiteExpansion& p, std::uint64_t samples,
                       std::uint64_t seed, Exec exec) {
  GasReport report;
  double mean = 0.0, var = 0.0;
  for (std::uint32_t i = 1; i <= p.n; ++i) {
    Estimate est = estimate_gi(p, i, samples, seed, exec);
    mean += est.mean;
    var += est.std_err * est.std_err;
    report.per_coordinate.push_back(est);
  }
  report.total = Estimate{mean, std::sqrt(var), samples, seed};
  return report;
}

Estimate estimate_gns(const HermiteExpansion& p, double eps,
                      std::uint64_t samples, std::uint64_t seed, Exec exec) {
  check_eps(eps);
  auto parts = run_chunks<Accum>(
      samples, kMcChunk,
      [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
        Rng rng = Rng::stream(seed, kOpGns, chunk);
        Accum acc;
        for (std::uint64_t s = b; s < e; ++s) {
          NoisePair pair = sample_noise_pair(p.n, eps, rng);
          const int s1 = sign_of(evaluate_expansion(p, pair.x));
          const int s2 = sign_of(evaluate_expansion(p, pair.y));
          acc.add(s1 != s2 ? 1.0 : 0.0);
        }
        return acc;
      },
      exec);
  return merge_to_estimate(parts, seed);
}

PerturbationNorm perturbation_norm(const HermiteExpansion& p, double eps,
                                   std::uint64_t samples, std::uint64_t seed,
                                   Exec exec) {
  check_eps(eps);
  PerturbationNorm out;
  double exact_sq = 0.0;
  const double alpha = 1.0 - eps;
  for (const auto& [s, c] : p.coeffs) {
    const std::uint32_t deg = index_degree(s);
    if (deg == 0) continue;  // constant term cancels in p(x) - p(y)
    exact_sq += 2.0 * (1.0 - std::pow(alpha, static_cast<double>(deg))) * c * c;
  }
  out.exact = std::sqrt(exact_sq);

  auto parts = run_chunks<Accum>(
      samples, kMcChunk,
      [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
        Rng rng = Rng::stream(seed, kOpPerturbation, chunk);
        Accum acc;
        for (std::uint64_t s = b; s < e; ++s) {
          NoisePair pair = sample_noise_pair(p.n, eps, rng);
          const double d =
              evaluate_expansion(p, pair.x) - evaluate_expansion(p, pair.y);
          acc.add(d * d);
        }
        return acc;
      },
      exec);
  Estimate sq = merge_to_estimate(parts, seed);
  // Delta method: stderr of sqrt(m) is stderr(m) / (2 sqrt(m)).
  Estimate mc;
  mc.samples = sq.samples;
  mc.seed = seed;
  if (sq.mean > 0.0) {
    mc.mean = std::sqrt(sq.mean);
    mc.std_err = sq.std_err / (2.0 * mc.mean);
  }
  out.mc = mc;
  return out;
}

Estimate hermite_cross_term(const MultiIndex& s, const MultiIndex& t,
                            std::uint32_t n, double eps,
                            std::uint64_t samples, std::uint64_t seed,
                            Exec exec) {
  check_eps(eps);
  const MultiIndex si = trim_index(s), ti = trim_index(t);
  if (si.size() > n || ti.size() > n)
    throw std::invalid_argument("multi-index references variable > n");
  auto parts = run_chunks<Accum>(
      samples, kMcChunk,
      [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
        Rng rng = Rng::stream(seed, kOpCrossTerm, chunk);
        Accum acc;
        for (std::uint64_t k = b; k < e; ++k) {
          NoisePair pair = sample_noise_pair(n, eps, rng);
          acc.add(hermite_eval_multi(si, pair.x) *
                  hermite_eval_multi(ti, pair.y));
        }
        return acc;
      },
      exec);
  return merge_to_estimate(parts, seed);
}

double hermite_delta_norm_exact(std::uint32_t k, double eps) {
  check_eps(eps);
  return std::sqrt(
      2.0 - 2.0 * std::pow(1.0 - eps, static_cast<double>(k)));
}

double hermite_delta_norm_bound(std::uint32_t k, double eps) {
  return 8.0 * std::sqrt(static_cast<double>(k)) * std::sqrt(eps);
}

bool hermite_delta_bound_in_regime(std::uint32_t k, double eps) {
  return eps <= std::pow(2.0, -2.0 * static_cast<double>(k) - 1.0);
}

std::vector<TailRow> tail_probe(const HermiteExpansion& p,
                                const std::vector<double>& thresholds,
                                std::uint64_t samples, std::uint64_t seed,
                                Exec exec) {
  const double norm = std::sqrt(p.norm_sq());
  if (norm == 0.0) throw std::invalid_argument("tail_probe: zero polynomial");
  const double regime = std::exp(static_cast<double>(p.degree()));
  std::vector<TailRow> rows;
  for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
    const double t = thresholds[ti];
    auto parts = run_chunks<Accum>(
        samples, kMcChunk,
        [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
          Rng rng = Rng::stream(seed, kOpTailProbe, ti, chunk);
          Accum acc;
          std::vector<double> x(p.n);
          for (std::uint64_t s = b; s < e; ++s) {
            for (std::uint32_t v = 0; v < p.n; ++v) x[v] = rng.normal();
            acc.add(std::fabs(evaluate_expansion(p, x)) >= t * norm ? 1.0
                                                                    : 0.0);
          }
          return acc;
        },
        exec);
    rows.push_back(TailRow{t, merge_to_estimate(parts, seed), t > regime});
  }
  return rows;
}

std::vector<AnticoncRow> anticoncentration_probe(
    const MultilinearPoly& p, const std::vector<double>& eps_grid,
    std::uint64_t samples, std::uint64_t seed, Exec exec) {
  const double norm = std::sqrt(p.norm_sq());
  if (norm == 0.0)
    throw std::invalid_argument("anticoncentration_probe: zero polynomial");
  std::vector<AnticoncRow> rows;
  for (std::size_t gi = 0; gi < eps_grid.size(); ++gi) {
    const double eps = eps_grid[gi];
    auto gauss = run_chunks<Accum>(
        samples, kMcChunk,
        [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
          Rng rng = Rng::stream(seed, kOpAnticoncGauss, gi, chunk);
          Accum acc;
          std::vector<double> x(p.n);
          for (std::uint64_t s = b; s < e; ++s) {
            for (std::uint32_t v = 0; v < p.n; ++v) x[v] = rng.normal();
            acc.add(std::fabs(evaluate(p, x)) <= eps * norm ? 1.0 : 0.0);
          }
          return acc;
        },
        exec);
    auto cube = run_chunks<Accum>(
        samples, kMcChunk,
        [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
          Rng rng = Rng::stream(seed, kOpAnticoncCube, gi, chunk);
          Accum acc;
          std::vector<double> x(p.n);
          for (std::uint64_t s = b; s < e; ++s) {
            for (std::uint32_t v = 0; v < p.n; ++v)
              x[v] = static_cast<double>(rng.sign());
            acc.add(std::fabs(evaluate(p, x)) <= eps * norm ? 1.0 : 0.0);
          }
          return acc;
        },
        exec);
    rows.push_back(AnticoncRow{eps, merge_to_estimate(gauss, seed),
                               merge_to_estimate(cube, seed)});
  }
  return rows;
}

std::vector<std::pair<double, Estimate>> anticoncentration_gaussian(
    const HermiteExpansion& p, const std::vector<double>& eps_grid,
    std::uint64_t samples, std::uint64_t seed, Exec exec) {
  const double norm = std::sqrt(p.norm_sq());
  if (norm == 0.0)
    throw std::invalid_argument("anticoncentration_gaussian: zero polynomial");
  std::vector<std::pair<double, Estimate>> rows;
  for (std::size_t gi = 0; gi < eps_grid.size(); ++gi) {
    const double eps = eps_grid[gi];
    auto parts = run_chunks<Accum>(
        samples, kMcChunk,
        [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
          Rng rng = Rng::stream(seed, kOpAnticoncGauss, gi, chunk);
          Accum acc;
          std::vector<double> x(p.n);
          for (std::uint64_t s = b; s < e; ++s) {
            for (std::uint32_t v = 0; v < p.n; ++v) x[v] = rng.normal();
            acc.add(std::fabs(evaluate_expansion(p, x)) <= eps * norm ? 1.0
                                                                      : 0.0);
          }
          return acc;
        },
        exec);
    rows.emplace_back(eps, merge_to_estimate(parts, seed));
  }
  return rows;
}

InvarianceReport invariance_distance(const MultilinearPoly& p,
                                     std::uint64_t samples,
                                     std::uint64_t seed, Exec exec) {
  InvarianceReport rep;
  rep.samples = samples;
  rep.seed = seed;
  for (std::uint32_t i = 1; i <= p.n; ++i)
    rep.max_influence = std::max(rep.max_influence, influence_poly(p, i));

  auto gather = [&](std::uint64_t op, bool cube) {
    auto parts = run_chunks<std::vector<double>>(
        samples, kMcChunk,
        [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
          Rng rng = Rng::stream(seed, op, chunk);
          std::vector<double> vals;
          vals.reserve(e - b);
          std::vector<double> x(p.n);
          for (std::uint64_t s = b; s < e; ++s) {
            for (std::uint32_t v = 0; v < p.n; ++v)
              x[v] = cube ? static_cast<double>(rng.sign()) : rng.normal();
            vals.push_back(evaluate(p, x));
          }
          return vals;
        },
        exec);
    std::vector<double> all;
    all.reserve(samples);
    for (auto& part : parts)
      all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end());
    return all;
  };
  const std::vector<double> cube_vals = gather(kOpInvarianceCube, true);
  const std::vector<double> gauss_vals = gather(kOpInvarianceGauss, false);

  // Two-sample KS statistic over the merged support.
  const double n1 = static_cast<double>(cube_vals.size());
  const double n2 = static_cast<double>(gauss_vals.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < cube_vals.size() && j < gauss_vals.size()) {
    const double v = std::min(cube_vals[i], gauss_vals[j]);
    while (i < cube_vals.size() && cube_vals[i] <= v) ++i;
    while (j < gauss_vals.size() && gauss_vals[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n1 -
                              static_cast<double>(j) / n2));
  }
  rep.ks_distance = d;
  return rep;
}

}  // namespace ptf
