#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ptf/estimate.hpp"
#include "ptf/hermite.hpp"
#include "ptf/multilinear.hpp"
#include "ptf/parallel.hpp"
#include "ptf/rng.hpp"
#include "ptf/truth_table.hpp"

namespace ptf {

/// Correlated Gaussian pair: y = (1-eps) x + sqrt(2 eps - eps^2) z with
/// independent x, z ~ N(0, I_n); marginally y ~ N(0, I_n) and matched
/// coordinates have correlation 1 - eps.
struct NoisePair {
  std::vector<double> x;
  std::vector<double> y;
};
NoisePair sample_noise_pair(std::uint32_t n, double eps, Rng& rng);

/// GI_i(sign(p)) = 2 Pr[f(x) != f(x with coordinate i redrawn)], estimated
/// by Monte Carlo; exact 0 when p does not involve coordinate i.
Estimate estimate_gi(const HermiteExpansion& p, std::uint32_t i,
                     std::uint64_t samples, std::uint64_t seed,
                     Exec exec = Exec::parallel);

/// Sum of per-coordinate GI estimates; combined standard error.
struct GasReport {
  Estimate total;
  std::vector<Estimate> per_coordinate;
};
GasReport estimate_gas(const HermiteExpansion& p, std::uint64_t samples,
                       std::uint64_t seed, Exec exec = Exec::parallel);

/// Pr[sign(p(x)) != sign(p(y))] over noise pairs.
Estimate estimate_gns(const HermiteExpansion& p, double eps,
                      std::uint64_t samples, std::uint64_t seed,
                      Exec exec = Exec::parallel);

/// ||p(x) - p(y)||_2: Monte Carlo estimate next to the coefficient-space
/// value sqrt(sum_S 2 (1 - (1-eps)^{|S|}) c_S^2); the cross terms vanish
/// because E[H_S(x) H_T(y)] = 0 for S != T.
struct PerturbationNorm {
  Estimate mc;    // estimate of sqrt(E[(p(x)-p(y))^2]), delta-method stderr
  double exact;   // coefficient-space value
};
PerturbationNorm perturbation_norm(const HermiteExpansion& p, double eps,
                                   std::uint64_t samples, std::uint64_t seed,
                                   Exec exec = Exec::parallel);

/// Monte Carlo probe of E[H_S(x) H_T(y)] (statistically zero for S != T).
Estimate hermite_cross_term(const MultiIndex& s, const MultiIndex& t,
                            std::uint32_t n, double eps,
                            std::uint64_t samples, std::uint64_t seed,
                            Exec exec = Exec::parallel);

/// Exact ||h_k(x) - h_k(y)||_2 = sqrt(2 - 2 (1-eps)^k), since
/// E[h_k(x) h_k(y)] = (1-eps)^k for the correlated pair.
double hermite_delta_norm_exact(std::uint32_t k, double eps);
/// The explicit envelope 8 sqrt(k eps); valid when eps <= 2^{-2k-1}.
double hermite_delta_norm_bound(std::uint32_t k, double eps);
bool hermite_delta_bound_in_regime(std::uint32_t k, double eps);

/// Empirical Pr[|p| >= t * ||p||_2] per threshold; rows are flagged when t
/// exceeds e^d, the regime of the exponential tail envelope.
struct TailRow {
  double t;
  Estimate prob;
  bool in_regime;  // t > e^d
};
std::vector<TailRow> tail_probe(const HermiteExpansion& p,
                                const std::vector<double>& thresholds,
                                std::uint64_t samples, std::uint64_t seed,
                                Exec exec = Exec::parallel);

/// Empirical small-ball probabilities Pr[|p| <= eps * ||p||_2] under
/// Gaussian inputs and, for the same multilinear polynomial, under uniform
/// hypercube inputs.
struct AnticoncRow {
  double eps;
  Estimate gaussian;
  Estimate hypercube;
};
std::vector<AnticoncRow> anticoncentration_probe(
    const MultilinearPoly& p, const std::vector<double>& eps_grid,
    std::uint64_t samples, std::uint64_t seed, Exec exec = Exec::parallel);

/// Gaussian-only variant for general Hermite expansions.
std::vector<std::pair<double, Estimate>> anticoncentration_gaussian(
    const HermiteExpansion& p, const std::vector<double>& eps_grid,
    std::uint64_t samples, std::uint64_t seed, Exec exec = Exec::parallel);

/// Kolmogorov-Smirnov distance between the empirical laws of p under
/// uniform hypercube inputs and under N(0, I_n); max_influence reports
/// max_i Inf_i(p) of the input polynomial.
struct InvarianceReport {
  double ks_distance = 0.0;
  double max_influence = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};
InvarianceReport invariance_distance(const MultilinearPoly& p,
                                     std::uint64_t samples,
                                     std::uint64_t seed,
                                     Exec exec = Exec::parallel);

}  // namespace ptf
