#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptf/multilinear.hpp"
#include "ptf/parallel.hpp"

namespace ptf {

/// Influence ordering and regularity report for a polynomial.
///
/// ordering[k] is the variable with the (k+1)-st largest influence in p
/// (ties broken by variable index, so the report is canonical under
/// relabeling).  index is the least i such that
///   Inf_{(i+1)} / sum_{j > i} Inf_{(j)} <= tau,
/// with nullopt standing for "no such i" (+infinity); index 0 means the
/// polynomial is tau-regular.  A zero tail sum satisfies the test.
struct CriticalIndexReport {
  std::vector<std::uint32_t> ordering;
  std::optional<std::uint32_t> index;
  double tau = 0.0;
  std::vector<double> influences;  // sorted nonincreasing, along ordering
  std::vector<double> tails;       // tails[j] = sum_{i > j} influences[i-1]
  bool regular() const { return index.has_value() && *index == 0; }
};

CriticalIndexReport critical_index(const MultilinearPoly& p, double tau);

/// Default regularity parameter n^{-(4d+2-1)/(4d+2)}.
double default_tau(std::uint32_t n, std::uint32_t d);

/// Head length K = 2 d ln(n) / tau used when the critical index is large.
/// Natural log; the choice is recorded in report metadata.
double head_length(std::uint32_t n, std::uint32_t d, double tau);

/// Checks tail(j) <= (1 - tau)^j * Inf(p) for j = 0 .. min(index, n).
struct TailDecayRow {
  std::uint32_t j;
  double tail;
  double bound;
  bool ok;
};
std::vector<TailDecayRow> tail_decay_check(const MultilinearPoly& p,
                                           double tau);

/// Distribution of Inf_ell(p_rho) over restrictions rho of a head set:
/// exceedance rates of the thresholds t * 3^d * Inf_ell(p), plus the mean,
/// which equals Inf_ell(p) exactly when all 2^k restrictions are enumerated
/// (k <= 12) and approximately when sampled.
struct RestrictionDeviation {
  double base_influence = 0.0;   // Inf_ell(p)
  double mean_influence = 0.0;   // average of Inf_ell(p_rho)
  bool exact = false;            // full enumeration vs sampling
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<double, double>> exceedance;  // (t, rate)
};
RestrictionDeviation restriction_influence_deviation(
    const MultilinearPoly& p, const std::vector<std::uint32_t>& head,
    std::uint32_t ell, const std::vector<double>& t_grid,
    std::uint64_t trials, std::uint64_t seed, Exec exec = Exec::parallel);

enum class DecompKind { regular, small_ci, large_ci };

/// Outcome of the regularity decomposition.
///
///  - regular: index 0; no restrictions sampled.
///  - small_ci: index k in [1, K]; the k top-influence variables are
///    restricted and fraction_regular_tail reports how often the surviving
///    influence sequence is tau'-regular with tau' = (3 ln n)^d tau.
///  - large_ci: index > K; the top K variables are restricted and
///    fraction_constant reports how often sign(p_rho) is certified
///    constant.  Certification is sound: either the constant-term magnitude
///    beats the sum of |coefficients| on the surviving variables, or (when
///    at most 20 variables survive) exhaustive evaluation decides.
struct DecompositionOutcome {
  DecompKind kind = DecompKind::regular;
  CriticalIndexReport report;
  double tau = 0.0;
  double tau_prime = 0.0;
  double K = 0.0;
  std::uint32_t restricted = 0;     // head size actually restricted
  bool degenerate = false;          // K >= n: restriction covers everything
  bool enumerated = false;          // all 2^k assignments vs sampled
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double fraction_regular_tail = 0.0;  // small_ci
  double fraction_constant = 0.0;      // large_ci
  std::string to_json() const;
};

DecompositionOutcome decompose(const MultilinearPoly& p, double tau,
                               std::uint64_t trials, std::uint64_t seed,
                               Exec exec = Exec::parallel);

}  // namespace ptf
