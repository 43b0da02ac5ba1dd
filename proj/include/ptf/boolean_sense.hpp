#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ptf/multilinear.hpp"
#include "ptf/parallel.hpp"
#include "ptf/truth_table.hpp"

namespace ptf {

/// Polynomial threshold function f = sign(p) with sign(0) = +1, optionally
/// carrying the materialized table of f.
struct PtfBoolean {
  MultilinearPoly p;
  std::optional<TruthTable> table;

  const TruthTable& ensure_table(Exec exec = Exec::parallel) {
    if (!table) table = sign_table(p, exec);
    return *table;
  }
};

/// Pr_x[f(x) != f(x with bit i flipped)], by enumeration.
double exact_influence(const TruthTable& f, std::uint32_t i,
                       Exec exec = Exec::parallel);
double exact_influence_serial(const TruthTable& f, std::uint32_t i);

/// Total influence = expected number of sensitive neighbors.
double exact_as(const TruthTable& f, Exec exec = Exec::parallel);
double exact_as_serial(const TruthTable& f);

/// Walsh mass per level: W[k] = sum over |S| = k of fhat(S)^2.
std::vector<double> spectrum_level_weights(const TruthTable& f,
                                           Exec exec = Exec::parallel);

/// Pr[f(x) != f(y)] where y flips each bit of x independently with
/// probability eps.  Computed spectrally:
///   NS_eps(f) = 1/2 - 1/2 * sum_k (1 - 2 eps)^k W[k].
double exact_ns(const TruthTable& f, double eps, Exec exec = Exec::parallel);
double ns_from_level_weights(const std::vector<double>& weights, double eps);

/// Inf_i(sign(p)) computed as E[f(x) x_i sign(D_i p(x))]; agrees exactly
/// with exact_influence for every PTF.
double influence_via_derivative(PtfBoolean& f, std::uint32_t i,
                                Exec exec = Exec::parallel);

/// Closed-form and recursive total-influence bounds for degree-d PTFs.
double as_bound_closed(std::uint32_t n, std::uint32_t d);
double as_bound_recursive(std::uint32_t n, std::uint32_t d);

/// The symmetric function that changes sign at the d layer boundaries of
/// the hypercube closest to 0.  Requires n >= d and n == d (mod 2) so the
/// boundary levels sit symmetrically between achievable values of sum(x).
/// It is a degree-d PTF: sign of prod_b (sum(x) - b) over the boundaries.
struct MiddleLayers {
  TruthTable table;
  std::vector<int> boundaries;        // the d boundary levels
  std::vector<std::int8_t> level_signs;  // sign at sum(x) = -n, -n+2, ..., n
};
MiddleLayers middle_layers_symmetric(std::uint32_t n, std::uint32_t d);

/// E[x_i x_j f g] for f independent of x_i and g independent of x_j
/// (checked on the monomial support); exact coefficient arithmetic.
double pairwise_cross_term(const MultilinearPoly& f, const MultilinearPoly& g,
                           std::uint32_t i, std::uint32_t j);

/// Exact total influence of the n-variable majority, n odd:
/// n * C(n-1, (n-1)/2) / 2^(n-1).
double majority_exact_as(std::uint32_t n);

/// The textbook binomial expression 2^{-n} C(n, floor(n/2)); emitted next
/// to majority_exact_as in reports (the two differ by a factor of n).
double halfspace_binomial_expression(std::uint32_t n);

}  // namespace ptf
