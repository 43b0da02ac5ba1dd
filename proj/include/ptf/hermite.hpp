#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ptf/multilinear.hpp"

namespace ptf {

/// Multi-index S in N^n, canonicalized by trimming trailing zeros; entry
/// S[i] is the Hermite degree in variable i+1.
using MultiIndex = std::vector<std::uint32_t>;

MultiIndex trim_index(MultiIndex s);
std::uint32_t index_degree(const MultiIndex& s);  // |S| = sum of entries

/// h_k(x), the orthonormal Hermite polynomial under N(0,1), computed by the
/// three-term recurrence sqrt(k) h_k = x h_{k-1} - sqrt(k-1) h_{k-2}.
double hermite_eval(std::uint32_t k, double x);

/// h_0(x) .. h_kmax(x) in one sweep.
std::vector<double> hermite_all(std::uint32_t kmax, double x);

/// H_S(x) = prod_i h_{S_i}(x_i); S may be shorter than x (trailing zeros).
double hermite_eval_multi(const MultiIndex& s, std::span<const double> x);

/// Pointwise envelope (e k)^{k/2} * max(1, |x|^k) valid for all k >= 1.
double hermite_growth_bound(std::uint32_t k, double x);

/// Polynomial over R^n under N(0, I_n) in the orthonormal Hermite basis.
struct HermiteExpansion {
  std::uint32_t n = 0;
  std::map<MultiIndex, double> coeffs;

  HermiteExpansion() = default;
  explicit HermiteExpansion(std::uint32_t nvars) : n(nvars) {}

  void add_term(MultiIndex s, double c);
  double coeff(const MultiIndex& s) const {
    auto it = coeffs.find(s);
    return it == coeffs.end() ? 0.0 : it->second;
  }

  std::uint32_t degree() const;  // max |S| over stored keys
  double norm_sq() const;        // = E[p^2] by Parseval
  HermiteExpansion scaled(double s) const;
};

double evaluate_expansion(const HermiteExpansion& p, std::span<const double> x);

/// Gaussian influence of variable i on the real-valued p: Hermite mass on
/// multi-indices with S_i > 0.
double gaussian_influence_poly(const HermiteExpansion& p, std::uint32_t i);

/// Writes p as sum_j q_j(x_{-i}) h_j(x_i); returns q_0..q_d as expansions
/// over the same ambient variables with coordinate i unused.  Norms satisfy
/// sum_j ||q_j||^2 = ||p||^2 and sum_{j>=1} ||q_j||^2 = GI_i(p).
std::vector<HermiteExpansion> slice(const HermiteExpansion& p,
                                    std::uint32_t i);

/// x^k in the h-basis: x^k = sum_j c[j] h_j(x).  Supported for k <= 8.
std::vector<double> monomial_in_hermite(std::uint32_t power);

/// Multilinear polynomials embed coefficient-for-coefficient (h_1(x) = x).
HermiteExpansion from_multilinear(const MultilinearPoly& p);

/// Gauss-Hermite rule adapted to N(0,1): E[f(g)] ~= sum_i w[i] f(x[i]);
/// exact for polynomials of degree <= 2*points - 1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(std::uint32_t points);

}  // namespace ptf
