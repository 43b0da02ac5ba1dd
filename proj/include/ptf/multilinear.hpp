#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace ptf {

/// A set of variable indices (1-based), sorted ascending.  Doubles as the
/// monomial key of a multilinear polynomial: {} is the constant term.
using VarSet = std::vector<std::uint32_t>;

/// Partial assignment of variables to +/-1.
struct Restriction {
  std::map<std::uint32_t, int> assignments;  // var -> +/-1

  bool assigns(std::uint32_t var) const {
    return assignments.count(var) != 0;
  }
};

/// Multilinear polynomial over x in {-1,+1}^n (also evaluable on R^n),
/// stored as a sparse map from monomial variable sets to coefficients.
/// Under the uniform distribution on the hypercube these coefficients are
/// exactly the Walsh(Fourier) coefficients of the function, so norms and
/// influences are coefficient arithmetic.
struct MultilinearPoly {
  std::uint32_t n = 0;
  std::map<VarSet, double> coeffs;

  MultilinearPoly() = default;
  explicit MultilinearPoly(std::uint32_t nvars) : n(nvars) {}

  /// Adds c to the coefficient of the monomial over vars (must be sorted).
  void add_term(VarSet vars, double c);

  double coeff(const VarSet& vars) const {
    auto it = coeffs.find(vars);
    return it == coeffs.end() ? 0.0 : it->second;
  }

  /// Drops exact-zero entries (kept separate so accumulation is explicit).
  void prune(double tol = 0.0);

  std::uint32_t degree() const;
  bool is_constant() const { return degree() == 0; }

  /// Sum of squared coefficients = E[p(x)^2] on the hypercube (Parseval).
  double norm_sq() const;
  /// Same, excluding the constant term: Var[p] on the hypercube.
  double variance() const;

  MultilinearPoly scaled(double s) const;
};

/// p(x) = sum_S c_S * prod_{i in S} x_i; x is 1-based via x[i-1].
double evaluate(const MultilinearPoly& p, std::span<const double> x);
double evaluate(const MultilinearPoly& p, const std::vector<int>& x);

/// Influence of variable i on the real-valued p: sum of squared
/// coefficients over monomials containing i.
double influence_poly(const MultilinearPoly& p, std::uint32_t i);

/// Sum of all coordinate influences = sum over S of |S| * c_S^2.
double total_influence_poly(const MultilinearPoly& p);

std::vector<double> all_influences(const MultilinearPoly& p);

/// Formal partial derivative: D_i p = sum_{S ni i} c_S x_{S \ {i}}.
MultilinearPoly derivative(const MultilinearPoly& p, std::uint32_t i);

/// Substitutes the assigned variables; the result is a polynomial over the
/// surviving variables of the same ambient dimension.
MultilinearPoly restrict_poly(const MultilinearPoly& p, const Restriction& rho);

/// Sum and scalar combination helpers used by constructions.
MultilinearPoly sum(const MultilinearPoly& a, const MultilinearPoly& b);

/// Bitmask view of a key for dense transforms; requires all vars <= 64.
std::uint64_t varset_mask(const VarSet& s);
VarSet mask_varset(std::uint64_t mask);

}  // namespace ptf
