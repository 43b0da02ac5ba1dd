#pragma once

#include <cstdint>
#include <string>

#include "ptf/boolean_sense.hpp"
#include "ptf/hermite.hpp"
#include "ptf/multilinear.hpp"
#include "ptf/rng.hpp"

namespace ptf {

/// Dense family: independent N(0,1) coefficients on every monomial of
/// size 1..d plus the constant term.
MultilinearPoly random_dense_poly(std::uint32_t n, std::uint32_t d, Rng& rng);

/// Sparse family: N(0,1) coefficients on m distinct random monomials of
/// size 1..d.
MultilinearPoly random_sparse_poly(std::uint32_t n, std::uint32_t d,
                                   std::uint32_t terms, Rng& rng);

/// Regular-by-construction family: equal-magnitude random-sign
/// coefficients on every monomial of size exactly d, normalized.
MultilinearPoly regular_poly(std::uint32_t n, std::uint32_t d, Rng& rng);

/// Gaussian-side families in the Hermite basis, normalized to unit norm.
HermiteExpansion random_expansion(std::uint32_t n, std::uint32_t d, Rng& rng);
HermiteExpansion regular_expansion(std::uint32_t n, std::uint32_t d,
                                   Rng& rng);

/// Draws from the named family and rejects polynomials with an exact zero
/// on the hypercube (ties are a measure-zero event; redraw on collision).
/// Returns the PTF with its table materialized.
PtfBoolean random_ptf_checked(const std::string& family, std::uint32_t n,
                              std::uint32_t d, std::uint32_t terms, Rng& rng);

}  // namespace ptf
