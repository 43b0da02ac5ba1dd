#pragma once

// Test-side oracles, independent of the library's computation paths:
// brute-force inner products, pair enumeration, adaptive quadrature, and
// closed-form special functions.

#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ptf/multilinear.hpp"
#include "ptf/truth_table.hpp"

namespace oracle {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / M_SQRT2); }

/// Walsh coefficient by direct inner product over all inputs.
inline double fourier_coeff_brute(const ptf::TruthTable& f,
                                  const ptf::VarSet& s) {
  double acc = 0.0;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    double chi = 1.0;
    for (std::uint32_t v : s) chi *= ptf::TruthTable::input_bit(x, v);
    acc += chi * f.values[x];
  }
  return acc / static_cast<double>(f.size());
}

/// NS by direct enumeration of all (input, flip-pattern) pairs; O(4^n),
/// compensated summation.
inline double ns_pairs(const ptf::TruthTable& f, double eps) {
  std::vector<double> prob(f.n + 1);
  for (std::uint32_t k = 0; k <= f.n; ++k)
    prob[k] = std::pow(eps, static_cast<double>(k)) *
              std::pow(1.0 - eps, static_cast<double>(f.n - k));
  double sum = 0.0, comp = 0.0;
  for (std::uint64_t x = 0; x < f.size(); ++x)
    for (std::uint64_t m = 0; m < f.size(); ++m) {
      if (f.values[x] == f.values[x ^ m]) continue;
      const double y = prob[std::popcount(m)] - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  return sum / static_cast<double>(f.size());
}

/// Adaptive Gauss-Legendre (15-node panels, bisection on disagreement with
/// the embedded 7-node estimate).
namespace detail {
// 15-point Gauss-Legendre nodes/weights on [-1, 1].
inline const double kGlx[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
inline const double kGlw[15] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};
// Embedded 7-point rule on the same interval for the error estimate.
inline const double kGl7x[7] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
inline const double kGl7w[7] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
    0.1294849661688697};

inline double panel(const std::function<double(double)>& f, double a,
                    double b, const double* xs, const double* ws, int k) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < k; ++i) acc += ws[i] * f(c + h * xs[i]);
  return acc * h;
}

inline double adaptive(const std::function<double(double)>& f, double a,
                       double b, double tol, int depth) {
  const double coarse = panel(f, a, b, kGl7x, kGl7w, 7);
  const double fine = panel(f, a, b, kGlx, kGlw, 15);
  if (std::fabs(fine - coarse) <= tol || depth > 40) return fine;
  const double mid = 0.5 * (a + b);
  return adaptive(f, a, mid, tol / 2, depth + 1) +
         adaptive(f, mid, b, tol / 2, depth + 1);
}
}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-9) {
  return detail::adaptive(f, a, b, tol, 0);
}

inline double integrate2d(const std::function<double(double, double)>& f,
                          double ax, double bx, double ay, double by,
                          double tol = 1e-8) {
  return integrate(
      [&](double x) {
        return integrate([&](double y) { return f(x, y); }, ay, by,
                         tol / (bx - ax));
      },
      ax, bx, tol);
}

inline double gauss_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

/// GI_1 of sign(c1 x1 + c2 x2) under independent coordinate-1 resampling,
/// as a 2-D integral over (x2, x1): the region where the sign is positive,
/// weighted by the probability a fresh x1 makes it negative, and doubled
/// for the opposite order, then doubled again for the GI definition.
inline double halfspace2_gi1(double c1, double c2) {
  if (!(c1 > 0.0)) throw std::invalid_argument("oracle expects c1 > 0");
  const double integral = integrate2d(
      [&](double x2, double x1) {
        if (c1 * x1 + c2 * x2 <= 0.0) return 0.0;
        const double p_neg = normal_cdf(-c2 * x2 / c1);
        return gauss_pdf(x1) * gauss_pdf(x2) * p_neg;
      },
      -8.0, 8.0, -8.0, 8.0, 1e-9);
  return 2.0 * 2.0 * integral;
}

/// GI_1 of the symmetric halfspace sign(sum x_i / sqrt(n)); the other
/// n-1 coordinates collapse to s ~ N(0, n-1).
inline double symmetric_halfspace_gi1(std::uint32_t n) {
  const double sigma = std::sqrt(static_cast<double>(n - 1));
  const double integral = integrate(
      [&](double g) {
        const double s = sigma * g;
        return gauss_pdf(g) * 2.0 * normal_cdf(s) * normal_cdf(-s);
      },
      -10.0, 10.0, 1e-10);
  return 2.0 * integral;
}

/// Explicit finite sum for the orthonormal Hermite polynomial:
///   h_j(x) = sum_m (-1)^m sqrt(j!) / ((j-2m)! m! 2^m) x^(j-2m).
inline double hermite_closed_form(std::uint32_t j, double x) {
  auto fact = [](std::uint32_t k) {
    double r = 1.0;
    for (std::uint32_t i = 2; i <= k; ++i) r *= i;
    return r;
  };
  double acc = 0.0;
  double sign = 1.0;
  for (std::uint32_t m = 0; 2 * m <= j; ++m) {
    acc += sign * std::sqrt(fact(j)) /
           (fact(j - 2 * m) * fact(m) * std::pow(2.0, m)) *
           std::pow(x, static_cast<double>(j - 2 * m));
    sign = -sign;
  }
  return acc;
}

/// KS distance between the standardized Binomial(n, 1/2) law of
/// sum(x)/sqrt(n) and the standard normal, from exact CDFs.
inline double binomial_normal_ks(std::uint32_t n) {
  std::vector<double> logc(n + 1);
  for (std::uint32_t k = 1; k <= n; ++k)
    logc[k] = logc[k - 1] + std::log(static_cast<double>(n - k + 1)) -
              std::log(static_cast<double>(k));
  const double log2n = n * std::log(2.0);
  double cdf = 0.0, worst = 0.0;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  for (std::uint32_t k = 0; k <= n; ++k) {
    const double level = (2.0 * k - static_cast<double>(n)) / sqrt_n;
    // just below the atom, then just at it
    worst = std::max(worst, std::fabs(cdf - normal_cdf(level)));
    cdf += std::exp(logc[k] - log2n);
    worst = std::max(worst, std::fabs(cdf - normal_cdf(level)));
  }
  return worst;
}

}  // namespace oracle
