#include "ptf/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ptf {

MultiIndex trim_index(MultiIndex s) {
  while (!s.empty() && s.back() == 0) s.pop_back();
  return s;
}

std::uint32_t index_degree(const MultiIndex& s) {
  std::uint32_t d = 0;
  for (std::uint32_t e : s) d += e;
  return d;
}

double hermite_eval(std::uint32_t k, double x) {
  if (k == 0) return 1.0;
  double hm = 1.0;  // h_0
  double h = x;     // h_1
  for (std::uint32_t j = 2; j <= k; ++j) {
    const double next =
        (x * h - std::sqrt(static_cast<double>(j - 1)) * hm) /
        std::sqrt(static_cast<double>(j));
    hm = h;
    h = next;
  }
  return h;
}

std::vector<double> hermite_all(std::uint32_t kmax, double x) {
  std::vector<double> h(kmax + 1);
  h[0] = 1.0;
  if (kmax >= 1) h[1] = x;
  for (std::uint32_t j = 2; j <= kmax; ++j)
    h[j] = (x * h[j - 1] - std::sqrt(static_cast<double>(j - 1)) * h[j - 2]) /
           std::sqrt(static_cast<double>(j));
  return h;
}

double hermite_eval_multi(const MultiIndex& s, std::span<const double> x) {
  if (s.size() > x.size())
    throw std::invalid_argument("hermite_eval_multi: index longer than point");
  double prod = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != 0) prod *= hermite_eval(s[i], x[i]);
  return prod;
}

double hermite_growth_bound(std::uint32_t k, double x) {
  if (k < 1) throw std::invalid_argument("hermite_growth_bound: k >= 1");
  const double kd = static_cast<double>(k);
  const double ax = std::fabs(x);
  return std::pow(std::exp(1.0) * kd, kd / 2.0) *
         std::max(1.0, std::pow(ax, kd));
}

void HermiteExpansion::add_term(MultiIndex s, double c) {
  s = trim_index(std::move(s));
  if (s.size() > n)
    throw std::out_of_range("multi-index references variable > n");
  coeffs[std::move(s)] += c;
}

std::uint32_t HermiteExpansion::degree() const {
  std::uint32_t d = 0;
  for (const auto& [s, c] : coeffs)
    if (c != 0.0) d = std::max(d, index_degree(s));
  return d;
}

double HermiteExpansion::norm_sq() const {
  double t = 0;
  for (const auto& [s, c] : coeffs) t += c * c;
  return t;
}

HermiteExpansion HermiteExpansion::scaled(double sc) const {
  HermiteExpansion q(n);
  for (const auto& [s, c] : coeffs) q.coeffs[s] = c * sc;
  return q;
}

double evaluate_expansion(const HermiteExpansion& p,
                          std::span<const double> x) {
  if (x.size() != p.n)
    throw std::invalid_argument("evaluate_expansion: wrong dimension");
  // Tabulate h_0..h_dmax per coordinate once, then sum products.
  std::uint32_t dmax = 0;
  for (const auto& [s, c] : p.coeffs)
    for (std::uint32_t e : s) dmax = std::max(dmax, e);
  std::vector<std::vector<double>> h(p.n);
  for (std::uint32_t i = 0; i < p.n; ++i) h[i] = hermite_all(dmax, x[i]);
  double acc = 0;
  for (const auto& [s, c] : p.coeffs) {
    double m = c;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != 0) m *= h[i][s[i]];
    acc += m;
  }
  return acc;
}

double gaussian_influence_poly(const HermiteExpansion& p, std::uint32_t i) {
  if (i < 1 || i > p.n)
    throw std::out_of_range("variable index out of range [1, n]");
  double t = 0;
  for (const auto& [s, c] : p.coeffs)
    if (s.size() >= i && s[i - 1] > 0) t += c * c;
  return t;
}

std::vector<HermiteExpansion> slice(const HermiteExpansion& p,
                                    std::uint32_t i) {
  if (i < 1 || i > p.n)
    throw std::out_of_range("variable index out of range [1, n]");
  std::uint32_t dmax = 0;
  for (const auto& [s, c] : p.coeffs)
    if (s.size() >= i) dmax = std::max(dmax, s[i - 1]);
  std::vector<HermiteExpansion> parts(dmax + 1, HermiteExpansion(p.n));
  for (const auto& [s, c] : p.coeffs) {
    const std::uint32_t deg_i = s.size() >= i ? s[i - 1] : 0;
    MultiIndex rest = s;
    if (rest.size() >= i) rest[i - 1] = 0;
    parts[deg_i].add_term(std::move(rest), c);
  }
  return parts;
}

std::vector<double> monomial_in_hermite(std::uint32_t power) {
  if (power > 8)
    throw std::invalid_argument(
        "monomial_in_hermite: supported only up to degree 8");
  // Multiply by x repeatedly: x h_j = sqrt(j+1) h_{j+1} + sqrt(j) h_{j-1}.
  std::vector<double> c(power + 1, 0.0);
  c[0] = 1.0;
  std::uint32_t cur = 0;
  for (std::uint32_t step = 0; step < power; ++step) {
    std::vector<double> next(power + 1, 0.0);
    for (std::uint32_t j = 0; j <= cur; ++j) {
      if (c[j] == 0.0) continue;
      next[j + 1] += c[j] * std::sqrt(static_cast<double>(j + 1));
      if (j > 0) next[j - 1] += c[j] * std::sqrt(static_cast<double>(j));
    }
    c = std::move(next);
    ++cur;
  }
  return c;
}

HermiteExpansion from_multilinear(const MultilinearPoly& p) {
  HermiteExpansion q(p.n);
  for (const auto& [s, c] : p.coeffs) {
    MultiIndex idx;
    if (!s.empty()) {
      idx.assign(s.back(), 0);
      for (std::uint32_t v : s) idx[v - 1] = 1;
    }
    q.add_term(std::move(idx), c);
  }
  return q;
}

GaussHermiteRule gauss_hermite(std::uint32_t points) {
  if (points < 1) throw std::invalid_argument("gauss_hermite: points >= 1");
  // Newton iteration on the physicists' polynomials (weight e^{-t^2}),
  // standard initial guesses; nodes/weights then rescaled to N(0,1).
  const std::uint32_t nn = points;
  const double eps = 1e-14;
  std::vector<double> t(nn), w(nn);
  const std::uint32_t m = (nn + 1) / 2;
  double z = 0, pp = 0;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * nn + 1.0) -
          1.85575 * std::pow(2.0 * nn + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(nn), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * t[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * t[1];
    } else {
      z = 2.0 * z - t[i - 2];
    }
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 0.7511255444649425;  // pi^{-1/4}
      double p2 = 0.0;
      for (std::uint32_t j = 1; j <= nn; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 -
             std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * nn) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) <= eps) break;
    }
    t[i] = z;
    t[nn - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[nn - 1 - i] = w[i];
  }
  // E_{g~N(0,1)}[f(g)] = pi^{-1/2} sum w_i f(sqrt(2) t_i).
  GaussHermiteRule rule;
  rule.nodes.resize(nn);
  rule.weights.resize(nn);
  const double inv_sqrt_pi = 0.5641895835477563;
  for (std::uint32_t i = 0; i < nn; ++i) {
    rule.nodes[i] = std::sqrt(2.0) * t[nn - 1 - i];  // ascending order
    rule.weights[i] = w[nn - 1 - i] * inv_sqrt_pi;
  }
  return rule;
}

}  // namespace ptf
