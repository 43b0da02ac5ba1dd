#include "ptf/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ptf {

namespace {
void check_var(const MultilinearPoly& p, std::uint32_t i) {
  if (i < 1 || i > p.n)
    throw std::out_of_range("variable index out of range [1, n]");
}
}  // namespace

void MultilinearPoly::add_term(VarSet vars, double c) {
  if (!std::is_sorted(vars.begin(), vars.end()) ||
      std::adjacent_find(vars.begin(), vars.end()) != vars.end())
    throw std::invalid_argument("monomial vars must be sorted and distinct");
  if (!vars.empty() && vars.back() > n)
    throw std::out_of_range("monomial references variable > n");
  if (!vars.empty() && vars.front() < 1)
    throw std::out_of_range("variable indices are 1-based");
  coeffs[std::move(vars)] += c;
}

void MultilinearPoly::prune(double tol) {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (std::fabs(it->second) <= tol)
      it = coeffs.erase(it);
    else
      ++it;
  }
}

std::uint32_t MultilinearPoly::degree() const {
  std::size_t d = 0;
  for (const auto& [s, c] : coeffs)
    if (c != 0.0) d = std::max(d, s.size());
  return static_cast<std::uint32_t>(d);
}

double MultilinearPoly::norm_sq() const {
  double t = 0;
  for (const auto& [s, c] : coeffs) t += c * c;
  return t;
}

double MultilinearPoly::variance() const {
  double t = 0;
  for (const auto& [s, c] : coeffs)
    if (!s.empty()) t += c * c;
  return t;
}

MultilinearPoly MultilinearPoly::scaled(double sc) const {
  MultilinearPoly q(n);
  for (const auto& [s, c] : coeffs) q.coeffs[s] = c * sc;
  return q;
}

double evaluate(const MultilinearPoly& p, std::span<const double> x) {
  if (x.size() != p.n)
    throw std::invalid_argument("evaluate: input has wrong dimension");
  double acc = 0;
  for (const auto& [s, c] : p.coeffs) {
    double m = c;
    for (std::uint32_t v : s) m *= x[v - 1];
    acc += m;
  }
  return acc;
}

double evaluate(const MultilinearPoly& p, const std::vector<int>& x) {
  std::vector<double> xd(x.begin(), x.end());
  return evaluate(p, std::span<const double>(xd));
}

double influence_poly(const MultilinearPoly& p, std::uint32_t i) {
  check_var(p, i);
  double t = 0;
  for (const auto& [s, c] : p.coeffs)
    if (std::binary_search(s.begin(), s.end(), i)) t += c * c;
  return t;
}

double total_influence_poly(const MultilinearPoly& p) {
  double t = 0;
  for (const auto& [s, c] : p.coeffs)
    t += static_cast<double>(s.size()) * c * c;
  return t;
}

std::vector<double> all_influences(const MultilinearPoly& p) {
  std::vector<double> inf(p.n, 0.0);
  for (const auto& [s, c] : p.coeffs)
    for (std::uint32_t v : s) inf[v - 1] += c * c;
  return inf;
}

MultilinearPoly derivative(const MultilinearPoly& p, std::uint32_t i) {
  check_var(p, i);
  MultilinearPoly q(p.n);
  for (const auto& [s, c] : p.coeffs) {
    auto it = std::lower_bound(s.begin(), s.end(), i);
    if (it == s.end() || *it != i) continue;
    VarSet rest;
    rest.reserve(s.size() - 1);
    rest.insert(rest.end(), s.begin(), it);
    rest.insert(rest.end(), it + 1, s.end());
    q.coeffs[std::move(rest)] += c;
  }
  return q;
}

MultilinearPoly restrict_poly(const MultilinearPoly& p,
                              const Restriction& rho) {
  for (const auto& [v, val] : rho.assignments) {
    if (v < 1 || v > p.n)
      throw std::out_of_range("restriction references variable > n");
    if (val != 1 && val != -1)
      throw std::invalid_argument("restriction values must be +/-1");
  }
  MultilinearPoly q(p.n);
  for (const auto& [s, c] : p.coeffs) {
    VarSet free;
    free.reserve(s.size());
    double sign = 1.0;
    for (std::uint32_t v : s) {
      auto it = rho.assignments.find(v);
      if (it == rho.assignments.end())
        free.push_back(v);
      else
        sign *= it->second;
    }
    q.coeffs[std::move(free)] += sign * c;
  }
  q.prune();
  return q;
}

MultilinearPoly sum(const MultilinearPoly& a, const MultilinearPoly& b) {
  MultilinearPoly q(std::max(a.n, b.n));
  for (const auto& [s, c] : a.coeffs) q.coeffs[s] += c;
  for (const auto& [s, c] : b.coeffs) q.coeffs[s] += c;
  return q;
}

std::uint64_t varset_mask(const VarSet& s) {
  std::uint64_t m = 0;
  for (std::uint32_t v : s) {
    if (v > 64) throw std::out_of_range("varset_mask: variable > 64");
    m |= std::uint64_t{1} << (v - 1);
  }
  return m;
}

VarSet mask_varset(std::uint64_t mask) {
  VarSet s;
  for (std::uint32_t v = 1; mask != 0; ++v, mask >>= 1)
    if (mask & 1) s.push_back(v);
  return s;
}

}  // namespace ptf
