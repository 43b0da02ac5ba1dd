#include "ptf/families.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "ptf/learner.hpp"
#include "ptf/truth_table.hpp"

namespace ptf {

MultilinearPoly random_dense_poly(std::uint32_t n, std::uint32_t d,
                                  Rng& rng) {
  MultilinearPoly p(n);
  for (const VarSet& s : feature_subsets(n, d)) p.coeffs[s] = rng.normal();
  return p;
}

MultilinearPoly random_sparse_poly(std::uint32_t n, std::uint32_t d,
                                   std::uint32_t terms, Rng& rng) {
  if (d < 1 || d > n) throw std::invalid_argument("sparse family: 1 <= d <= n");
  MultilinearPoly p(n);
  std::set<VarSet> seen;
  while (seen.size() < terms) {
    const std::uint32_t size =
        1 + static_cast<std::uint32_t>(rng.below(d));
    VarSet s;
    while (s.size() < size) {
      const std::uint32_t v =
          1 + static_cast<std::uint32_t>(rng.below(n));
      if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
    }
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second) p.coeffs[s] = rng.normal();
  }
  return p;
}

MultilinearPoly regular_poly(std::uint32_t n, std::uint32_t d, Rng& rng) {
  MultilinearPoly p(n);
  std::size_t count = 0;
  for (const VarSet& s : feature_subsets(n, d))
    if (s.size() == d) ++count;
  const double mag = 1.0 / std::sqrt(static_cast<double>(count));
  for (const VarSet& s : feature_subsets(n, d))
    if (s.size() == d) p.coeffs[s] = rng.sign() * mag;
  return p;
}

HermiteExpansion random_expansion(std::uint32_t n, std::uint32_t d,
                                  Rng& rng) {
  HermiteExpansion p(n);
  // Odometer over all multi-indices with |S| <= d (n stays at desk scale).
  std::vector<std::uint32_t> idx(n, 0);
  while (true) {
    if (index_degree(idx) >= 1) p.add_term(idx, rng.normal());
    std::size_t pos = 0;
    while (pos < idx.size()) {
      ++idx[pos];
      if (index_degree(idx) <= d) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == idx.size()) break;
  }
  const double norm = std::sqrt(p.norm_sq());
  return p.scaled(1.0 / norm);
}

HermiteExpansion regular_expansion(std::uint32_t n, std::uint32_t d,
                                   Rng& rng) {
  HermiteExpansion dense = random_expansion(n, d, rng);
  HermiteExpansion p(n);
  std::size_t count = 0;
  for (const auto& [s, c] : dense.coeffs)
    if (index_degree(s) == d) ++count;
  const double mag = 1.0 / std::sqrt(static_cast<double>(count));
  for (const auto& [s, c] : dense.coeffs)
    if (index_degree(s) == d) p.coeffs[s] = (c < 0 ? -1.0 : 1.0) * mag;
  return p;
}

PtfBoolean random_ptf_checked(const std::string& family, std::uint32_t n,
                              std::uint32_t d, std::uint32_t terms,
                              Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    MultilinearPoly p;
    if (family == "dense")
      p = random_dense_poly(n, d, rng);
    else if (family == "sparse")
      p = random_sparse_poly(n, d, terms == 0 ? 2 * n : terms, rng);
    else if (family == "regular")
      p = regular_poly(n, d, rng);
    else
      throw std::invalid_argument("unknown PTF family: " + family);
    const std::vector<double> vals = evaluate_on_cube(p);
    bool zero = false;
    std::vector<std::int8_t> signs(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] == 0.0) {
        zero = true;
        break;
      }
      signs[i] = vals[i] < 0.0 ? -1 : +1;
    }
    if (zero) continue;
    PtfBoolean f;
    f.p = std::move(p);
    f.table = TruthTable(n, std::move(signs));
    return f;
  }
  throw std::runtime_error("random_ptf_checked: persistent exact zeros");
}

}  // namespace ptf
