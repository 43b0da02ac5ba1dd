#include "ptf/critical_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ptf/rng.hpp"
#include "ptf/truth_table.hpp"

namespace ptf {

CriticalIndexReport critical_index(const MultilinearPoly& p, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("critical_index: tau > 0");
  if (p.degree() == 0)
    throw std::invalid_argument("critical_index: constant polynomial");
  CriticalIndexReport rep;
  rep.tau = tau;
  const std::vector<double> inf = all_influences(p);
  rep.ordering.resize(p.n);
  std::iota(rep.ordering.begin(), rep.ordering.end(), 1u);
  std::stable_sort(rep.ordering.begin(), rep.ordering.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return inf[a - 1] > inf[b - 1];
                   });
  rep.influences.resize(p.n);
  for (std::uint32_t k = 0; k < p.n; ++k)
    rep.influences[k] = inf[rep.ordering[k] - 1];
  rep.tails.resize(p.n + 1);
  rep.tails[p.n] = 0.0;
  for (std::uint32_t k = p.n; k > 0; --k)
    rep.tails[k - 1] = rep.tails[k] + rep.influences[k - 1];
  for (std::uint32_t i = 0; i < p.n; ++i) {
    const double tail = rep.tails[i];
    if (tail == 0.0 || rep.influences[i] <= tau * tail) {
      rep.index = i;
      break;
    }
  }
  return rep;
}

double default_tau(std::uint32_t n, std::uint32_t d) {
  const double e = (4.0 * d + 1.0) / (4.0 * d + 2.0);
  return std::pow(static_cast<double>(n), -e);
}

double head_length(std::uint32_t n, std::uint32_t d, double tau) {
  return 2.0 * static_cast<double>(d) * std::log(static_cast<double>(n)) /
         tau;
}

std::vector<TailDecayRow> tail_decay_check(const MultilinearPoly& p,
                                           double tau) {
  CriticalIndexReport rep = critical_index(p, tau);
  const double total = rep.tails[0];
  const std::uint32_t jmax = rep.index ? std::min(*rep.index, p.n) : p.n;
  std::vector<TailDecayRow> rows;
  for (std::uint32_t j = 0; j <= jmax; ++j) {
    const double bound =
        std::pow(1.0 - tau, static_cast<double>(j)) * total;
    // Tolerate accumulated rounding in the tail sums.
    const bool ok = rep.tails[j] <= bound * (1.0 + 1e-12) + 1e-15;
    rows.push_back(TailDecayRow{j, rep.tails[j], bound, ok});
  }
  return rows;
}

namespace {

Restriction restriction_from_bits(const std::vector<std::uint32_t>& head,
                                  std::uint64_t bits) {
  Restriction rho;
  for (std::size_t k = 0; k < head.size(); ++k)
    rho.assignments[head[k]] = (bits >> k) & 1 ? -1 : +1;
  return rho;
}

}  // namespace

RestrictionDeviation restriction_influence_deviation(
    const MultilinearPoly& p, const std::vector<std::uint32_t>& head,
    std::uint32_t ell, const std::vector<double>& t_grid,
    std::uint64_t trials, std::uint64_t seed, Exec exec) {
  for (std::uint32_t h : head)
    if (h == ell)
      throw std::invalid_argument("deviation probe: ell must stay free");
  RestrictionDeviation out;
  out.base_influence = influence_poly(p, ell);
  out.seed = seed;
  const std::uint32_t d = p.degree();
  const double scale = std::pow(3.0, static_cast<double>(d)) *
                       out.base_influence;
  out.exact = head.size() <= 12;
  const std::uint64_t total =
      out.exact ? (std::uint64_t{1} << head.size()) : trials;
  out.trials = total;

  struct Part {
    double sum = 0.0;
    std::vector<std::uint64_t> exceed;
  };
  auto parts = run_chunks<Part>(
      total, 1 << 10,
      [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
        Part part;
        part.exceed.assign(t_grid.size(), 0);
        Rng rng = Rng::stream(seed, kOpRestrictionSample, chunk);
        for (std::uint64_t k = b; k < e; ++k) {
          std::uint64_t bits;
          if (out.exact) {
            bits = k;
          } else {
            bits = rng.next_u64() & ((std::uint64_t{1} << head.size()) - 1);
          }
          const MultilinearPoly pr =
              restrict_poly(p, restriction_from_bits(head, bits));
          const double inf = influence_poly(pr, ell);
          part.sum += inf;
          for (std::size_t t = 0; t < t_grid.size(); ++t)
            if (inf > t_grid[t] * scale) ++part.exceed[t];
        }
        return part;
      },
      exec);
  double sum = 0.0;
  std::vector<std::uint64_t> exceed(t_grid.size(), 0);
  for (const Part& part : parts) {
    sum += part.sum;
    for (std::size_t t = 0; t < t_grid.size(); ++t)
      exceed[t] += part.exceed[t];
  }
  out.mean_influence = sum / static_cast<double>(total);
  for (std::size_t t = 0; t < t_grid.size(); ++t)
    out.exceedance.emplace_back(
        t_grid[t],
        static_cast<double>(exceed[t]) / static_cast<double>(total));
  return out;
}

namespace {

/// Sound constancy check for sign(p_rho): true when the verdict is
/// "certainly constant".
bool certified_constant(const MultilinearPoly& pr) {
  double head = 0.0, tail_abs = 0.0;
  for (const auto& [s, c] : pr.coeffs) {
    if (s.empty())
      head = c;
    else
      tail_abs += std::fabs(c);
  }
  if (std::fabs(head) > tail_abs) return true;
  // Fall back to exhaustive evaluation over the surviving variables.
  std::vector<std::uint32_t> free_vars;
  for (const auto& [s, c] : pr.coeffs)
    for (std::uint32_t v : s)
      if (std::find(free_vars.begin(), free_vars.end(), v) == free_vars.end())
        free_vars.push_back(v);
  if (free_vars.size() > 20) return false;  // cannot certify
  std::vector<double> x(pr.n, 1.0);
  int first = 0;
  const std::uint64_t count = std::uint64_t{1} << free_vars.size();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    for (std::size_t k = 0; k < free_vars.size(); ++k)
      x[free_vars[k] - 1] = (bits >> k) & 1 ? -1.0 : 1.0;
    const int s = evaluate(pr, std::span<const double>(x)) < 0.0 ? -1 : +1;
    if (bits == 0)
      first = s;
    else if (s != first)
      return false;
  }
  return true;
}

}  // namespace

DecompositionOutcome decompose(const MultilinearPoly& p, double tau,
                               std::uint64_t trials, std::uint64_t seed,
                               Exec exec) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("decompose: tau in (0, 1)");
  DecompositionOutcome out;
  out.tau = tau;
  out.seed = seed;
  out.report = critical_index(p, tau);
  const std::uint32_t n = p.n;
  const std::uint32_t d = p.degree();
  out.K = head_length(n, d, tau);
  out.tau_prime =
      std::pow(3.0 * std::log(static_cast<double>(n)),
               static_cast<double>(d)) *
      tau;
  if (out.report.regular()) {
    out.kind = DecompKind::regular;
    return out;
  }

  const bool small = out.report.index.has_value() &&
                     static_cast<double>(*out.report.index) <= out.K;
  std::uint32_t k = small ? *out.report.index
                          : static_cast<std::uint32_t>(
                                std::min(out.K, static_cast<double>(n)));
  if (!small && out.K >= static_cast<double>(n)) {
    out.degenerate = true;  // decomposition degenerates; restrict all but one
    k = n > 1 ? n - 1 : 1;
  }
  out.kind = small ? DecompKind::small_ci : DecompKind::large_ci;
  out.restricted = k;
  std::vector<std::uint32_t> head(out.report.ordering.begin(),
                                  out.report.ordering.begin() + k);

  out.enumerated = k <= 12;
  const std::uint64_t total = out.enumerated ? (std::uint64_t{1} << k) : trials;
  out.trials = total;
  auto parts = run_chunks<std::uint64_t>(
      total, 1 << 10,
      [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
        Rng rng = Rng::stream(seed, kOpDecompose, chunk);
        std::uint64_t good = 0;
        for (std::uint64_t t = b; t < e; ++t) {
          const std::uint64_t bits =
              out.enumerated ? t
                             : rng.next_u64() & ((std::uint64_t{1} << k) - 1);
          const MultilinearPoly pr =
              restrict_poly(p, restriction_from_bits(head, bits));
          if (small) {
            // tau'-regularity of the surviving influence sequence.
            const std::vector<double> inf = all_influences(pr);
            double tail_total = 0.0, tail_max = 0.0;
            for (std::uint32_t v : out.report.ordering) {
              if (std::find(head.begin(), head.end(), v) != head.end())
                continue;
              tail_total += inf[v - 1];
              tail_max = std::max(tail_max, inf[v - 1]);
            }
            if (tail_total == 0.0 || tail_max <= out.tau_prime * tail_total)
              ++good;
          } else {
            if (certified_constant(pr)) ++good;
          }
        }
        return good;
      },
      exec);
  std::uint64_t good = 0;
  for (std::uint64_t g : parts) good += g;
  const double frac = static_cast<double>(good) / static_cast<double>(total);
  if (small)
    out.fraction_regular_tail = frac;
  else
    out.fraction_constant = frac;
  return out;
}

std::string DecompositionOutcome::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"kind\":\"";
  switch (kind) {
    case DecompKind::regular: os << "regular"; break;
    case DecompKind::small_ci: os << "small-critical-index"; break;
    case DecompKind::large_ci: os << "large-critical-index"; break;
  }
  os << "\",\"tau\":" << tau << ",\"tau_prime\":" << tau_prime
     << ",\"K\":" << K << ",\"log_base\":\"e\"";
  if (report.index)
    os << ",\"critical_index\":" << *report.index;
  else
    os << ",\"critical_index\":\"infinity\"";
  os << ",\"restricted\":" << restricted
     << ",\"degenerate\":" << (degenerate ? "true" : "false")
     << ",\"enumerated\":" << (enumerated ? "true" : "false")
     << ",\"trials\":" << trials << ",\"seed\":" << seed;
  if (kind == DecompKind::small_ci)
    os << ",\"fraction_regular_tail\":" << fraction_regular_tail;
  if (kind == DecompKind::large_ci)
    os << ",\"fraction_constant\":" << fraction_constant;
  os << "}";
  return os.str();
}

}  // namespace ptf
