#include "ptf/suites.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ptf/boolean_sense.hpp"
#include "ptf/critical_index.hpp"
#include "ptf/estimate.hpp"
#include "ptf/families.hpp"
#include "ptf/gaussian_sense.hpp"
#include "ptf/hermite.hpp"
#include "ptf/io.hpp"
#include "ptf/learner.hpp"
#include "ptf/multilinear.hpp"
#include "ptf/reduction.hpp"
#include "ptf/rng.hpp"
#include "ptf/truth_table.hpp"

namespace ptf {

namespace {

constexpr double kFpFloor = 1e-12;  // absorbs ulp-level noise when stderr ~ 0

std::string fmt(double v) { return format_double(v); }

double sheppard(double eps) { return std::acos(1.0 - eps) / M_PI; }

TruthTable parity_table(std::uint32_t n) {
  std::vector<std::int8_t> vals(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < vals.size(); ++x)
    vals[x] = std::popcount(x) % 2 == 0 ? +1 : -1;
  return TruthTable(n, std::move(vals));
}

TruthTable dictator_table(std::uint32_t n) {
  std::vector<std::int8_t> vals(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < vals.size(); ++x)
    vals[x] = (x & 1) ? -1 : +1;
  return TruthTable(n, std::move(vals));
}

// --------------------------------------------------------------------------
// 1. lemma-key-exact
SuiteResult suite_lemma_key(const SuiteOptions& o) {
  SuiteResult r{"lemma-key-exact", true, "", 0};
  double worst = 0.0;
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t d = 1 + t % 3;
    const std::uint32_t n = 4 + t % 7;
    Rng rng = Rng::stream(o.seed, 101, t);
    PtfBoolean f = random_ptf_checked("dense", n, d, 0, rng);
    const TruthTable& table = f.ensure_table(o.exec);
    for (std::uint32_t i = 1; i <= n; ++i) {
      const double direct = exact_influence(table, i, o.exec);
      const double via = influence_via_derivative(f, i, o.exec);
      worst = std::max(worst, std::fabs(direct - via));
      ++checked;
    }
  }
  r.passed = worst < 1e-12;
  r.detail = "200 PTFs, " + std::to_string(checked) +
             " influences, max |direct - derivative form| = " + fmt(worst);
  return r;
}

// --------------------------------------------------------------------------
// 2. as-bound-d
SuiteResult suite_as_bound(const SuiteOptions& o) {
  SuiteResult r{"as-bound-d", true, "", 0};
  int violations = 0;
  double worst_margin = 1e300;
  for (int t = 0; t < 1000; ++t) {
    const std::uint32_t n = 8 + t % 7;
    Rng rng = Rng::stream(o.seed, 102, t);
    PtfBoolean f = random_ptf_checked("dense", n, 2, 0, rng);
    const double as = exact_as(f.ensure_table(o.exec), o.exec);
    const double bound = as_bound_closed(n, 2);
    worst_margin = std::min(worst_margin, bound - as);
    if (as > bound) ++violations;
  }
  const double maj3 = exact_as(middle_layers_symmetric(3, 1).table, o.exec);
  const double par10 = exact_as(parity_table(10), o.exec);
  const bool anchors = maj3 == 1.5 && par10 == 10.0;
  r.passed = violations == 0 && anchors;
  r.detail = "1000 degree-2 PTFs, violations = " + std::to_string(violations) +
             ", min bound margin = " + fmt(worst_margin) +
             "; AS(MAJ3) = " + fmt(maj3) + ", AS(parity_10) = " + fmt(par10);
  return r;
}

// --------------------------------------------------------------------------
// 3. ns-spectral-oracle  (pair enumeration with compensated summation)
double ns_pair_enumeration(const TruthTable& f, double eps) {
  const std::uint64_t size = f.size();
  const std::uint32_t n = f.n;
  std::vector<double> flip_prob(n + 1);
  for (std::uint32_t k = 0; k <= n; ++k)
    flip_prob[k] = std::pow(eps, static_cast<double>(k)) *
                   std::pow(1.0 - eps, static_cast<double>(n - k));
  double sum = 0.0, comp = 0.0;  // Kahan
  for (std::uint64_t x = 0; x < size; ++x) {
    for (std::uint64_t m = 0; m < size; ++m) {
      if (f.values[x] == f.values[x ^ m]) continue;
      const double term = flip_prob[std::popcount(m)];
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return sum / static_cast<double>(size);
}

SuiteResult suite_ns_spectral(const SuiteOptions& o) {
  SuiteResult r{"ns-spectral-oracle", true, "", 0};
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::uint32_t n = 4 + t % 5;
    Rng rng = Rng::stream(o.seed, 103, t);
    std::vector<std::int8_t> vals(std::size_t{1} << n);
    for (auto& v : vals) v = static_cast<std::int8_t>(rng.sign());
    const TruthTable f(n, std::move(vals));
    const std::vector<double> w = spectrum_level_weights(f, o.exec);
    for (double eps : {0.05, 0.1, 0.3}) {
      const double spectral = ns_from_level_weights(w, eps);
      const double direct = ns_pair_enumeration(f, eps);
      worst = std::max(worst, std::fabs(spectral - direct));
    }
  }
  r.passed = worst < 1e-12;
  r.detail = "50 random functions x 3 rates, max |spectral - pairs| = " +
             fmt(worst);
  return r;
}

// --------------------------------------------------------------------------
// 4. restriction-conservation
SuiteResult suite_restriction_conservation(const SuiteOptions& o) {
  SuiteResult r{"restriction-conservation", true, "", 0};
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::uint32_t n = 10;
    const std::uint32_t k = 1 + t % 6;
    Rng rng = Rng::stream(o.seed, 104, t);
    const MultilinearPoly p = random_dense_poly(n, 3, rng);
    std::vector<std::uint32_t> head;
    for (std::uint32_t v = 1; v <= k; ++v) head.push_back(v);
    const std::uint32_t ell = k + 1 + static_cast<std::uint32_t>(
                                          rng.below(n - k));
    RestrictionDeviation dev = restriction_influence_deviation(
        p, head, ell, {1.0}, 0, o.seed, o.exec);
    if (!dev.exact) {
      r.passed = false;
      r.detail = "expected exact enumeration for k <= 6";
      return r;
    }
    worst = std::max(worst,
                     std::fabs(dev.mean_influence - dev.base_influence));
  }
  r.passed = worst < 1e-12;
  r.detail =
      "100 degree-3 polynomials, k in 1..6, max |mean - influence| = " +
      fmt(worst);
  return r;
}

// --------------------------------------------------------------------------
// 5. reduction-identity
SuiteResult suite_reduction_identity(const SuiteOptions& o) {
  SuiteResult r{"reduction-identity", true, "", 0};
  struct Case {
    std::string name;
    TruthTable table;
    std::uint32_t d;
  };
  std::vector<Case> cases;
  cases.push_back({"dictator", dictator_table(10), 1});
  cases.push_back({"parity", parity_table(10), 10});
  cases.push_back({"majority", middle_layers_symmetric(9, 1).table, 1});
  for (int t = 0; t < 20; ++t) {
    Rng rng = Rng::stream(o.seed, 105, t);
    PtfBoolean f = random_ptf_checked("dense", 10, 2, 0, rng);
    cases.push_back({"random-deg2-" + std::to_string(t),
                     f.ensure_table(o.exec), 2});
  }
  int failures = 0;
  double worst_sigma = 0.0;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto w = spectrum_level_weights(cases[ci].table, o.exec);
    for (double eps : {0.1, 0.25}) {
      ReductionReport rep =
          reduction_estimate(cases[ci].table, cases[ci].d, eps, 4000,
                             o.seed + ci, o.exec);
      const double exact = ns_from_level_weights(w, rep.noise_rate);
      const double err = std::fabs(rep.estimate.mean - exact);
      const double tol = 3.0 * rep.estimate.std_err + kFpFloor;
      if (err > tol) ++failures;
      if (rep.estimate.std_err > 0)
        worst_sigma = std::max(worst_sigma, err / rep.estimate.std_err);
    }
  }
  r.passed = failures == 0;
  r.detail = std::to_string(cases.size()) +
             " functions x 2 rates, failures = " + std::to_string(failures) +
             ", worst deviation = " + fmt(worst_sigma) + " sigma";
  return r;
}

// --------------------------------------------------------------------------
// 6. sheppard-gns
SuiteResult suite_sheppard(const SuiteOptions& o) {
  SuiteResult r{"sheppard-gns", true, "", 0};
  HermiteExpansion halfspace(1);
  halfspace.add_term({1}, 1.0);
  std::ostringstream detail;
  for (double eps : {0.01, 0.1, 0.5}) {
    Estimate est = estimate_gns(halfspace, eps, 1000000, o.seed, o.exec);
    const double target = sheppard(eps);
    const double err = std::fabs(est.mean - target);
    if (err > 3.0 * est.std_err + kFpFloor) r.passed = false;
    detail << "eps=" << eps << ": " << fmt(est.mean) << " vs "
           << fmt(target) << " (" << fmt(err / std::max(est.std_err, 1e-300))
           << " sigma); ";
  }
  r.detail = detail.str();
  return r;
}

// --------------------------------------------------------------------------
// 7. qnorm-exact
SuiteResult suite_qnorm(const SuiteOptions& o) {
  SuiteResult r{"qnorm-exact", true, "", 0};
  int failures = 0;
  double worst_sigma = 0.0;
  const double eps_grid[3] = {0.05, 0.1, 0.3};
  for (int t = 0; t < 50; ++t) {
    const std::uint32_t n = 2 + t % 4;
    const std::uint32_t d = 1 + t % 4;
    Rng rng = Rng::stream(o.seed, 107, t);
    const HermiteExpansion p = random_expansion(n, d, rng);
    const double eps = eps_grid[t % 3];
    PerturbationNorm pn =
        perturbation_norm(p, eps, 200000, o.seed + t, o.exec);
    const double err = std::fabs(pn.mc.mean - pn.exact);
    if (err > 3.0 * pn.mc.std_err + kFpFloor) ++failures;
    if (pn.mc.std_err > 0)
      worst_sigma = std::max(worst_sigma, err / pn.mc.std_err);
  }
  // Cross-correlations of distinct basis polynomials vanish.
  int cross_failures = 0;
  for (int t = 0; t < 20; ++t) {
    Rng rng = Rng::stream(o.seed, 1071, t);
    const std::uint32_t n = 3;
    auto draw_index = [&]() {
      MultiIndex s(n, 0);
      do {
        for (std::uint32_t i = 0; i < n; ++i)
          s[i] = static_cast<std::uint32_t>(rng.below(2));
      } while (index_degree(s) == 0 || index_degree(s) > 3);
      return s;
    };
    MultiIndex s = draw_index(), u = draw_index();
    if (trim_index(s) == trim_index(u)) {
      ++s[t % n];  // force distinct
    }
    Estimate est =
        hermite_cross_term(s, u, n, 0.1, 200000, o.seed + t, o.exec);
    if (std::fabs(est.mean) > 3.0 * est.std_err + kFpFloor) ++cross_failures;
  }
  r.passed = failures == 0 && cross_failures == 0;
  r.detail = "50 expansions: " + std::to_string(failures) +
             " mismatches (worst " + fmt(worst_sigma) +
             " sigma); 20 cross terms: " + std::to_string(cross_failures) +
             " nonzero";
  return r;
}

// --------------------------------------------------------------------------
// 8. hermite-orthonormality
SuiteResult suite_orthonormality(const SuiteOptions&) {
  SuiteResult r{"hermite-orthonormality", true, "", 0};
  const GaussHermiteRule rule = gauss_hermite(20);  // >= j+k+1 for j,k <= 8
  double worst = 0.0;
  for (std::uint32_t j = 0; j <= 8; ++j)
    for (std::uint32_t k = 0; k <= 8; ++k) {
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        acc += rule.weights[q] * hermite_eval(j, rule.nodes[q]) *
               hermite_eval(k, rule.nodes[q]);
      const double target = j == k ? 1.0 : 0.0;
      worst = std::max(worst, std::fabs(acc - target));
    }
  r.passed = worst <= 1e-10;
  r.detail = "j,k <= 8 with 20-node quadrature, max |<h_j,h_k> - delta| = " +
             fmt(worst);
  return r;
}

// --------------------------------------------------------------------------
// 9. gl-extremal-shape
SuiteResult suite_gl_extremal(const SuiteOptions& o) {
  SuiteResult r{"gl-extremal-shape", true, "", 0};
  std::ostringstream detail;
  for (std::uint32_t n = 10; n <= 20; n += 2) {
    const MiddleLayers ml = middle_layers_symmetric(n, 2);
    const double as = exact_as(ml.table, o.exec);
    const double ratio = as / (2.0 * std::sqrt(static_cast<double>(n)));
    if (!(ratio >= 0.5 && ratio <= 1.5)) r.passed = false;
    detail << "n=" << n << ": AS=" << fmt(as) << " ratio=" << fmt(ratio)
           << "; ";
  }
  r.detail = detail.str();
  return r;
}

// --------------------------------------------------------------------------
// 10. gns-exponent-shape
SuiteResult suite_gns_exponent(const SuiteOptions& o) {
  SuiteResult r{"gns-exponent-shape", true, "", 0};
  const std::vector<double> eps = {1e-1, 1e-2, 1e-3};
  const double lo = 0.25 - 0.15, hi = 0.25 + 0.15;
  int outside = 0;
  double min_slope = 1e300, max_slope = -1e300, mean_slope = 0.0;
  for (int t = 0; t < 100; ++t) {
    Rng rng = Rng::stream(o.seed, 110, t);
    const HermiteExpansion p = regular_expansion(6, 2, rng);
    std::vector<double> gns;
    for (double e : eps)
      gns.push_back(
          estimate_gns(p, e, 100000, o.seed + 7919 * t, o.exec).mean);
    const double slope = fit_loglog_slope(eps, gns);
    min_slope = std::min(min_slope, slope);
    max_slope = std::max(max_slope, slope);
    mean_slope += slope / 100.0;
    if (!(slope >= lo && slope <= hi)) ++outside;
  }
  r.passed = outside == 0;
  r.detail = "100 regular degree-2 expansions: fitted slopes in [" +
             fmt(min_slope) + ", " + fmt(max_slope) + "], mean " +
             fmt(mean_slope) + "; window [" + fmt(lo) + ", " + fmt(hi) +
             "], outside = " + std::to_string(outside);
  return r;
}

// --------------------------------------------------------------------------
// 11. critical-index-machinery
SuiteResult suite_critical_index(const SuiteOptions& o) {
  SuiteResult r{"critical-index-machinery", true, "", 0};
  std::ostringstream detail;
  int decay_violations = 0;
  for (int t = 0; t < 500; ++t) {
    const std::uint32_t n = 8 + t % 13;
    const std::uint32_t d = 1 + t % 4;
    Rng rng = Rng::stream(o.seed, 111, t);
    const MultilinearPoly p = random_dense_poly(n, d, rng);
    for (double tau : {0.1, default_tau(n, d)})
      for (const TailDecayRow& row : tail_decay_check(p, tau))
        if (!row.ok) ++decay_violations;
  }
  detail << "tail decay violations over 500 polynomials: "
         << decay_violations << "; ";
  if (decay_violations != 0) r.passed = false;

  // tau-regular construction must come back Regular without sampling.
  Rng rng = Rng::stream(o.seed, 112);
  const MultilinearPoly reg = regular_poly(12, 2, rng);
  DecompositionOutcome reg_out =
      decompose(reg, 2.0 / 12.0, 256, o.seed, o.exec);
  detail << "regular construction -> "
         << (reg_out.kind == DecompKind::regular ? "regular" : "NOT regular")
         << " (trials " << reg_out.trials << "); ";
  if (reg_out.kind != DecompKind::regular || reg_out.trials != 0)
    r.passed = false;

  // Geometric head: large critical index, certified-constant restrictions.
  MultilinearPoly geo(30);
  for (std::uint32_t i = 1; i <= 30; ++i)
    geo.add_term({i}, std::pow(0.5, static_cast<double>(i)));
  DecompositionOutcome geo_out = decompose(geo, 0.25, 512, o.seed, o.exec);
  detail << "geometric head -> kind="
         << (geo_out.kind == DecompKind::large_ci ? "large-ci" : "other")
         << " constant fraction " << fmt(geo_out.fraction_constant);
  if (geo_out.kind != DecompKind::large_ci ||
      !(geo_out.fraction_constant > 0.0))
    r.passed = false;
  r.detail = detail.str();
  return r;
}

// --------------------------------------------------------------------------
// 12. learner-agnostic
SuiteResult suite_learner(const SuiteOptions& o) {
  SuiteResult r{"learner-agnostic", true, "", 0};
  std::ostringstream detail;
  double worst = 0.0;
  for (int run = 0; run < 10; ++run) {
    Rng rng = Rng::stream(o.seed, 113, run);
    const MultilinearPoly target = random_dense_poly(10, 2, rng);
    auto draw = [&](std::size_t count, std::uint64_t label_stream) {
      Rng xs = Rng::stream(o.seed, kOpDataset, run, label_stream);
      Rng noise = Rng::stream(o.seed, kOpLabelNoise, run, label_stream);
      Dataset data;
      data.reserve(count);
      for (std::size_t j = 0; j < count; ++j) {
        std::vector<double> x(10);
        for (double& v : x) v = xs.sign();
        int y = evaluate(target, std::span<const double>(x)) < 0.0 ? -1 : +1;
        if (noise.uniform01() < 0.1) y = -y;
        data.push_back(LabeledSample{std::move(x),
                                     static_cast<std::int8_t>(y)});
      }
      return data;
    };
    const Dataset train = draw(5000, 1);
    const Dataset test = draw(2000, 2);
    const RegressionModel model = l1_fit(train, 2);
    const double err = evaluate_model(model, test);
    worst = std::max(worst, err);
    if (err > 0.15) r.passed = false;
    detail << fmt(err) << " ";
  }
  r.detail = "test errors over 10 runs (noise 0.1, budget 0.15): " +
             detail.str() + "worst " + fmt(worst);
  return r;
}

// --------------------------------------------------------------------------
// 13. determinism
std::vector<double> determinism_battery(std::uint64_t seed, Exec exec) {
  std::vector<double> cells;
  auto push_est = [&](const Estimate& e) {
    cells.push_back(e.mean);
    cells.push_back(e.std_err);
  };
  Rng rng = Rng::stream(seed, 114);
  const HermiteExpansion expn = random_expansion(5, 3, rng);
  push_est(estimate_gns(expn, 0.1, 40000, seed, exec));
  push_est(estimate_gi(expn, 2, 40000, seed, exec));
  PerturbationNorm pn = perturbation_norm(expn, 0.1, 40000, seed, exec);
  push_est(pn.mc);
  cells.push_back(pn.exact);
  for (const TailRow& row : tail_probe(expn, {1.0, 2.5}, 30000, seed, exec))
    push_est(row.prob);
  const MultilinearPoly mp = random_dense_poly(8, 2, rng);
  for (const AnticoncRow& row :
       anticoncentration_probe(mp, {0.05, 0.2}, 30000, seed, exec)) {
    push_est(row.gaussian);
    push_est(row.hypercube);
  }
  InvarianceReport inv = invariance_distance(mp, 30000, seed, exec);
  cells.push_back(inv.ks_distance);
  cells.push_back(inv.max_influence);

  PtfBoolean f;
  {
    Rng frng = Rng::stream(seed, 115);
    f = random_ptf_checked("dense", 10, 2, 0, frng);
  }
  ReductionReport red =
      reduction_estimate(*f.table, 2, 0.1, 1500, seed, exec);
  push_est(red.estimate);
  cells.push_back(exact_as(*f.table, exec));
  for (double w : spectrum_level_weights(*f.table, exec)) cells.push_back(w);

  RestrictionDeviation dev = restriction_influence_deviation(
      mp, {1, 2, 3, 4}, 6, {1.0, 2.0}, 0, seed, exec);
  cells.push_back(dev.mean_influence);
  for (const auto& [t, rate] : dev.exceedance) cells.push_back(rate);

  MultilinearPoly geo(30);
  for (std::uint32_t i = 1; i <= 30; ++i)
    geo.add_term({i}, std::pow(0.5, static_cast<double>(i)));
  cells.push_back(
      decompose(geo, 0.25, 256, seed, exec).fraction_constant);

  // Seeded learner run (small): LP path plus threshold selection.
  {
    Rng xs = Rng::stream(seed, kOpDataset, 9);
    Dataset data;
    const MultilinearPoly target = random_dense_poly(6, 2, rng);
    for (int j = 0; j < 300; ++j) {
      std::vector<double> x(6);
      for (double& v : x) v = xs.sign();
      const int y =
          evaluate(target, std::span<const double>(x)) < 0.0 ? -1 : +1;
      data.push_back(LabeledSample{std::move(x),
                                   static_cast<std::int8_t>(y)});
    }
    const RegressionModel model = l1_fit(data, 2);
    cells.push_back(model.threshold);
    for (const auto& [s, w] : model.weights) cells.push_back(w);
  }
  return cells;
}

SuiteResult suite_determinism(const SuiteOptions& o) {
  SuiteResult r{"determinism", true, "", 0};
  const int saved = max_threads();
  std::vector<std::vector<double>> runs;
  for (int threads : {1, 4, 16}) {
    set_threads(threads);
    runs.push_back(determinism_battery(o.seed, Exec::parallel));
  }
  set_threads(saved);
  const std::vector<double> serial = determinism_battery(o.seed, Exec::serial);
  std::size_t mismatched = 0;
  for (const auto& run : runs) {
    if (run.size() != runs[0].size()) {
      mismatched = runs[0].size();
      break;
    }
    for (std::size_t i = 0; i < run.size(); ++i)
      if (std::memcmp(&run[i], &runs[0][i], sizeof(double)) != 0)
        ++mismatched;
  }
  for (std::size_t i = 0; i < serial.size() && i < runs[0].size(); ++i)
    if (std::memcmp(&serial[i], &runs[0][i], sizeof(double)) != 0)
      ++mismatched;
  r.passed = mismatched == 0;
  r.detail = std::to_string(runs[0].size()) +
             " cells at 1/4/16 threads and serial reference, mismatches = " +
             std::to_string(mismatched);
  return r;
}

using SuiteFn = std::function<SuiteResult(const SuiteOptions&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"lemma-key-exact", suite_lemma_key},
      {"as-bound-d", suite_as_bound},
      {"ns-spectral-oracle", suite_ns_spectral},
      {"restriction-conservation", suite_restriction_conservation},
      {"reduction-identity", suite_reduction_identity},
      {"sheppard-gns", suite_sheppard},
      {"qnorm-exact", suite_qnorm},
      {"hermite-orthonormality", suite_orthonormality},
      {"gl-extremal-shape", suite_gl_extremal},
      {"gns-exponent-shape", suite_gns_exponent},
      {"critical-index-machinery", suite_critical_index},
      {"learner-agnostic", suite_learner},
      {"determinism", suite_determinism},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& list_suites() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, fn] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

SuiteResult run_suite(const std::string& id, const SuiteOptions& opts) {
  for (const auto& [sid, fn] : registry()) {
    if (sid != id) continue;
    const double t0 = wall_time();
    SuiteResult result = fn(opts);
    result.seconds = wall_time() - t0;
    return result;
  }
  throw std::invalid_argument("unknown suite id: " + id);
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opts) {
  std::vector<SuiteResult> results;
  for (const std::string& id : list_suites())
    results.push_back(run_suite(id, opts));
  return results;
}

}  // namespace ptf
