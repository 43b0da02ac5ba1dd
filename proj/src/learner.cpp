#include "ptf/learner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ptf/simplex.hpp"

namespace ptf {

std::vector<VarSet> feature_subsets(std::uint32_t n, std::uint32_t d) {
  if (d > n) throw std::invalid_argument("feature_subsets: d <= n");
  std::vector<VarSet> out;
  out.push_back({});
  VarSet cur;
  for (std::uint32_t size = 1; size <= d; ++size) {
    cur.assign(size, 0);
    // Lexicographic enumeration of size-subsets of [1, n].
    for (std::uint32_t i = 0; i < size; ++i) cur[i] = i + 1;
    while (true) {
      out.push_back(cur);
      std::int64_t i = static_cast<std::int64_t>(size) - 1;
      while (i >= 0 && cur[i] == n - size + 1 + i) --i;
      if (i < 0) break;
      ++cur[i];
      for (std::size_t j = i + 1; j < size; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
  return out;
}

std::vector<double> feature_map(const std::vector<double>& x,
                                std::uint32_t d) {
  const std::uint32_t n = static_cast<std::uint32_t>(x.size());
  const std::vector<VarSet> subsets = feature_subsets(n, d);
  std::vector<double> phi;
  phi.reserve(subsets.size());
  for (const VarSet& s : subsets) {
    double v = 1.0;
    for (std::uint32_t var : s) v *= x[var - 1];
    phi.push_back(v);
  }
  return phi;
}

namespace {

/// L1 fit via the bounded dual:
///   max y.lambda  s.t.  Phi^T lambda = 0,  -1 <= lambda <= 1,
/// shifted to mu = lambda + 1 in [0, 2].  The simplex multipliers of the
/// equality rows at optimality are exactly the primal coefficient vector
/// of min_w sum |phi_j.w - y_j| (same optimum as the split-slack primal,
/// at feature-count-sized tableaus instead of sample-count-sized ones).
class SimplexL1Solver final : public L1Solver {
 public:
  std::vector<double> fit(const std::vector<double>& phi, std::size_t samples,
                          std::size_t features,
                          const std::vector<double>& y) override {
    BoundedLp lp;
    lp.rows = features;
    lp.cols = samples;
    lp.a.assign(features * samples, 0.0);
    for (std::size_t j = 0; j < samples; ++j)
      for (std::size_t f = 0; f < features; ++f)
        lp.a[f * samples + j] = phi[j * features + f];
    lp.b.assign(features, 0.0);
    for (std::size_t j = 0; j < samples; ++j)
      for (std::size_t f = 0; f < features; ++f)
        lp.b[f] += phi[j * features + f];
    lp.c = y;
    lp.upper.assign(samples, 2.0);
    LpSolution sol = solve_bounded_lp(lp);
    if (sol.status != LpSolution::Status::optimal)
      throw std::runtime_error("L1 fit: LP did not reach optimality");
    return sol.duals;
  }
};

}  // namespace

std::unique_ptr<L1Solver> make_simplex_solver() {
  return std::make_unique<SimplexL1Solver>();
}

double RegressionModel::raw(const std::vector<double>& x) const {
  double acc = 0.0;
  for (const auto& [s, w] : weights) {
    double v = w;
    for (std::uint32_t var : s) v *= x[var - 1];
    acc += v;
  }
  return acc;
}

int RegressionModel::predict(const std::vector<double>& x) const {
  return raw(x) - threshold < 0.0 ? -1 : +1;
}

RegressionModel l1_fit(const Dataset& data, std::uint32_t d,
                       L1Solver* solver) {
  if (data.empty()) throw std::invalid_argument("l1_fit: empty dataset");
  const std::uint32_t n = static_cast<std::uint32_t>(data.front().x.size());
  for (const LabeledSample& s : data)
    if (s.x.size() != n || (s.y != 1 && s.y != -1))
      throw std::invalid_argument("l1_fit: inconsistent dataset");
  const std::vector<VarSet> subsets = feature_subsets(n, d);
  const std::size_t features = subsets.size();
  const std::size_t samples = data.size();

  std::vector<double> phi(samples * features);
  std::vector<double> y(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const std::vector<double> row = feature_map(data[j].x, d);
    std::copy(row.begin(), row.end(), phi.begin() + j * features);
    y[j] = data[j].y;
  }

  std::unique_ptr<L1Solver> fallback;
  if (!solver) {
    fallback = make_simplex_solver();
    solver = fallback.get();
  }
  const std::vector<double> w = solver->fit(phi, samples, features, y);

  RegressionModel model;
  model.n = n;
  model.degree = d;
  for (std::size_t f = 0; f < features; ++f)
    if (w[f] != 0.0) model.weights[subsets[f]] = w[f];

  // Threshold search over midpoints of the sorted fitted values, plus the
  // two trivial thresholds (everything +1 / everything -1).
  std::vector<double> raw(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    double v = 0.0;
    for (std::size_t f = 0; f < features; ++f)
      v += w[f] * phi[j * features + f];
    raw[j] = v;
  }
  std::vector<std::size_t> order(samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  // With threshold below raw[order[0]], all predictions are +1; moving the
  // threshold past a point flips that prediction to -1.
  std::int64_t err = 0;
  for (std::size_t j = 0; j < samples; ++j)
    if (data[j].y == -1) ++err;  // all predicted +1
  std::int64_t best_err = err;
  double best_t = raw[order[0]] - 1.0;
  for (std::size_t k = 0; k < samples; ++k) {
    err += data[order[k]].y == -1 ? -1 : +1;
    const double next =
        k + 1 < samples ? raw[order[k + 1]] : raw[order[k]] + 2.0;
    if (next <= raw[order[k]]) continue;  // duplicate fitted value
    const double t = 0.5 * (raw[order[k]] + next);
    if (err < best_err) {
      best_err = err;
      best_t = t;
    }
  }
  model.threshold = best_t;
  return model;
}

double l1_objective(const Dataset& data, std::uint32_t d,
                    const std::vector<double>& w) {
  if (data.empty()) throw std::invalid_argument("l1_objective: empty data");
  double acc = 0.0;
  for (const LabeledSample& s : data) {
    const std::vector<double> row = feature_map(s.x, d);
    if (row.size() != w.size())
      throw std::invalid_argument("l1_objective: weight size mismatch");
    double v = 0.0;
    for (std::size_t f = 0; f < row.size(); ++f) v += w[f] * row[f];
    acc += std::fabs(v - s.y);
  }
  return acc;
}

double evaluate_model(const RegressionModel& model, const Dataset& data) {
  if (data.empty())
    throw std::invalid_argument("evaluate_model: empty dataset");
  std::size_t err = 0;
  for (const LabeledSample& s : data)
    if (model.predict(s.x) != s.y) ++err;
  return static_cast<double>(err) / static_cast<double>(data.size());
}

double ns_envelope_hypercube(double gamma, std::uint32_t d) {
  return std::pow(gamma, std::pow(2.0, -static_cast<double>(d)));
}

double ns_envelope_gaussian(double gamma, std::uint32_t d) {
  return static_cast<double>(d) * std::sqrt(std::log(1.0 / gamma)) *
         std::pow(gamma, 1.0 / (2.0 * static_cast<double>(d)));
}

double choose_degree(double eps, MarginalSetting setting,
                     std::uint32_t d_target) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("choose_degree: eps in (0, 1/2)");
  if (d_target < 1) throw std::invalid_argument("choose_degree: d >= 1");
  double gamma;
  if (setting == MarginalSetting::hypercube) {
    const double budget = (1.0 - std::exp(-2.0)) * eps * eps / 2.0;
    // gamma^(1/2^d) = budget  =>  gamma = budget^(2^d)
    gamma = std::pow(budget, std::pow(2.0, static_cast<double>(d_target)));
  } else {
    const double budget = (1.0 - std::exp(-1.0)) * eps * eps / 2.0;
    // Bisect on the increasing branch gamma <= e^-d.
    double lo = 1e-300;
    double hi = std::exp(-static_cast<double>(d_target));
    if (ns_envelope_gaussian(hi, d_target) <= budget) {
      gamma = hi;
    } else {
      for (int it = 0; it < 400; ++it) {
        const double mid = std::sqrt(lo * hi);  // geometric bisection
        if (ns_envelope_gaussian(mid, d_target) <= budget)
          lo = mid;
        else
          hi = mid;
      }
      gamma = lo;
    }
  }
  return 1.0 / gamma;
}

}  // namespace ptf
