#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "ptf/multilinear.hpp"

namespace ptf {

struct LabeledSample {
  std::vector<double> x;
  std::int8_t y;  // +/-1
};
using Dataset = std::vector<LabeledSample>;

/// All variable subsets of size <= d over [n], in the canonical feature
/// order: by size, then lexicographically.  Stable across runs, so models
/// serialize and reload bit-exactly.
std::vector<VarSet> feature_subsets(std::uint32_t n, std::uint32_t d);

/// Monomial feature values of x in the canonical order.
std::vector<double> feature_map(const std::vector<double>& x, std::uint32_t d);

/// Pluggable backend for the L1 linear fit, so an external solver can be
/// swapped in behind the same contract.
class L1Solver {
 public:
  virtual ~L1Solver() = default;
  /// Returns w minimizing sum_j |phi_j . w - y_j|; phi is row-major
  /// (samples x features).
  virtual std::vector<double> fit(const std::vector<double>& phi,
                                  std::size_t samples, std::size_t features,
                                  const std::vector<double>& y) = 0;
};

/// Default backend: the fit is a linear program (split slack variables for
/// the residuals), solved exactly by the dense simplex in simplex.hpp.
std::unique_ptr<L1Solver> make_simplex_solver();

struct RegressionModel {
  std::uint32_t n = 0;
  std::uint32_t degree = 0;
  std::map<VarSet, double> weights;
  double threshold = 0.0;

  double raw(const std::vector<double>& x) const;
  /// Hypothesis sign(p(x) - threshold) with sign(0) = +1.
  int predict(const std::vector<double>& x) const;
};

/// Degree-d L1 polynomial regression followed by threshold selection over
/// the midpoints of the sorted fitted values (plus the two trivial
/// thresholds); ties broken toward the smallest candidate.
RegressionModel l1_fit(const Dataset& data, std::uint32_t d,
                       L1Solver* solver = nullptr);

/// Empirical L1 objective of a weight vector on a dataset.
double l1_objective(const Dataset& data, std::uint32_t d,
                    const std::vector<double>& w);

/// Empirical misclassification rate.
double evaluate_model(const RegressionModel& model, const Dataset& data);

enum class MarginalSetting { hypercube, gaussian };

/// Advisory regression degree 1/gamma, where gamma is the noise rate at
/// which the stored noise-sensitivity envelope for degree-d_target PTFs
/// falls below the L2 budget ((1-e^-2) eps^2 / 2 on the hypercube,
/// (1-e^-1) eps^2 / 2 in the Gaussian setting).  Envelopes use constant 1:
/// gamma^(1/2^d) on the hypercube and d sqrt(ln(1/gamma)) gamma^(1/2d) in
/// the Gaussian setting (solved on its monotone branch gamma <= e^-d).
/// Returned as a real number; it grows astronomically for small eps, and
/// the actual regression degree is always a user choice.
double choose_degree(double eps, MarginalSetting setting,
                     std::uint32_t d_target);

/// The two envelope functions behind choose_degree, exposed for checks.
double ns_envelope_hypercube(double gamma, std::uint32_t d);
double ns_envelope_gaussian(double gamma, std::uint32_t d);

}  // namespace ptf
