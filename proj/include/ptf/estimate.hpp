#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ptf {

/// Result of a randomized computation: sample mean, standard error of the
/// mean, sample count and the root seed that reproduces it.
struct Estimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Streaming (count, sum, sum-of-squares) accumulator.  merge() is
/// associative, so per-chunk accumulators combined in canonical chunk order
/// give bit-identical results at any parallelism level.
struct Accum {
  std::uint64_t n = 0;
  double sum = 0.0;
  double sumsq = 0.0;

  void add(double x) {
    ++n;
    sum += x;
    sumsq += x * x;
  }

  void merge(const Accum& o) {
    n += o.n;
    sum += o.sum;
    sumsq += o.sumsq;
  }

  Estimate to_estimate(std::uint64_t seed) const {
    if (n < 2) throw std::invalid_argument("Estimate requires >= 2 samples");
    const double mean = sum / static_cast<double>(n);
    double var = (sumsq - sum * mean) / static_cast<double>(n - 1);
    if (var < 0.0) var = 0.0;  // rounding on constant data
    return Estimate{mean, std::sqrt(var / static_cast<double>(n)), n, seed};
  }
};

/// Least-squares slope of log10(y) against log10(x); used for the
/// exponent-shape probes.
inline double fit_loglog_slope(const std::vector<double>& xs,
                               const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need >= 2 matched points");
  double mx = 0, my = 0;
  const double k = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log10(xs[i]);
    my += std::log10(ys[i]);
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log10(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log10(ys[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace ptf
