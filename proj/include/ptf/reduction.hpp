#pragma once

#include <cstdint>
#include <vector>

#include "ptf/boolean_sense.hpp"
#include "ptf/estimate.hpp"
#include "ptf/multilinear.hpp"
#include "ptf/parallel.hpp"
#include "ptf/rng.hpp"
#include "ptf/truth_table.hpp"

namespace ptf {

/// One draw of the noise-as-restriction sampler: x_i = a_i z_{alpha(i)} is
/// uniform on the hypercube, and flipping z_r flips exactly the coordinates
/// in block r, i.e. each coordinate independently with probability 1/m.
struct ReductionSample {
  std::vector<std::int8_t> a;       // length n, +/-1
  std::vector<std::uint32_t> alpha; // length n, values in [0, m)
  std::vector<std::int8_t> z;       // length m, +/-1
  std::uint32_t r;                  // uniform in [0, m)
};
ReductionSample sample_reduction(std::uint32_t n, std::uint32_t m, Rng& rng);

/// Estimates (1/m) E_{a,alpha}[ Inf(f_{a,alpha}) ] with m = floor(1/eps),
/// where f_{a,alpha}(z) = f(a_1 z_{alpha(1)}, ..., a_n z_{alpha(n)}); the
/// expectation equals NS_{1/m}(f) exactly.  The inner total influence is
/// enumerated exactly when m <= 20 and estimated by a nested sampler
/// otherwise (nested spread folded into the trial accumulator).
struct ReductionReport {
  Estimate estimate;
  std::uint32_t m = 0;
  double noise_rate = 0.0;   // 1/m, the rate the estimate is labeled with
  double bound_over_m = 0.0; // as_bound_closed(m, d) / m
};
ReductionReport reduction_estimate(const TruthTable& f, std::uint32_t d,
                                   double eps, std::uint64_t trials,
                                   std::uint64_t seed,
                                   Exec exec = Exec::parallel);

/// Replaces each variable of p by the normalized sum of k fresh +/-1
/// replicas: the degree-d PTF sign(p(S_1/sqrt(k), ..., S_n/sqrt(k))) on
/// n*k Boolean variables.  Requires n*k <= 24.
PtfBoolean replicate(const MultilinearPoly& p, std::uint32_t k,
                     Exec exec = Exec::parallel);

}  // namespace ptf
