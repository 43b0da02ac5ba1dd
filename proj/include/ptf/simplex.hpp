#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace ptf {

/// Dense LP in bounded standard form:
///   maximize c.x  subject to  A x = b,  0 <= x <= upper
/// (upper entries may be +infinity).
struct BoundedLp {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;      // rows x cols, row-major
  std::vector<double> b;      // rows
  std::vector<double> c;      // cols
  std::vector<double> upper;  // cols

  double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
  double at(std::size_t r, std::size_t col) const { return a[r * cols + col]; }
};

struct LpSolution {
  enum class Status { optimal, infeasible, unbounded, iteration_limit };
  Status status = Status::iteration_limit;
  std::vector<double> x;
  std::vector<double> duals;  // simplex multipliers of the equality rows
  double objective = 0.0;
  std::uint64_t iterations = 0;
};

/// Two-phase primal simplex with bounded variables and an explicit dense
/// basis inverse.  Pricing is steepest-coefficient; after a run of
/// degenerate pivots it switches to Bland's rule, which guarantees
/// termination.
LpSolution solve_bounded_lp(const BoundedLp& lp,
                            std::uint64_t max_iterations = 200000);

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

}  // namespace ptf
