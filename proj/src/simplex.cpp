#include "ptf/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace ptf {

namespace {

constexpr double kTol = 1e-9;
constexpr double kPivotTol = 1e-11;

class Simplex {
 public:
  explicit Simplex(const BoundedLp& lp)
      : lp_(lp), m_(lp.rows), n_(lp.cols), ncols_(lp.cols + lp.rows) {
    // Columns [n_, ncols_) are artificials with coefficient sign(b_i).
    upper_.assign(ncols_, kLpInfinity);
    for (std::size_t j = 0; j < n_; ++j) upper_[j] = lp.upper[j];
    at_upper_.assign(ncols_, false);
    basis_.resize(m_);
    in_basis_.assign(ncols_, false);
    binv_.assign(m_ * m_, 0.0);
    art_sign_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      art_sign_[i] = lp.b[i] < 0.0 ? -1.0 : 1.0;
      basis_[i] = n_ + i;
      in_basis_[n_ + i] = true;
      binv_[i * m_ + i] = art_sign_[i];
    }
  }

  LpSolution run(std::uint64_t max_iterations) {
    LpSolution sol;
    // Phase 1: maximize -sum(artificials).
    cost_.assign(ncols_, 0.0);
    for (std::size_t j = n_; j < ncols_; ++j) cost_[j] = -1.0;
    if (!iterate(max_iterations, sol)) return sol;
    compute_xb();
    double art = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= static_cast<int>(n_)) art += std::fabs(xb_[i]);
    if (art > 1e-7) {
      sol.status = LpSolution::Status::infeasible;
      return sol;
    }
    // Phase 2: real costs; artificials pinned at zero.
    for (std::size_t j = n_; j < ncols_; ++j) upper_[j] = 0.0;
    cost_.assign(ncols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = lp_.c[j];
    if (!iterate(max_iterations, sol)) return sol;

    sol.status = LpSolution::Status::optimal;
    sol.x.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j)
      if (!in_basis_[j] && at_upper_[j]) sol.x[j] = upper_[j];
    compute_xb();
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < static_cast<int>(n_)) sol.x[basis_[i]] = xb_[i];
    compute_duals();
    sol.duals = pi_;
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j) sol.objective += lp_.c[j] * sol.x[j];
    sol.iterations = iters_;
    return sol;
  }

 private:
  double col_entry(std::size_t row, std::size_t col) const {
    if (col < n_) return lp_.at(row, col);
    return col - n_ == row ? art_sign_[row] : 0.0;
  }

  void compute_xb() {
    // x_B = Binv (b - A_N x_N); only nonbasic-at-upper columns contribute.
    std::vector<double> rhs(lp_.b);
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (in_basis_[j] || !at_upper_[j] || upper_[j] == 0.0) continue;
      for (std::size_t i = 0; i < m_; ++i) {
        const double aij = col_entry(i, j);
        if (aij != 0.0) rhs[i] -= aij * upper_[j];
      }
    }
    xb_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double t = 0.0;
      for (std::size_t k = 0; k < m_; ++k) t += binv_[i * m_ + k] * rhs[k];
      xb_[i] = t;
    }
  }

  void compute_duals() {
    pi_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t k = 0; k < m_; ++k) pi_[k] += cb * binv_[i * m_ + k];
    }
  }

  double reduced_cost(std::size_t j) const {
    double d = cost_[j];
    if (j < n_) {
      for (std::size_t i = 0; i < m_; ++i) {
        const double aij = lp_.at(i, j);
        if (aij != 0.0) d -= pi_[i] * aij;
      }
    } else {
      d -= pi_[j - n_] * art_sign_[j - n_];
    }
    return d;
  }

  void refactorize() {
    // Rebuild Binv from the basis columns by Gauss-Jordan with partial
    // pivoting.
    std::vector<double> mat(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t col = 0; col < m_; ++col)
        mat[i * m_ + col] = col_entry(i, basis_[col]);
    std::vector<double> inv(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
    for (std::size_t col = 0; col < m_; ++col) {
      std::size_t piv = col;
      double best = std::fabs(mat[col * m_ + col]);
      for (std::size_t r = col + 1; r < m_; ++r) {
        const double v = std::fabs(mat[r * m_ + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < kPivotTol) continue;  // singular direction; leave identity
      if (piv != col) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(mat[piv * m_ + k], mat[col * m_ + k]);
          std::swap(inv[piv * m_ + k], inv[col * m_ + k]);
        }
      }
      const double s = 1.0 / mat[col * m_ + col];
      for (std::size_t k = 0; k < m_; ++k) {
        mat[col * m_ + k] *= s;
        inv[col * m_ + k] *= s;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = mat[r * m_ + col];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          mat[r * m_ + k] -= f * mat[col * m_ + k];
          inv[r * m_ + k] -= f * inv[col * m_ + k];
        }
      }
    }
    binv_ = std::move(inv);
  }

  /// Runs the current phase to optimality.  Returns false when the overall
  /// solve should stop (unbounded / iteration limit), with sol filled in.
  bool iterate(std::uint64_t max_iterations, LpSolution& sol) {
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (iters_ >= max_iterations) {
        sol.status = LpSolution::Status::iteration_limit;
        sol.iterations = iters_;
        return false;
      }
      compute_xb();
      compute_duals();

      // Entering column.
      std::size_t enter = ncols_;
      double best_score = kTol;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (in_basis_[j]) continue;
        if (upper_[j] == 0.0) continue;  // pinned
        const double d = reduced_cost(j);
        const bool eligible = at_upper_[j] ? d < -kTol : d > kTol;
        if (!eligible) continue;
        if (bland) {
          enter = j;
          break;
        }
        const double score = std::fabs(d);
        if (score > best_score) {
          best_score = score;
          enter = j;
        }
      }
      if (enter == ncols_) return true;  // phase optimal

      // Direction through the basis.
      std::vector<double> w(m_, 0.0);
      for (std::size_t i = 0; i < m_; ++i) {
        double t = 0.0;
        for (std::size_t k = 0; k < m_; ++k) {
          const double akj = col_entry(k, enter);
          if (akj != 0.0) t += binv_[i * m_ + k] * akj;
        }
        w[i] = t;
      }
      const double dir = at_upper_[enter] ? -1.0 : 1.0;  // movement of x_enter

      // Ratio test: largest step t >= 0.
      double step = upper_[enter] == kLpInfinity
                        ? kLpInfinity
                        : upper_[enter];  // bound-to-bound flip
      int leave = -1;        // basis position
      int leave_to_upper = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double change = -dir * w[i];  // d(x_Bi)/dt
        const double ub = upper_[basis_[i]];
        if (change < -kPivotTol) {
          const double t = xb_[i] / (-change);
          if (t < step - kTol ||
              (leave >= 0 && t < step + kTol &&
               basis_[i] < basis_[leave])) {
            step = std::max(t, 0.0);
            leave = static_cast<int>(i);
            leave_to_upper = 0;
          }
        } else if (change > kPivotTol && ub != kLpInfinity) {
          const double t = (ub - xb_[i]) / change;
          if (t < step - kTol ||
              (leave >= 0 && t < step + kTol &&
               basis_[i] < basis_[leave])) {
            step = std::max(t, 0.0);
            leave = static_cast<int>(i);
            leave_to_upper = 1;
          }
        }
      }
      if (step == kLpInfinity) {
        sol.status = LpSolution::Status::unbounded;
        sol.iterations = iters_;
        return false;
      }
      ++iters_;
      if (step < kTol) {
        if (++degenerate_run > 4 * m_ + 50) bland = true;
      } else {
        degenerate_run = 0;
      }

      if (leave < 0) {
        // Entering variable runs to its other bound; no basis change.
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }

      // Pivot: entering replaces basis_[leave].
      const std::size_t lv = basis_[leave];
      in_basis_[lv] = false;
      at_upper_[lv] = leave_to_upper != 0;
      in_basis_[enter] = true;
      at_upper_[enter] = false;
      basis_[leave] = static_cast<int>(enter);

      const double piv = w[leave];
      if (std::fabs(piv) < kPivotTol) {
        refactorize();
      } else {
        const std::size_t r = static_cast<std::size_t>(leave);
        const double inv_piv = 1.0 / piv;
        for (std::size_t k = 0; k < m_; ++k) binv_[r * m_ + k] *= inv_piv;
        for (std::size_t i = 0; i < m_; ++i) {
          if (i == r) continue;
          const double f = w[i];
          if (f == 0.0) continue;
          for (std::size_t k = 0; k < m_; ++k)
            binv_[i * m_ + k] -= f * binv_[r * m_ + k];
        }
      }
      if (iters_ % 128 == 0) refactorize();
    }
  }

  const BoundedLp& lp_;
  std::size_t m_, n_, ncols_;
  std::vector<double> upper_, cost_, binv_, xb_, pi_, art_sign_;
  std::vector<int> basis_;
  std::vector<bool> in_basis_, at_upper_;
  std::uint64_t iters_ = 0;
};

}  // namespace

LpSolution solve_bounded_lp(const BoundedLp& lp,
                            std::uint64_t max_iterations) {
  if (lp.a.size() != lp.rows * lp.cols || lp.b.size() != lp.rows ||
      lp.c.size() != lp.cols || lp.upper.size() != lp.cols)
    throw std::invalid_argument("solve_bounded_lp: inconsistent sizes");
  Simplex s(lp);
  return s.run(max_iterations);
}

}  // namespace ptf
