// Copyright 2026 The relaylp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Revised simplex for  min c'x, A x {<=,=} b, l <= x <= u.
//
// Bounds are handled implicitly: nonbasic variables rest at a bound (free
// ones at zero) and may flip bounds without a basis change.  Feasibility is
// reached in a single big-M phase: every row whose slack cannot absorb the
// initial residual gets one artificial column with cost
// M = big_m_factor * max|coefficient|.  The basis inverse is kept dense in
// row-major order, updated in product form and refactorized periodically.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "relaylp/lp.hpp"

namespace relaylp {
namespace {

enum class VarState : uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

class Simplex {
 public:
  Simplex(const LpProblem& p, const SolverOptions& opts,
          std::span<const double> lower, std::span<const double> upper)
      : p_(p), opts_(opts), m_(p.num_rows()), n_(p.num_vars()) {
    build_columns(lower, upper);
  }

  LpSolution run() {
    LpSolution sol;
    if (m_ == 0) return solve_unconstrained(sol);
    crash_basis();
    refactorize();
    const long max_iter = opts_.max_iterations > 0
                              ? opts_.max_iterations
                              : 50L * (static_cast<long>(n_) + m_);
    const long degen_limit = 2L * (static_cast<long>(n_) + m_);
    bool bland = false;
    long degenerate_steps = 0;
    int since_refactor = 0;

    while (true) {
      if (iterations_ >= max_iter) {
        finish(sol, SolveStatus::kIterationLimit);
        return sol;
      }
      int entering = price(bland);
      if (entering < 0) {
        // Re-price on a fresh factorization so drift cannot fake optimality.
        if (since_refactor > 0) {
          refactorize();
          since_refactor = 0;
          entering = price(bland);
        }
        if (entering < 0) {
          finish(sol, artificial_infeasible() ? SolveStatus::kInfeasible
                                              : SolveStatus::kOptimal);
          return sol;
        }
      }

      const int dir = entering_direction(entering);
      ftran(entering);

      // Ratio test: largest step before a basic variable hits a bound, or
      // the entering variable reaches its opposite bound.
      double limit = bound_width(entering);
      int leave_row = -1;
      int leave_to_upper = 0;
      double best_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double v = dir * work_[i];
        const int bj = basic_[i];
        double step;
        int to_upper;
        if (v > kPivotTol) {
          if (lo_[bj] == -kInf) continue;
          step = (xval_[bj] - lo_[bj]) / v;
          to_upper = 0;
        } else if (v < -kPivotTol) {
          if (hi_[bj] == kInf) continue;
          step = (xval_[bj] - hi_[bj]) / v;
          to_upper = 1;
        } else {
          continue;
        }
        if (step < 0.0) step = 0.0;
        bool take = false;
        if (step < limit - kRatioTie) {
          take = true;
        } else if (step < limit + kRatioTie && leave_row >= 0) {
          take = bland ? basic_[i] < basic_[leave_row]
                       : std::abs(work_[i]) > std::abs(best_pivot);
        }
        if (take) {
          limit = step;
          leave_row = i;
          leave_to_upper = to_upper;
          best_pivot = work_[i];
        }
      }

      if (limit == kInf) {
        finish(sol, SolveStatus::kUnbounded);
        return sol;
      }

      if (leave_row >= 0 && std::abs(work_[leave_row]) < kPivotAbort &&
          since_refactor > 0) {
        // Numerically poor pivot on a drifted inverse: refactorize, retry.
        refactorize();
        since_refactor = 0;
        continue;
      }

      ++iterations_;
      if (limit <= kDegenTol && ++degenerate_steps > degen_limit) bland = true;

      if (leave_row < 0) {
        // Bound flip: the entering variable travels the width of its box.
        apply_step(entering, dir, limit);
        state_[entering] = state_[entering] == VarState::kAtLower
                               ? VarState::kAtUpper
                               : VarState::kAtLower;
        xval_[entering] =
            state_[entering] == VarState::kAtUpper ? hi_[entering] : lo_[entering];
        continue;
      }

      apply_step(entering, dir, limit);
      const int leaving = basic_[leave_row];
      state_[leaving] = leave_to_upper ? VarState::kAtUpper : VarState::kAtLower;
      xval_[leaving] = leave_to_upper ? hi_[leaving] : lo_[leaving];
      state_[entering] = VarState::kBasic;
      basic_[leave_row] = entering;
      update_inverse(leave_row);
      if (++since_refactor >= opts_.refactor_interval) {
        refactorize();
        since_refactor = 0;
      }
    }
  }

 private:
  static constexpr double kPivotTol = 1e-11;
  static constexpr double kPivotAbort = 1e-8;
  static constexpr double kRatioTie = 1e-12;
  static constexpr double kDegenTol = 1e-12;

  // --- setup -------------------------------------------------------------

  void build_columns(std::span<const double> lower, std::span<const double> upper) {
    const auto& rs = p_.row_start();
    const auto& rc = p_.cols();
    const auto& rv = p_.vals();

    std::vector<int> count(n_, 0);
    for (int c : rc) ++count[c];
    col_start_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + count[j];
    col_row_.resize(rc.size());
    col_val_.resize(rc.size());
    std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
    double max_coef = 0.0;
    for (int i = 0; i < m_; ++i) {
      for (int k = rs[i]; k < rs[i + 1]; ++k) {
        const int pos = fill[rc[k]]++;
        col_row_[pos] = i;
        col_val_[pos] = rv[k];
        max_coef = std::max(max_coef, std::abs(rv[k]));
      }
    }
    for (double c : p_.objective()) max_coef = std::max(max_coef, std::abs(c));
    big_m_ = opts_.big_m_factor * std::max(max_coef, 1.0);

    cost_.assign(p_.objective().begin(), p_.objective().end());
    lo_.assign(lower.begin(), lower.end());
    hi_.assign(upper.begin(), upper.end());

    slack_of_row_.assign(m_, -1);
    for (int i = 0; i < m_; ++i)
      if (p_.sense()[i] == RowSense::kLessEqual)
        slack_of_row_[i] = add_column(i, 1.0, 0.0, 0.0, kInf);
  }

  int add_column(int row, double coef, double cost, double lo, double hi) {
    const int j = static_cast<int>(cost_.size());
    col_start_.push_back(static_cast<int>(col_row_.size()) + 1);
    col_row_.push_back(row);
    col_val_.push_back(coef);
    cost_.push_back(cost);
    lo_.push_back(lo);
    hi_.push_back(hi);
    return j;
  }

  void crash_basis() {
    int total = static_cast<int>(cost_.size());
    state_.assign(total, VarState::kAtLower);
    xval_.assign(total, 0.0);
    const auto& hint = opts_.start_at_upper;
    for (int j = 0; j < total; ++j) {
      if (lo_[j] == -kInf && hi_[j] == kInf) {
        state_[j] = VarState::kFreeZero;
        continue;
      }
      bool at_upper = lo_[j] == -kInf ||
                      (hi_[j] != kInf && j < static_cast<int>(hint.size()) && hint[j]);
      state_[j] = at_upper ? VarState::kAtUpper : VarState::kAtLower;
      xval_[j] = at_upper ? hi_[j] : lo_[j];
    }

    // Crash-point residuals decide which rows need an artificial.
    std::vector<double> residual(p_.rhs().begin(), p_.rhs().end());
    const auto& rs = p_.row_start();
    for (int i = 0; i < m_; ++i)
      for (int k = rs[i]; k < rs[i + 1]; ++k)
        residual[i] -= p_.vals()[k] * xval_[p_.cols()[k]];

    basic_.assign(m_, -1);
    first_artificial_ = total;
    for (int i = 0; i < m_; ++i) {
      const int s = slack_of_row_[i];
      if (s >= 0 && residual[i] >= 0.0) {
        basic_[i] = s;
        state_[s] = VarState::kBasic;
        xval_[s] = residual[i];
      } else {
        const double sign = residual[i] >= 0.0 ? 1.0 : -1.0;
        const int a = add_column(i, sign, big_m_, 0.0, kInf);
        state_.push_back(VarState::kBasic);
        xval_.push_back(std::abs(residual[i]));
        basic_[i] = a;
      }
    }
  }

  LpSolution solve_unconstrained(LpSolution& sol) {
    sol.x.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      const double c = p_.objective()[j];
      if (c > 0.0) {
        if (lo_[j] == -kInf) { sol.status = SolveStatus::kUnbounded; return sol; }
        sol.x[j] = lo_[j];
      } else if (c < 0.0) {
        if (hi_[j] == kInf) { sol.status = SolveStatus::kUnbounded; return sol; }
        sol.x[j] = hi_[j];
      } else {
        sol.x[j] = lo_[j] != -kInf ? lo_[j] : (hi_[j] != kInf ? hi_[j] : 0.0);
      }
    }
    sol.status = SolveStatus::kOptimal;
    sol.objective_value = p_.objective_value(sol.x);
    return sol;
  }

  // --- basis inverse (row-major: binv_[r * m_ + c] = B^{-1}(r, c)) --------

  void refactorize() {
    // Gauss-Jordan with partial pivoting on a row-major copy of B.
    const size_t mm = static_cast<size_t>(m_);
    std::vector<double> a(mm * mm, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int j = basic_[i];
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
        a[static_cast<size_t>(col_row_[k]) * mm + i] = col_val_[k];
    }
    binv_.assign(mm * mm, 0.0);
    for (int i = 0; i < m_; ++i) binv_[static_cast<size_t>(i) * mm + i] = 1.0;

    for (int col = 0; col < m_; ++col) {
      int piv = -1;
      double best = 1e-13;
      for (int r = col; r < m_; ++r) {
        const double v = std::abs(a[static_cast<size_t>(r) * mm + col]);
        if (v > best) { best = v; piv = r; }
      }
      if (piv < 0)
        throw std::runtime_error("simplex: singular basis during refactorization");
      if (piv != col) {
        std::swap_ranges(a.begin() + static_cast<size_t>(piv) * mm,
                         a.begin() + static_cast<size_t>(piv + 1) * mm,
                         a.begin() + static_cast<size_t>(col) * mm);
        std::swap_ranges(binv_.begin() + static_cast<size_t>(piv) * mm,
                         binv_.begin() + static_cast<size_t>(piv + 1) * mm,
                         binv_.begin() + static_cast<size_t>(col) * mm);
      }
      double* arow = &a[static_cast<size_t>(col) * mm];
      double* brow = &binv_[static_cast<size_t>(col) * mm];
      const double d = 1.0 / arow[col];
      for (int c = col; c < m_; ++c) arow[c] *= d;
      for (int c = 0; c < m_; ++c) brow[c] *= d;
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = a[static_cast<size_t>(r) * mm + col];
        if (f == 0.0) continue;
        double* ar = &a[static_cast<size_t>(r) * mm];
        double* br = &binv_[static_cast<size_t>(r) * mm];
        for (int c = col; c < m_; ++c) ar[c] -= f * arow[c];
        for (int c = 0; c < m_; ++c) br[c] -= f * brow[c];
      }
    }
    recompute_basic_values();
  }

  void recompute_basic_values() {
    std::vector<double> rvec(p_.rhs().begin(), p_.rhs().end());
    const int total = static_cast<int>(cost_.size());
    for (int j = 0; j < total; ++j) {
      if (state_[j] == VarState::kBasic || xval_[j] == 0.0) continue;
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
        rvec[col_row_[k]] -= col_val_[k] * xval_[j];
    }
    for (int r = 0; r < m_; ++r) {
      const double* br = &binv_[static_cast<size_t>(r) * m_];
      double acc = 0.0;
      for (int c = 0; c < m_; ++c) acc += br[c] * rvec[c];
      xval_[basic_[r]] = acc;
    }
  }

  void ftran(int j) {
    work_.assign(m_, 0.0);
    const int k0 = col_start_[j], k1 = col_start_[j + 1];
    for (int r = 0; r < m_; ++r) {
      const double* br = &binv_[static_cast<size_t>(r) * m_];
      double acc = 0.0;
      for (int k = k0; k < k1; ++k) acc += br[col_row_[k]] * col_val_[k];
      work_[r] = acc;
    }
  }

  void update_inverse(int pivot_row) {
    const double inv_piv = 1.0 / work_[pivot_row];
    double* rp = &binv_[static_cast<size_t>(pivot_row) * m_];
    for (int c = 0; c < m_; ++c) rp[c] *= inv_piv;
    for (int r = 0; r < m_; ++r) {
      if (r == pivot_row) continue;
      const double f = work_[r];
      if (f == 0.0) continue;
      double* br = &binv_[static_cast<size_t>(r) * m_];
      for (int c = 0; c < m_; ++c) br[c] -= f * rp[c];
    }
  }

  void apply_step(int entering, int dir, double step) {
    if (step == 0.0) return;
    for (int i = 0; i < m_; ++i) xval_[basic_[i]] -= dir * step * work_[i];
    xval_[entering] += dir * step;
  }

  // --- pricing -----------------------------------------------------------

  int entering_direction(int j) const {
    if (state_[j] == VarState::kAtUpper) return -1;
    if (state_[j] == VarState::kFreeZero && last_dj_ > 0.0) return -1;
    return 1;
  }

  double bound_width(int j) const {
    if (lo_[j] == -kInf || hi_[j] == kInf) return kInf;
    return hi_[j] - lo_[j];
  }

  // Dantzig pricing (largest reduced-cost violation, lowest index on ties);
  // Bland mode returns the lowest-index eligible column.
  int price(bool bland) {
    y_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double f = cost_[basic_[r]];
      if (f == 0.0) continue;
      const double* br = &binv_[static_cast<size_t>(r) * m_];
      for (int c = 0; c < m_; ++c) y_[c] += f * br[c];
    }
    const int total = static_cast<int>(cost_.size());
    int best = -1;
    double best_score = opts_.optimality_tol;
    for (int j = 0; j < total; ++j) {
      if (state_[j] == VarState::kBasic || lo_[j] == hi_[j]) continue;
      double d = cost_[j];
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
        d -= y_[col_row_[k]] * col_val_[k];
      double score;
      if (state_[j] == VarState::kAtLower) {
        score = -d;
      } else if (state_[j] == VarState::kAtUpper) {
        score = d;
      } else {
        score = std::abs(d);
      }
      if (score > best_score) {
        best = j;
        last_dj_ = d;
        if (bland) return j;
        best_score = score;
      }
    }
    return best;
  }

  bool artificial_infeasible() const {
    const int total = static_cast<int>(cost_.size());
    for (int j = first_artificial_; j < total; ++j)
      if (xval_[j] > opts_.feasibility_tol) return true;
    return false;
  }

  void finish(LpSolution& sol, SolveStatus status) {
    if (status == SolveStatus::kOptimal) recompute_basic_values();
    sol.status = status;
    sol.simplex_iterations = iterations_;
    sol.x.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      double v = xval_[j];
      if (lo_[j] != -kInf && v < lo_[j]) v = lo_[j];
      if (hi_[j] != kInf && v > hi_[j]) v = hi_[j];
      sol.x[j] = v;
    }
    sol.objective_value = p_.objective_value(sol.x);
  }

  const LpProblem& p_;
  const SolverOptions& opts_;
  int m_, n_;

  std::vector<int> col_start_, col_row_;
  std::vector<double> col_val_;
  std::vector<double> cost_, lo_, hi_;
  std::vector<int> slack_of_row_;
  std::vector<int> basic_;
  std::vector<VarState> state_;
  std::vector<double> xval_;
  std::vector<double> binv_, work_, y_;
  int first_artificial_ = 0;
  double big_m_ = 0.0;
  double last_dj_ = 0.0;
  long iterations_ = 0;
};

}  // namespace

LpSolution solve_lp_with_bounds(const LpProblem& p, const SolverOptions& opts,
                                std::span<const double> lower,
                                std::span<const double> upper) {
  p.validate();
  for (int j = 0; j < p.num_vars(); ++j) {
    if (lower[j] > upper[j]) {
      LpSolution sol;
      sol.status = SolveStatus::kInfeasible;
      return sol;
    }
  }
  Simplex s(p, opts, lower, upper);
  return s.run();
}

LpSolution solve_lp(const LpProblem& p, const SolverOptions& opts) {
  return solve_lp_with_bounds(p, opts, p.var_lower(), p.var_upper());
}

}  // namespace relaylp
