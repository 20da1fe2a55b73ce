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

#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace relaylp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense : uint8_t { kLessEqual, kEqual };

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kNodeLimit };

std::string to_string(SolveStatus status);

struct SparseRow {
  std::vector<int> cols;     // strictly increasing
  std::vector<double> vals;  // no explicit zeros
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

// Sparse minimization instance:  min c'x  s.t.  A x {<=,=} b,  l <= x <= u.
// Rows are stored row-major with sorted column indices and no explicit zeros.
// Variable bounds are kept out of the row set; the solver handles them
// implicitly.
class LpProblem {
 public:
  explicit LpProblem(int num_vars);

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(sense_.size()); }

  void set_objective(int var, double coef);
  void set_bounds(int var, double lower, double upper);
  void mark_integer(int var, bool flag = true);

  // Appends one row; entries must arrive sorted by column.  Zero coefficients
  // are dropped.  Throws std::invalid_argument on bad indices or ordering.
  void add_row(std::span<const int> cols, std::span<const double> vals,
               RowSense sense, double rhs);
  void add_row(const SparseRow& row);

  // Full structural check of every invariant; throws std::invalid_argument.
  void validate() const;

  bool has_integer_vars() const;

  // Row-major storage accessors.
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<int>& row_start() const { return row_start_; }
  const std::vector<int>& cols() const { return cols_; }
  const std::vector<double>& vals() const { return vals_; }
  const std::vector<RowSense>& sense() const { return sense_; }
  const std::vector<double>& rhs() const { return rhs_; }
  const std::vector<double>& var_lower() const { return lower_; }
  const std::vector<double>& var_upper() const { return upper_; }
  const std::vector<uint8_t>& integer_mask() const { return integer_; }

  // Row activity a_i'x for one row.
  double row_activity(int row, std::span<const double> x) const;
  double objective_value(std::span<const double> x) const;

 private:
  int num_vars_;
  std::vector<double> objective_;
  std::vector<int> row_start_;  // size num_rows()+1
  std::vector<int> cols_;
  std::vector<double> vals_;
  std::vector<RowSense> sense_;
  std::vector<double> rhs_;
  std::vector<double> lower_, upper_;
  std::vector<uint8_t> integer_;
};

// Returns a copy of `p` with the given rows appended (feasible region
// intersected with the new half-spaces).  Prior rows keep their order.
LpProblem append_rows(const LpProblem& p, std::span<const SparseRow> rows);

struct SolverOptions {
  // 0 means the default 50 * (num_vars + num_rows).
  long max_iterations = 0;
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double integrality_tol = 1e-6;
  // Single-phase big-M: M = big_m_factor * max |coefficient|.
  double big_m_factor = 1e7;
  int refactor_interval = 96;
  long node_limit = 1000000;
  // Optional crash hint, one entry per structural variable: start the
  // variable at its upper bound instead of the default lower-first policy.
  // Empty means no hint.  Part of the input for determinism purposes.
  std::vector<uint8_t> start_at_upper;
  // Optional known integer-feasible point for solve_milp; it seeds the
  // incumbent so the bound test can prune from the first node.  Ignored if
  // infeasible.  Empty means none.
  std::vector<double> incumbent_x;
};

struct LpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  long simplex_iterations = 0;
};

struct MilpSolution {
  LpSolution lp;  // status/x/objective of the incumbent
  long branch_nodes_explored = 0;
  double integrality_gap_at_stop = 0.0;
};

// Revised simplex with implicit variable bounds.  Deterministic: Dantzig
// pricing with lowest-index tie break, switching to Bland's rule after
// 2*(num_vars+num_rows) degenerate steps.  integer_mask is ignored.
LpSolution solve_lp(const LpProblem& p, const SolverOptions& opts = {});

// Same engine with externally supplied bounds (used by branch-and-bound).
LpSolution solve_lp_with_bounds(const LpProblem& p, const SolverOptions& opts,
                                std::span<const double> lower,
                                std::span<const double> upper);

// Depth-first branch-and-bound on the integer-marked variables: LP-relaxation
// bounds, branching on the most fractional variable (ties to the lowest
// index), round-up child explored first.
MilpSolution solve_milp(const LpProblem& p, const SolverOptions& opts = {});

// Plain-text dump in CPLEX LP style for eyeballing against other solvers.
std::string dump_lp_format(const LpProblem& p);

}  // namespace relaylp
