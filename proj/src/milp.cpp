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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "relaylp/lp.hpp"

namespace relaylp {
namespace {

struct Node {
  std::vector<double> lower, upper;
  double parent_bound;  // LP objective of the parent, a valid lower bound
  int depth;
};

// Most fractional integer-marked variable; ties to the lowest index.
// Returns -1 when every integer variable is within tol of an integer.
int pick_branch_var(const LpProblem& p, const std::vector<double>& x, double tol) {
  int best = -1;
  double best_dist = tol;
  for (int j = 0; j < p.num_vars(); ++j) {
    if (!p.integer_mask()[j]) continue;
    const double frac = x[j] - std::floor(x[j]);
    const double dist = std::min(frac, 1.0 - frac);
    if (dist > best_dist) {
      best = j;
      best_dist = dist;
    }
  }
  return best;
}

}  // namespace

MilpSolution solve_milp(const LpProblem& p, const SolverOptions& opts) {
  p.validate();
  if (!p.has_integer_vars())
    throw std::invalid_argument("solve_milp: no integer-marked variables");

  MilpSolution out;
  const double tol = opts.integrality_tol;
  const long node_limit = opts.node_limit > 0 ? opts.node_limit : 1000000;

  std::vector<Node> stack;
  stack.push_back({p.var_lower(), p.var_upper(), -kInf, 0});

  bool have_incumbent = false;
  double incumbent_obj = kInf;
  LpSolution incumbent;

  // A supplied integer-feasible point becomes the starting incumbent.
  if (static_cast<int>(opts.incumbent_x.size()) == p.num_vars()) {
    const auto& x = opts.incumbent_x;
    bool ok = true;
    for (int j = 0; j < p.num_vars() && ok; ++j) {
      if (x[j] < p.var_lower()[j] - 1e-7 || x[j] > p.var_upper()[j] + 1e-7) ok = false;
      if (p.integer_mask()[j] && std::abs(x[j] - std::round(x[j])) > tol) ok = false;
    }
    for (int i = 0; i < p.num_rows() && ok; ++i) {
      const double a = p.row_activity(i, x);
      if (p.sense()[i] == RowSense::kEqual ? std::abs(a - p.rhs()[i]) > 1e-7
                                           : a > p.rhs()[i] + 1e-7)
        ok = false;
    }
    if (ok) {
      incumbent.status = SolveStatus::kOptimal;
      incumbent.x = x;
      incumbent.objective_value = p.objective_value(x);
      incumbent_obj = incumbent.objective_value;
      have_incumbent = true;
    }
  }
  bool hit_node_limit = false;
  bool hit_iteration_limit = false;
  long nodes = 0;
  long total_iterations = 0;

  while (!stack.empty()) {
    if (nodes >= node_limit) {
      hit_node_limit = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    if (have_incumbent && node.parent_bound >= incumbent_obj - 1e-9) continue;

    LpSolution sol = solve_lp_with_bounds(p, opts, node.lower, node.upper);
    ++nodes;
    total_iterations += sol.simplex_iterations;

    if (sol.status == SolveStatus::kIterationLimit) {
      hit_iteration_limit = true;
      break;
    }
    if (sol.status == SolveStatus::kUnbounded) {
      out.lp.status = SolveStatus::kUnbounded;
      out.branch_nodes_explored = nodes;
      out.lp.simplex_iterations = total_iterations;
      return out;
    }
    if (sol.status == SolveStatus::kInfeasible) continue;
    if (have_incumbent && sol.objective_value >= incumbent_obj - 1e-9) continue;

    int j = pick_branch_var(p, sol.x, tol);
    if (j < 0) {
      // Integral: snap and accept as the new incumbent.
      for (int v = 0; v < p.num_vars(); ++v)
        if (p.integer_mask()[v]) sol.x[v] = std::round(sol.x[v]);
      sol.objective_value = p.objective_value(sol.x);
      incumbent = sol;
      incumbent_obj = sol.objective_value;
      have_incumbent = true;
      continue;
    }

    // Depth-first, round-up child explored first (pushed last).
    const double v = sol.x[j];
    Node down{node.lower, node.upper, sol.objective_value, node.depth + 1};
    down.upper[j] = std::floor(v);
    Node up{std::move(node.lower), std::move(node.upper), sol.objective_value,
            node.depth + 1};
    up.lower[j] = std::ceil(v);
    stack.push_back(std::move(down));
    stack.push_back(std::move(up));
  }

  double open_bound = kInf;
  for (const Node& n : stack) open_bound = std::min(open_bound, n.parent_bound);

  out.branch_nodes_explored = nodes;
  if (hit_iteration_limit) {
    out.lp.status = SolveStatus::kIterationLimit;
    out.lp.simplex_iterations = total_iterations;
    return out;
  }
  if (have_incumbent) {
    out.lp = incumbent;
    out.lp.status = hit_node_limit ? SolveStatus::kNodeLimit : SolveStatus::kOptimal;
    out.integrality_gap_at_stop =
        hit_node_limit && open_bound < incumbent_obj ? incumbent_obj - open_bound : 0.0;
  } else {
    out.lp.status = hit_node_limit ? SolveStatus::kNodeLimit : SolveStatus::kInfeasible;
    out.integrality_gap_at_stop = hit_node_limit ? kInf : 0.0;
  }
  out.lp.simplex_iterations = total_iterations;
  return out;
}

}  // namespace relaylp
