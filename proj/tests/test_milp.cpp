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

#include <cmath>

#include "doctest.h"
#include "relaylp/lp.hpp"
#include "relaylp/rng.hpp"
#include "support/oracles.hpp"

using namespace relaylp;

TEST_CASE("three-point feasible set ties toward round-up of the lowest index") {
  LpProblem p(2);
  p.set_objective(0, -1.0);
  p.set_objective(1, -1.0);
  for (int j = 0; j < 2; ++j) {
    p.set_bounds(j, 0.0, 1.0);
    p.mark_integer(j);
  }
  std::vector<int> cols{0, 1};
  std::vector<double> vals{1.0, 1.0};
  p.add_row(cols, vals, RowSense::kLessEqual, 1.0);

  const MilpSolution sol = solve_milp(p);
  REQUIRE(sol.lp.status == SolveStatus::kOptimal);
  CHECK(sol.lp.objective_value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(sol.lp.x[0] + sol.lp.x[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("infeasible integer program") {
  LpProblem p(1);
  p.set_bounds(0, 0.0, 1.0);
  p.mark_integer(0);
  std::vector<int> cols{0};
  std::vector<double> vals{2.0};
  p.add_row(cols, vals, RowSense::kEqual, 1.0);  // x = 1/2 has no integer point
  CHECK(solve_milp(p).lp.status == SolveStatus::kInfeasible);
}

TEST_CASE("relaxation dominance") {
  CounterRng rng(31, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const LpProblem p = testing::random_binary_milp(rng, 8);
    const MilpSolution mip = solve_milp(p);
    const LpSolution relax = solve_lp(p);
    if (mip.lp.status == SolveStatus::kOptimal) {
      REQUIRE(relax.status == SolveStatus::kOptimal);
      CHECK(mip.lp.objective_value >= relax.objective_value - 1e-7);
    }
  }
}

TEST_CASE("exhaustive enumeration agreement on random binary programs") {
  CounterRng rng(77, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const LpProblem p = testing::random_binary_milp(rng, 9);
    const MilpSolution mip = solve_milp(p);
    const auto oracle = testing::enumerate_milp(p);
    REQUIRE(mip.lp.status == oracle.status);
    if (oracle.status == SolveStatus::kOptimal) {
      CHECK(mip.lp.objective_value == doctest::Approx(oracle.objective).epsilon(1e-6));
      for (int j = 0; j < p.num_vars(); ++j)
        if (p.integer_mask()[j])
          CHECK(std::abs(mip.lp.x[j] - std::round(mip.lp.x[j])) <= 1e-6);
    }
  }
}

TEST_CASE("node limit reported distinctly") {
  // A knapsack-ish instance with many incomparable solutions.
  const int n = 14;
  LpProblem p(n);
  std::vector<int> cols(n);
  std::vector<double> vals(n);
  for (int j = 0; j < n; ++j) {
    p.set_bounds(j, 0.0, 1.0);
    p.mark_integer(j);
    p.set_objective(j, -(1.0 + 0.01 * j));
    cols[j] = j;
    vals[j] = 1.0 + 0.013 * (n - j);
  }
  p.add_row(cols, vals, RowSense::kLessEqual, 0.5 * n);
  SolverOptions opts;
  opts.node_limit = 3;
  const MilpSolution sol = solve_milp(p, opts);
  CHECK(sol.lp.status == SolveStatus::kNodeLimit);
  CHECK(sol.branch_nodes_explored <= 3);

  const MilpSolution full = solve_milp(p);
  CHECK(full.lp.status == SolveStatus::kOptimal);
  CHECK(full.integrality_gap_at_stop == 0.0);
}

TEST_CASE("milp requires an integer-marked variable") {
  LpProblem p(1);
  p.set_bounds(0, 0.0, 1.0);
  CHECK_THROWS_AS(solve_milp(p), std::invalid_argument);
}
