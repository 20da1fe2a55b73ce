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
#include <set>
#include <stdexcept>
#include <utility>

#include "relaylp/receivers.hpp"

namespace relaylp {
namespace {

constexpr double kIntegralTol = 1e-6;

// Crash hint: start the bit variables at the direct-link hard decisions and
// the x components at the matching constellation signs.  Purely a warm
// start for the simplex crash basis; the optimum is unaffected.
SolverOptions hinted_options(const RelayFrame& frame, Complex h1,
                             const VariableLayout& lay) {
  SolverOptions opts;
  if (h1 == Complex{0.0, 0.0}) return opts;
  const std::vector<uint8_t> hard = detect_ml_direct(frame.r1, h1);
  opts.start_at_upper.assign(lay.num_vars(), 0);
  for (int k = 0; k < lay.num_symbols; ++k) {
    if (hard[2 * k] == 0) opts.start_at_upper[lay.x_im(k)] = 1;      // +1
    if (hard[2 * k + 1] == 0) opts.start_at_upper[lay.x_re(k)] = 1;  // +1
  }
  for (int b = 0; b < lay.num_bits; ++b)
    if (hard[b]) opts.start_at_upper[lay.f(b)] = 1;
  return opts;
}

std::array<Complex, 2> combiner_of(const std::vector<double>& x,
                                   const VariableLayout& lay) {
  return {Complex{x[lay.theta(0)], x[lay.theta(1)]},
          Complex{x[lay.theta(2)], x[lay.theta(3)]}};
}

std::vector<uint8_t> bits_from_f(const std::vector<double>& x,
                                 const VariableLayout& lay) {
  std::vector<uint8_t> bits(lay.num_bits);
  for (int b = 0; b < lay.num_bits; ++b) bits[b] = x[lay.f(b)] > 0.5 ? 1 : 0;
  return bits;
}

std::vector<uint8_t> bits_from_x(const std::vector<double>& x,
                                 const VariableLayout& lay) {
  std::vector<uint8_t> bits(2 * lay.num_symbols);
  for (int k = 0; k < lay.num_symbols; ++k) {
    bits[2 * k] = x[lay.x_im(k)] < 0.0 ? 1 : 0;
    bits[2 * k + 1] = x[lay.x_re(k)] < 0.0 ? 1 : 0;
  }
  return bits;
}

bool f_integral(const std::vector<double>& x, const VariableLayout& lay) {
  for (int b = 0; b < lay.num_bits; ++b) {
    const double v = x[lay.f(b)];
    if (std::min(v, 1.0 - v) > kIntegralTol) return false;
  }
  return true;
}

bool x_integral(const std::vector<double>& x, const VariableLayout& lay) {
  for (int k = 0; k < lay.num_symbols; ++k) {
    if (1.0 - std::abs(x[lay.x_re(k)]) > kIntegralTol) return false;
    if (1.0 - std::abs(x[lay.x_im(k)]) > kIntegralTol) return false;
  }
  return true;
}

void fill_from_lp(ReceiverReport& report, const LpSolution& sol,
                  const VariableLayout& lay) {
  report.objective_value = sol.objective_value;
  report.simplex_iterations += sol.simplex_iterations;
  report.status = sol.status;
  if (!sol.x.empty()) report.combiner_estimate = combiner_of(sol.x, lay);
}

// Full feasible point for the detection programs from integral bits: the x
// components follow the Gray equalities, t and tau sit exactly on their
// residuals, theta is taken as given.
std::vector<double> point_from_bits(const VariableLayout& lay, const RelayFrame& frame,
                                    Complex h1, std::span<const uint8_t> bits,
                                    const std::array<Complex, 2>& theta) {
  std::vector<double> point(lay.num_vars(), 0.0);
  point[lay.theta(0)] = theta[0].real();
  point[lay.theta(1)] = theta[0].imag();
  point[lay.theta(2)] = theta[1].real();
  point[lay.theta(3)] = theta[1].imag();
  for (int k = 0; k < lay.num_symbols; ++k) {
    const Complex x{1.0 - 2.0 * bits[2 * k + 1], 1.0 - 2.0 * bits[2 * k]};
    point[lay.x_re(k)] = x.real();
    point[lay.x_im(k)] = x.imag();
    const Complex e1 = h1 * x - frame.r1[k];
    point[lay.t_re(k)] = std::abs(e1.real()) + 1e-10;
    point[lay.t_im(k)] = std::abs(e1.imag()) + 1e-10;
    const Complex combined = std::conj(theta[0]) * frame.r1[k] +
                             std::conj(theta[1]) * frame.r2[k];
    const Complex e2 = x - combined;
    point[lay.tau_re(k)] = std::abs(e2.real()) + 1e-10;
    point[lay.tau_im(k)] = std::abs(e2.imag()) + 1e-10;
  }
  for (int b = 0; b < lay.num_bits; ++b) point[lay.f(b)] = bits[b];
  return point;
}

struct IntSolve {
  LpSolution sol;
  long nodes = 0;
};

// Exact integer solve of a detection program.  The LP relaxation comes
// first: an integral relaxed optimum certifies the MILP optimum with zero
// branching.  Otherwise branch-and-bound runs, seeded with the rounded
// relaxed point whenever that rounding is feasible (for coded programs:
// a codeword).
IntSolve solve_integer_program(const LpProblem& p, const VariableLayout& lay,
                               const RelayFrame& frame, Complex h1,
                               SolverOptions opts,
                               const ParityCheckMatrix* codeword_check) {
  IntSolve out;
  const LpSolution relaxed = solve_lp(p, opts);
  if (relaxed.status != SolveStatus::kOptimal) {
    out.sol = relaxed;
    return out;
  }
  if (f_integral(relaxed.x, lay)) {
    out.sol = relaxed;
    return out;
  }
  std::vector<uint8_t> rounded = bits_from_f(relaxed.x, lay);
  if (codeword_check == nullptr || check_codeword(*codeword_check, rounded))
    opts.incumbent_x =
        point_from_bits(lay, frame, h1, rounded, combiner_of(relaxed.x, lay));
  MilpSolution ms = solve_milp(p, opts);
  out.sol = std::move(ms.lp);
  out.sol.simplex_iterations += relaxed.simplex_iterations;
  out.nodes = ms.branch_nodes_explored;
  return out;
}

}  // namespace

ReceiverReport detect_uncoded(const RelayFrame& frame, Complex h1, DecodeMode mode,
                              double lambda_t, double lambda_tau, long node_limit) {
  auto [p, lay] = build_uncoded(frame, h1, lambda_t, lambda_tau,
                                mode == DecodeMode::kMilp);
  SolverOptions opts = hinted_options(frame, h1, lay);
  opts.node_limit = node_limit;
  ReceiverReport report;
  report.rows_at_final_solve = p.num_rows();
  if (mode == DecodeMode::kMilp) {
    IntSolve is = solve_integer_program(p, lay, frame, h1, opts, nullptr);
    fill_from_lp(report, is.sol, lay);
    report.branch_nodes = is.nodes;
    report.is_integral = true;
    if (!is.sol.x.empty()) report.decoded_bits = bits_from_f(is.sol.x, lay);
  } else {
    LpSolution sol = solve_lp(p, opts);
    fill_from_lp(report, sol, lay);
    report.is_integral = x_integral(sol.x, lay);
    report.decoded_bits = bits_from_x(sol.x, lay);
  }
  return report;
}

ReceiverReport decode_unified(const RelayFrame& frame, Complex h1,
                              const ParityCheckMatrix& h, DecodeMode mode,
                              double lambda_t, double lambda_tau, long node_limit) {
  const std::vector<double> gamma = direct_llr(frame.r1, h1, frame.noise_var);
  auto [p, lay] = build_unified(frame, h1, h, gamma, lambda_t, lambda_tau,
                                mode == DecodeMode::kMilp, /*include_parity=*/true);
  SolverOptions opts = hinted_options(frame, h1, lay);
  opts.node_limit = node_limit;
  ReceiverReport report;
  report.rows_at_final_solve = p.num_rows();
  if (mode == DecodeMode::kMilp) {
    IntSolve is = solve_integer_program(p, lay, frame, h1, opts, &h);
    fill_from_lp(report, is.sol, lay);
    report.branch_nodes = is.nodes;
    report.is_integral = true;
    if (!is.sol.x.empty()) report.decoded_bits = bits_from_f(is.sol.x, lay);
  } else {
    LpSolution sol = solve_lp(p, opts);
    fill_from_lp(report, sol, lay);
    report.is_integral = f_integral(sol.x, lay);
    report.decoded_bits = bits_from_f(sol.x, lay);
  }
  return report;
}

ReceiverReport decode_adaptive(const RelayFrame& frame, Complex h1,
                               const ParityCheckMatrix& h, DecodeMode mode,
                               double lambda_t, double lambda_tau,
                               const AdaptiveOptions& adaptive) {
  const std::vector<double> gamma = direct_llr(frame.r1, h1, frame.noise_var);
  auto [p, lay] = build_unified(frame, h1, h, gamma, lambda_t, lambda_tau,
                                mode == DecodeMode::kMilp, /*include_parity=*/false);
  SolverOptions opts = hinted_options(frame, h1, lay);
  opts.node_limit = adaptive.node_limit;

  ReceiverReport report;
  std::set<std::pair<int, std::vector<int>>> added;
  std::vector<double> fvec(lay.num_bits);
  std::vector<double> last_x;

  for (;;) {
    LpSolution sol;
    if (mode == DecodeMode::kMilp) {
      IntSolve is = solve_integer_program(p, lay, frame, h1, opts, &h);
      report.branch_nodes += is.nodes;
      sol = std::move(is.sol);
    } else {
      sol = solve_lp(p, opts);
    }
    report.simplex_iterations += sol.simplex_iterations;
    report.status = sol.status;
    report.rows_at_final_solve = p.num_rows();
    if (sol.status != SolveStatus::kOptimal) {
      // NodeLimit still carries the incumbent; other failures fall back to
      // the previous round.
      report.truncated = true;
      if (sol.x.empty() && !last_x.empty()) sol.x = last_x;
      if (!sol.x.empty()) {
        report.objective_value = sol.objective_value;
        report.decoded_bits = bits_from_f(sol.x, lay);
        report.combiner_estimate = combiner_of(sol.x, lay);
      }
      return report;
    }
    last_x = sol.x;
    report.objective_value = sol.objective_value;
    report.combiner_estimate = combiner_of(sol.x, lay);

    for (int b = 0; b < lay.num_bits; ++b) fvec[b] = sol.x[lay.f(b)];
    // The S2 hard-decision variant searches on rounded bits; the fractional
    // point separates strictly better and is the default for relaxed mode.
    if (mode == DecodeMode::kMilp || adaptive.hard_decision_cut_search)
      for (double& v : fvec) v = v > 0.5 ? 1.0 : 0.0;

    std::vector<ParityCut> cuts = find_violated_cuts(h, fvec, adaptive.cut_tol);
    std::vector<SparseRow> rows;
    long fresh = 0;
    for (ParityCut& cut : cuts) {
      if (!added.emplace(cut.check, cut.subset_f).second) continue;
      rows.push_back(parity_cut_row(cut, h, lay));
      ++fresh;
    }
    if (fresh == 0) {
      report.is_integral = f_integral(sol.x, lay);
      report.decoded_bits = bits_from_f(sol.x, lay);
      return report;
    }
    if (report.cut_rounds >= adaptive.round_limit) {
      report.truncated = true;
      report.is_integral = f_integral(sol.x, lay);
      report.decoded_bits = bits_from_f(sol.x, lay);
      return report;
    }
    p = append_rows(p, rows);
    report.cuts_added += fresh;
    ++report.cut_rounds;
  }
}

}  // namespace relaylp
