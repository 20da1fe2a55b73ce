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

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "relaylp/channel.hpp"
#include "relaylp/ldpc.hpp"
#include "relaylp/lp.hpp"

namespace relaylp {

// --- symbol-wise maximum-likelihood baselines ------------------------------

// Nearest 4-QAM point to r1[k]/h1 per symbol.  Throws on h1 == 0.
std::vector<uint8_t> detect_ml_direct(std::span<const Complex> r1, Complex h1);

// Genie bound: per-symbol argmin of |h1 x - r1|^2 + |h2 x - r2|^2.
std::vector<uint8_t> detect_ml_all_links(std::span<const Complex> r1,
                                         std::span<const Complex> r2, Complex h1,
                                         Complex h2);

// Decision feedback: detect on the direct link, least-squares estimate h2
// from the decisions, then detect again with both links.  h2_estimate may
// be null.
std::vector<uint8_t> detect_df_chanest(std::span<const Complex> r1,
                                       std::span<const Complex> r2, Complex h1,
                                       Complex* h2_estimate = nullptr);

// --- LP / MILP formulation builders -----------------------------------------

// Dense index map into the optimization variable vector.  Layout order:
// x_re[N], x_im[N], t_re[N], t_im[N], tau_re[N], tau_im[N], theta[4],
// f[2N] (bit variables present in the unified builder and in the
// integer-mode uncoded builder, absent in the uncoded relaxation).
struct VariableLayout {
  int num_symbols = 0;
  int num_bits = 0;
  double lambda_t = 1.0;
  double lambda_tau = 1.0;

  int x_re(int k) const { return k; }
  int x_im(int k) const { return num_symbols + k; }
  int t_re(int k) const { return 2 * num_symbols + k; }
  int t_im(int k) const { return 3 * num_symbols + k; }
  int tau_re(int k) const { return 4 * num_symbols + k; }
  int tau_im(int k) const { return 5 * num_symbols + k; }
  int theta(int i) const { return 6 * num_symbols + i; }  // re1, im1, re2, im2
  int f(int n) const { return 6 * num_symbols + 4 + n; }
  int num_vars() const { return 6 * num_symbols + 4 + num_bits; }
};

// Joint detection program on one frame with the combiner theta and
// per-symbol residual bounds t, tau; each modulus constraint becomes a pair
// of <= rows.  integer=false is the box relaxation (6N+4 variables, 8N
// rows); integer=true adds binary Gray-bit variables b with
// x-component = 1 - 2b (8N+4 variables, 10N rows).
std::pair<LpProblem, VariableLayout> build_uncoded(const RelayFrame& frame,
                                                   Complex h1, double lambda_t,
                                                   double lambda_tau, bool integer);

// Unified detection-decoding program: the uncoded rows plus Gray equalities,
// the LLR cost on the bits, bit boxes [0,1] (binary when integer), and,
// when include_parity, every parity inequality of H.
std::pair<LpProblem, VariableLayout> build_unified(
    const RelayFrame& frame, Complex h1, const ParityCheckMatrix& h,
    std::span<const double> gamma, double lambda_t, double lambda_tau,
    bool integer, bool include_parity);

// The parity inequality of `cut` as a row over layout bit variables.
SparseRow parity_cut_row(const ParityCut& cut, const ParityCheckMatrix& h,
                         const VariableLayout& layout);

// --- receivers --------------------------------------------------------------

enum class DecodeMode { kMilp, kRelaxed };

struct ReceiverReport {
  std::vector<uint8_t> decoded_bits;
  double objective_value = 0.0;
  bool is_integral = false;
  long cuts_added = 0;
  long cut_rounds = 0;
  long simplex_iterations = 0;
  long branch_nodes = 0;
  int rows_at_final_solve = 0;
  bool truncated = false;
  SolveStatus status = SolveStatus::kOptimal;
  std::array<Complex, 2> combiner_estimate{};
};

struct AdaptiveOptions {
  int round_limit = 100;
  double cut_tol = 1e-6;
  // Branch-and-bound cap per integer solve; at the cap the best incumbent
  // found so far is used (status kNodeLimit, truncated flag set).
  long node_limit = 1000000;
  // S2/S3 as written: search cuts on hard-decided bits.  Off by default in
  // relaxed mode, where the fractional point separates strictly better.
  bool hard_decision_cut_search = false;
};

// Full unified program with every parity inequality materialized.
ReceiverReport decode_unified(const RelayFrame& frame, Complex h1,
                              const ParityCheckMatrix& h, DecodeMode mode,
                              double lambda_t = 1.0, double lambda_tau = 1.0,
                              long node_limit = 1000000);

// Adaptive cutting-plane receiver: start without parity rows, solve,
// separate, append the violated rows, repeat until clean.
ReceiverReport decode_adaptive(const RelayFrame& frame, Complex h1,
                               const ParityCheckMatrix& h, DecodeMode mode,
                               double lambda_t = 1.0, double lambda_tau = 1.0,
                               const AdaptiveOptions& opts = {});

// Uncoded joint receiver (box relaxation or MILP over the Gray bits).
ReceiverReport detect_uncoded(const RelayFrame& frame, Complex h1, DecodeMode mode,
                              double lambda_t = 1.0, double lambda_tau = 1.0,
                              long node_limit = 1000000);

struct WorkSummary {
  long simplex_iterations = 0;
  long branch_nodes = 0;
  int rows_at_final_solve = 0;
  long cuts_added = 0;
};

WorkSummary estimate_work(const ReceiverReport& report);

}  // namespace relaylp
