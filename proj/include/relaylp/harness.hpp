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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relaylp/channel.hpp"
#include "relaylp/ldpc.hpp"
#include "relaylp/receivers.hpp"

namespace relaylp {

// What is transmitted per coherence block: either 2N random bits or one
// codeword of an LDPC code.
struct CodeSpec {
  enum class Kind { kUncoded, kGallager, kAlist };
  Kind kind = Kind::kUncoded;
  int uncoded_symbols = 20;
  int length = 0, col_weight = 0, row_weight = 0;
  uint64_t code_seed = 7;
  std::string alist_path;

  // "uncoded N=20" | "gallager 128 2 8 [seed]" | "alist path"
  static CodeSpec parse(const std::string& text);
  std::string to_string() const;
};

struct ExperimentConfig {
  std::vector<double> snr_grid_db;
  std::vector<std::string> receivers;
  int frames_per_point = 10000;  // hard cap per SNR point
  int target_errors = 200;       // early stop once every receiver has this many
  CodeSpec code_spec;
  double sigma1_sq = 0.5;
  double sigma2_sq = 1.0;
  double lambda_t = 1.0;
  double lambda_tau = 1.0;
  uint64_t seed = 1;
  int jobs = 1;
  bool timing = false;  // off keeps the CSV byte-identical across reruns
  // Branch-and-bound cap per integer solve inside sweep receivers; capped
  // frames decode from the best incumbent found.
  long milp_node_limit = 5000;
};

// Flat "key = value" text; keys match the field names above; unknown keys
// are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct PointStats {
  long frames = 0;
  long bits = 0;
  long errors = 0;
  long cuts = 0;
  long rounds = 0;
  long iterations = 0;
  long nodes = 0;
  double seconds = 0.0;

  double ber() const { return bits > 0 ? static_cast<double>(errors) / bits : 0.0; }
  double mean(long total) const {
    return frames > 0 ? static_cast<double>(total) / frames : 0.0;
  }
};

struct SweepResult {
  std::vector<std::string> receivers;
  std::vector<double> snr_grid_db;
  // stats[receiver][snr point]
  std::vector<std::vector<PointStats>> stats;
};

// Known receiver identifiers:
//   direct-ml, all-links-ml, relay-chest-ml,
//   uncoded-lp, uncoded-milp, unified-lp, unified-milp,
//   adaptive-lp, adaptive-lp-hd, adaptive-milp.
// Throws on unknown ids or a code/receiver mismatch.
SweepResult run_sweep(const ExperimentConfig& config);

// Columns: receiver, snr_db, bits, errors, ber, cuts, rounds, iters, nodes,
// seconds.  LF endings, '.' decimals.
void emit_csv(const SweepResult& result, std::ostream& os);
// One whitespace-separated block per receiver for plotting tools.
void emit_plotdata(const SweepResult& result, std::ostream& os);

struct ComplexityRow {
  int code_length = 0;
  uint64_t parity_inequalities = 0;
  long unified_total_rows = 0;
  int adaptive_vars = 0;
  long adaptive_base_rows = 0;
  int uncoded_vars = 0;
  long uncoded_rows = 0;
  // Short adaptive-LP sweep measurements (0 when not measured).
  double mean_cuts = 0.0;
  double mean_iterations = 0.0;
};

struct ComplexityOptions {
  int measure_frames = 3;
  int measure_max_length = 512;  // larger codes are counted, not solved
  double measure_snr_db = 8.0;
  uint64_t seed = 1;
};

// Builds each code, assembles the actual programs and reports their exact
// dimensions plus the parity-inequality counts.
std::vector<ComplexityRow> complexity_report(const std::vector<CodeSpec>& specs,
                                             const ComplexityOptions& opts = {});
std::string complexity_table_text(const std::vector<ComplexityRow>& rows);

// Exhaustive test oracle for the unified MILP: enumerate every codeword,
// fix f and x, take the t part directly from the residuals, solve the small
// LP over (theta, tau) alone, add the LLR cost, keep the minimizer (ties to
// lexicographically smallest bits).  Requires message_length <= 16.
std::pair<std::vector<uint8_t>, double> brute_force_oracle(
    const RelayFrame& frame, Complex h1, const ParityCheckMatrix& h,
    double lambda_t, double lambda_tau);

}  // namespace relaylp
