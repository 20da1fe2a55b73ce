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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relaylp/harness.hpp"

namespace {

using namespace relaylp;

int cmd_gen_code(int n, int col_weight, int row_weight, uint64_t seed,
                 const std::string& out) {
  ParityCheckMatrix h = gallager_construct(n, col_weight, row_weight, seed);
  save_alist_file(h, out);
  std::cout << "wrote " << out << ": " << h.n_cols() << " x " << h.n_rows()
            << ", ones = " << h.total_ones()
            << ", parity inequalities = " << count_parity_inequalities(h) << "\n";
  return 0;
}

int cmd_ber_sweep(const std::string& config_path, const std::string& out,
                  const std::string& plot_out, std::optional<uint64_t> seed,
                  std::optional<int> jobs, std::optional<int> frames,
                  std::optional<int> target_errors, bool timing) {
  ExperimentConfig cfg = parse_config_file(config_path);
  if (seed) cfg.seed = *seed;
  if (jobs) cfg.jobs = *jobs;
  if (frames) cfg.frames_per_point = *frames;
  if (target_errors) cfg.target_errors = *target_errors;
  if (timing) cfg.timing = true;

  SweepResult result = run_sweep(cfg);
  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot write " + out);
  emit_csv(result, os);
  if (!plot_out.empty()) {
    std::ofstream ps(plot_out);
    if (!ps) throw std::runtime_error("cannot write " + plot_out);
    emit_plotdata(result, ps);
  }
  std::cout << "wrote " << out << " (code_spec = " << cfg.code_spec.to_string()
            << ", seed = " << cfg.seed << ")\n";
  return 0;
}

int cmd_complexity(const std::vector<int>& lengths, const std::string& alist,
                   const std::string& out, int measure_frames, int measure_max_len) {
  std::vector<CodeSpec> specs;
  if (!alist.empty()) {
    CodeSpec s;
    s.kind = CodeSpec::Kind::kAlist;
    s.alist_path = alist;
    specs.push_back(s);
  }
  for (int len : lengths) {
    CodeSpec s;
    s.kind = CodeSpec::Kind::kGallager;
    s.length = len;
    s.col_weight = 3;
    s.row_weight = 6;
    specs.push_back(s);
  }
  ComplexityOptions opts;
  opts.measure_frames = measure_frames;
  opts.measure_max_length = measure_max_len;
  const std::string text = complexity_table_text(complexity_report(specs, opts));
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << text;
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_decode_one(const std::string& alist, double snr_db, const std::string& receiver,
                   uint64_t seed) {
  ParityCheckMatrix h = load_alist_file(alist);
  Encoder enc = systematize(h);
  FrameParams params;
  params.noise_var = noise_var_for_snr_db(snr_db, params.sigma1_sq);
  CounterRng rng(seed, 0);
  RelayFrame frame = make_frame(&enc, rng, params);

  ReceiverReport rep;
  if (receiver == "unified-lp") {
    rep = decode_unified(frame, frame.channel.h1, h, DecodeMode::kRelaxed);
  } else if (receiver == "unified-milp") {
    rep = decode_unified(frame, frame.channel.h1, h, DecodeMode::kMilp);
  } else if (receiver == "adaptive-lp") {
    rep = decode_adaptive(frame, frame.channel.h1, h, DecodeMode::kRelaxed);
  } else if (receiver == "adaptive-milp") {
    rep = decode_adaptive(frame, frame.channel.h1, h, DecodeMode::kMilp);
  } else if (receiver == "uncoded-lp") {
    rep = detect_uncoded(frame, frame.channel.h1, DecodeMode::kRelaxed);
  } else if (receiver == "uncoded-milp") {
    rep = detect_uncoded(frame, frame.channel.h1, DecodeMode::kMilp);
  } else {
    throw std::invalid_argument("decode-one: unsupported receiver " + receiver);
  }

  long errors = 0;
  for (size_t i = 0; i < frame.tx_bits.size() && i < rep.decoded_bits.size(); ++i)
    errors += rep.decoded_bits[i] != frame.tx_bits[i] ? 1 : 0;

  std::cout << "receiver = " << receiver << "\n";
  std::cout << "status = " << to_string(rep.status) << "\n";
  std::cout << "objective_value = " << rep.objective_value << "\n";
  std::cout << "is_integral = " << (rep.is_integral ? 1 : 0) << "\n";
  std::cout << "cuts_added = " << rep.cuts_added << "\n";
  std::cout << "cut_rounds = " << rep.cut_rounds << "\n";
  std::cout << "simplex_iterations = " << rep.simplex_iterations << "\n";
  std::cout << "branch_nodes = " << rep.branch_nodes << "\n";
  std::cout << "rows_at_final_solve = " << rep.rows_at_final_solve << "\n";
  std::cout << "truncated = " << (rep.truncated ? 1 : 0) << "\n";
  std::cout << "combiner_estimate = (" << rep.combiner_estimate[0].real() << ","
            << rep.combiner_estimate[0].imag() << ") (" << rep.combiner_estimate[1].real()
            << "," << rep.combiner_estimate[1].imag() << ")\n";
  std::cout << "bit_errors = " << errors << "\n";
  std::cout << "bits = " << frame.tx_bits.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LP/MILP joint detection-decoding receivers for a single-relay "
               "decode-and-forward network"};
  app.require_subcommand(1);

  // gen-code
  auto* gen = app.add_subcommand("gen-code", "construct a regular LDPC code, write alist");
  int gen_n = 0, gen_col = 0, gen_row = 0;
  uint64_t gen_seed = 7;
  std::string gen_out;
  gen->add_option("n", gen_n, "code length")->required();
  gen->add_option("col_weight", gen_col, "column weight")->required();
  gen->add_option("row_weight", gen_row, "row weight")->required();
  gen->add_option("seed", gen_seed, "construction seed")->required();
  gen->add_option("out", gen_out, "output alist path")->required();

  // ber-sweep
  auto* sweep = app.add_subcommand("ber-sweep", "run a Monte-Carlo BER sweep from a config");
  std::string sweep_cfg, sweep_out = "sweep.csv", sweep_plot;
  std::optional<uint64_t> sweep_seed;
  std::optional<int> sweep_jobs, sweep_frames, sweep_errors;
  bool sweep_timing = false;
  sweep->add_option("config", sweep_cfg, "config file (key = value)")->required();
  sweep->add_option("out", sweep_out, "output CSV path");
  sweep->add_option("--plotdata", sweep_plot, "also write plot blocks to this path");
  sweep->add_option("--seed", sweep_seed, "override config seed");
  sweep->add_option("--jobs", sweep_jobs, "concurrent frames");
  sweep->add_option("--frames", sweep_frames, "override frames_per_point");
  sweep->add_option("--target-errors", sweep_errors, "override target_errors");
  sweep->add_flag("--timing", sweep_timing, "record wall time in the CSV");

  // complexity
  auto* cx = app.add_subcommand("complexity", "formulation size and cut-count table");
  std::vector<int> cx_lengths{256, 512, 1024, 1536, 2048};
  std::string cx_alist, cx_out;
  int cx_frames = 3, cx_maxlen = 512;
  cx->add_option("--lengths", cx_lengths, "code lengths for the (3,6) construction");
  cx->add_option("--alist", cx_alist, "also report a code loaded from alist");
  cx->add_option("--out", cx_out, "write the table to a file instead of stdout");
  cx->add_option("--measure-frames", cx_frames, "frames for the measured short sweep");
  cx->add_option("--measure-max-len", cx_maxlen,
                 "skip measurement above this code length");

  // decode-one
  auto* one = app.add_subcommand("decode-one", "decode a single random frame, print the report");
  std::string one_alist, one_rx = "adaptive-lp";
  double one_snr = 8.0;
  uint64_t one_seed = 1;
  one->add_option("alist", one_alist, "parity check matrix (alist)")->required();
  one->add_option("snr_db", one_snr, "SNR in dB")->required();
  one->add_option("receiver", one_rx, "receiver id")->required();
  one->add_option("seed", one_seed, "frame seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  try {
    if (*gen) return cmd_gen_code(gen_n, gen_col, gen_row, gen_seed, gen_out);
    if (*sweep)
      return cmd_ber_sweep(sweep_cfg, sweep_out, sweep_plot, sweep_seed, sweep_jobs,
                           sweep_frames, sweep_errors, sweep_timing);
    if (*cx) return cmd_complexity(cx_lengths, cx_alist, cx_out, cx_frames, cx_maxlen);
    if (*one) return cmd_decode_one(one_alist, one_snr, one_rx, one_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
