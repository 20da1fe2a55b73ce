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

#include "relaylp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace relaylp {
namespace {

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& key) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("config: bad number for " + key);
  return v;
}

long parse_long(const std::string& s, const std::string& key) {
  size_t pos = 0;
  long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("config: bad integer for " + key);
  return v;
}

}  // namespace

CodeSpec CodeSpec::parse(const std::string& text) {
  auto tokens = split_tokens(text);
  if (tokens.empty()) throw std::invalid_argument("code_spec: empty");
  CodeSpec spec;
  if (tokens[0] == "uncoded") {
    spec.kind = Kind::kUncoded;
    if (tokens.size() > 2) throw std::invalid_argument("code_spec: too many tokens");
    if (tokens.size() == 2) {
      std::string t = tokens[1];
      if (t.rfind("N=", 0) == 0) t = t.substr(2);
      spec.uncoded_symbols = static_cast<int>(parse_long(t, "code_spec"));
    }
  } else if (tokens[0] == "gallager") {
    if (tokens.size() != 4 && tokens.size() != 5)
      throw std::invalid_argument("code_spec: gallager needs length col_weight row_weight [seed]");
    spec.kind = Kind::kGallager;
    spec.length = static_cast<int>(parse_long(tokens[1], "code_spec"));
    spec.col_weight = static_cast<int>(parse_long(tokens[2], "code_spec"));
    spec.row_weight = static_cast<int>(parse_long(tokens[3], "code_spec"));
    if (tokens.size() == 5)
      spec.code_seed = static_cast<uint64_t>(parse_long(tokens[4], "code_spec"));
  } else if (tokens[0] == "alist") {
    if (tokens.size() != 2) throw std::invalid_argument("code_spec: alist needs a path");
    spec.kind = Kind::kAlist;
    spec.alist_path = tokens[1];
  } else {
    throw std::invalid_argument("code_spec: unknown kind '" + tokens[0] + "'");
  }
  return spec;
}

std::string CodeSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kUncoded: os << "uncoded N=" << uncoded_symbols; break;
    case Kind::kGallager:
      os << "gallager " << length << " " << col_weight << " " << row_weight << " "
         << code_seed;
      break;
    case Kind::kAlist: os << "alist " << alist_path; break;
  }
  return os.str();
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "snr_grid_db") {
      cfg.snr_grid_db.clear();
      for (const auto& t : split_tokens(value))
        cfg.snr_grid_db.push_back(parse_double(t, key));
    } else if (key == "receivers") {
      cfg.receivers = split_tokens(value);
    } else if (key == "frames_per_point") {
      cfg.frames_per_point = static_cast<int>(parse_long(value, key));
    } else if (key == "target_errors") {
      cfg.target_errors = static_cast<int>(parse_long(value, key));
    } else if (key == "code_spec") {
      cfg.code_spec = CodeSpec::parse(value);
    } else if (key == "sigma1_sq") {
      cfg.sigma1_sq = parse_double(value, key);
    } else if (key == "sigma2_sq") {
      cfg.sigma2_sq = parse_double(value, key);
    } else if (key == "lambda_t") {
      cfg.lambda_t = parse_double(value, key);
    } else if (key == "lambda_tau") {
      cfg.lambda_tau = parse_double(value, key);
    } else if (key == "seed") {
      cfg.seed = static_cast<uint64_t>(parse_long(value, key));
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(parse_long(value, key));
    } else if (key == "milp_node_limit") {
      cfg.milp_node_limit = parse_long(value, key);
    } else if (key == "timing") {
      if (value == "on" || value == "true" || value == "1") {
        cfg.timing = true;
      } else if (value == "off" || value == "false" || value == "0") {
        cfg.timing = false;
      } else {
        throw std::invalid_argument("config: bad boolean for timing");
      }
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

struct SweepContext {
  const ParityCheckMatrix* h = nullptr;
  double lambda_t = 1.0;
  double lambda_tau = 1.0;
  long milp_node_limit = 5000;
};

bool receiver_needs_code(const std::string& id) {
  return id.rfind("unified-", 0) == 0 || id.rfind("adaptive-", 0) == 0;
}

ReceiverReport run_receiver(const std::string& id, const RelayFrame& frame,
                            const SweepContext& ctx) {
  const Complex h1 = frame.channel.h1;
  const Complex h2 = frame.channel.h2;
  ReceiverReport report;
  if (id == "direct-ml") {
    report.decoded_bits = detect_ml_direct(frame.r1, h1);
  } else if (id == "all-links-ml") {
    report.decoded_bits = detect_ml_all_links(frame.r1, frame.r2, h1, h2);
  } else if (id == "relay-chest-ml") {
    report.decoded_bits = detect_df_chanest(frame.r1, frame.r2, h1);
  } else if (id == "uncoded-lp") {
    report = detect_uncoded(frame, h1, DecodeMode::kRelaxed, ctx.lambda_t, ctx.lambda_tau);
  } else if (id == "uncoded-milp") {
    report = detect_uncoded(frame, h1, DecodeMode::kMilp, ctx.lambda_t, ctx.lambda_tau,
                            ctx.milp_node_limit);
  } else if (id == "unified-lp") {
    report = decode_unified(frame, h1, *ctx.h, DecodeMode::kRelaxed, ctx.lambda_t,
                            ctx.lambda_tau);
  } else if (id == "unified-milp") {
    report = decode_unified(frame, h1, *ctx.h, DecodeMode::kMilp, ctx.lambda_t,
                            ctx.lambda_tau, ctx.milp_node_limit);
  } else if (id == "adaptive-lp") {
    report = decode_adaptive(frame, h1, *ctx.h, DecodeMode::kRelaxed, ctx.lambda_t,
                             ctx.lambda_tau);
  } else if (id == "adaptive-lp-hd") {
    AdaptiveOptions opts;
    opts.hard_decision_cut_search = true;
    report = decode_adaptive(frame, h1, *ctx.h, DecodeMode::kRelaxed, ctx.lambda_t,
                             ctx.lambda_tau, opts);
  } else if (id == "adaptive-milp") {
    AdaptiveOptions opts;
    opts.node_limit = ctx.milp_node_limit;
    report = decode_adaptive(frame, h1, *ctx.h, DecodeMode::kMilp, ctx.lambda_t,
                             ctx.lambda_tau, opts);
  } else {
    throw std::invalid_argument("unknown receiver id: " + id);
  }
  return report;
}

struct FrameOutcome {
  long bits = 0, errors = 0;
  long cuts = 0, rounds = 0, iterations = 0, nodes = 0;
  double seconds = 0.0;
};

// Frames are processed in fixed blocks so that the early-stop decision (and
// therefore the output) does not depend on the number of worker threads.
constexpr int kStopCheckBlock = 32;

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
  if (cfg.snr_grid_db.empty()) throw std::invalid_argument("run_sweep: empty SNR grid");
  if (cfg.receivers.empty()) throw std::invalid_argument("run_sweep: no receivers");
  if (cfg.frames_per_point < 1)
    throw std::invalid_argument("run_sweep: frames_per_point must be >= 1");
  if (cfg.sigma1_sq >= cfg.sigma2_sq)
    std::cerr << "warning: sigma1_sq >= sigma2_sq; the relay link is usually the "
                 "stronger one\n";

  std::optional<ParityCheckMatrix> h;
  std::optional<Encoder> encoder;
  if (cfg.code_spec.kind == CodeSpec::Kind::kGallager) {
    h = gallager_construct(cfg.code_spec.length, cfg.code_spec.col_weight,
                           cfg.code_spec.row_weight, cfg.code_spec.code_seed);
  } else if (cfg.code_spec.kind == CodeSpec::Kind::kAlist) {
    h = load_alist_file(cfg.code_spec.alist_path);
  }
  if (h) encoder = systematize(*h);
  for (const auto& id : cfg.receivers)
    if (receiver_needs_code(id) && !h)
      throw std::invalid_argument("receiver " + id + " needs an LDPC code_spec");

  SweepContext ctx;
  ctx.h = h ? &*h : nullptr;
  ctx.lambda_t = cfg.lambda_t;
  ctx.lambda_tau = cfg.lambda_tau;
  ctx.milp_node_limit = cfg.milp_node_limit;

  const int num_rx = static_cast<int>(cfg.receivers.size());
  SweepResult result;
  result.receivers = cfg.receivers;
  result.snr_grid_db = cfg.snr_grid_db;
  result.stats.assign(num_rx, std::vector<PointStats>(cfg.snr_grid_db.size()));

  const int jobs = std::max(1, cfg.jobs);

  for (size_t si = 0; si < cfg.snr_grid_db.size(); ++si) {
    FrameParams params;
    params.uncoded_symbols = cfg.code_spec.uncoded_symbols;
    params.sigma1_sq = cfg.sigma1_sq;
    params.sigma2_sq = cfg.sigma2_sq;
    params.noise_var = noise_var_for_snr_db(cfg.snr_grid_db[si], cfg.sigma1_sq);

    long frame_index = 0;
    bool done = false;
    while (!done && frame_index < cfg.frames_per_point) {
      const int block = static_cast<int>(
          std::min<long>(kStopCheckBlock, cfg.frames_per_point - frame_index));
      std::vector<std::vector<FrameOutcome>> outcomes(
          block, std::vector<FrameOutcome>(num_rx));

      auto worker = [&](int begin, int end) {
        for (int b = begin; b < end; ++b) {
          const uint64_t stream =
              (static_cast<uint64_t>(si) << 40) | static_cast<uint64_t>(frame_index + b);
          CounterRng rng(cfg.seed, stream);
          const RelayFrame frame =
              make_frame(encoder ? &*encoder : nullptr, rng, params);
          for (int r = 0; r < num_rx; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            ReceiverReport rep = run_receiver(cfg.receivers[r], frame, ctx);
            FrameOutcome& oc = outcomes[b][r];
            if (cfg.timing) {
              oc.seconds =
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
            }
            oc.bits = static_cast<long>(frame.tx_bits.size());
            for (size_t i = 0; i < frame.tx_bits.size(); ++i)
              oc.errors += (i < rep.decoded_bits.size() &&
                            rep.decoded_bits[i] != frame.tx_bits[i])
                               ? 1
                               : 0;
            oc.cuts = rep.cuts_added;
            oc.rounds = rep.cut_rounds;
            oc.iterations = rep.simplex_iterations;
            oc.nodes = rep.branch_nodes;
          }
        }
      };

      if (jobs == 1 || block == 1) {
        worker(0, block);
      } else {
        std::vector<std::thread> threads;
        const int per = (block + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
          const int begin = t * per;
          const int end = std::min(block, begin + per);
          if (begin >= end) break;
          threads.emplace_back(worker, begin, end);
        }
        for (auto& th : threads) th.join();
      }

      for (int b = 0; b < block; ++b) {
        for (int r = 0; r < num_rx; ++r) {
          PointStats& ps = result.stats[r][si];
          const FrameOutcome& oc = outcomes[b][r];
          ps.frames += 1;
          ps.bits += oc.bits;
          ps.errors += oc.errors;
          ps.cuts += oc.cuts;
          ps.rounds += oc.rounds;
          ps.iterations += oc.iterations;
          ps.nodes += oc.nodes;
          ps.seconds += oc.seconds;
        }
      }
      frame_index += block;

      done = true;
      for (int r = 0; r < num_rx; ++r)
        if (result.stats[r][si].errors < cfg.target_errors) done = false;
    }
  }
  return result;
}

void emit_csv(const SweepResult& result, std::ostream& os) {
  os << "receiver,snr_db,bits,errors,ber,cuts,rounds,iters,nodes,seconds\n";
  char buf[256];
  for (size_t r = 0; r < result.receivers.size(); ++r) {
    for (size_t s = 0; s < result.snr_grid_db.size(); ++s) {
      const PointStats& ps = result.stats[r][s];
      std::snprintf(buf, sizeof(buf), "%s,%.4g,%ld,%ld,%.8e,%.6g,%.6g,%.6g,%.6g,%.3f\n",
                    result.receivers[r].c_str(), result.snr_grid_db[s], ps.bits,
                    ps.errors, ps.ber(), ps.mean(ps.cuts), ps.mean(ps.rounds),
                    ps.mean(ps.iterations), ps.mean(ps.nodes), ps.seconds);
      os << buf;
    }
  }
}

void emit_plotdata(const SweepResult& result, std::ostream& os) {
  char buf[256];
  for (size_t r = 0; r < result.receivers.size(); ++r) {
    os << "# " << result.receivers[r] << "\n";
    os << "# snr_db ber bits errors\n";
    for (size_t s = 0; s < result.snr_grid_db.size(); ++s) {
      const PointStats& ps = result.stats[r][s];
      std::snprintf(buf, sizeof(buf), "%.4g %.8e %ld %ld\n", result.snr_grid_db[s],
                    ps.ber(), ps.bits, ps.errors);
      os << buf;
    }
    os << "\n";
  }
}

std::vector<ComplexityRow> complexity_report(const std::vector<CodeSpec>& specs,
                                             const ComplexityOptions& opts) {
  std::vector<ComplexityRow> rows;
  for (const CodeSpec& spec : specs) {
    if (spec.kind == CodeSpec::Kind::kUncoded)
      throw std::invalid_argument("complexity_report: needs LDPC code specs");
    ParityCheckMatrix h = spec.kind == CodeSpec::Kind::kGallager
                              ? gallager_construct(spec.length, spec.col_weight,
                                                   spec.row_weight, spec.code_seed)
                              : load_alist_file(spec.alist_path);
    Encoder enc = systematize(h);

    ComplexityRow row;
    row.code_length = h.n_cols();
    row.parity_inequalities = count_parity_inequalities(h);

    // Assemble the actual programs on a deterministic frame and read off
    // their dimensions.
    FrameParams params;
    params.sigma1_sq = 0.5;
    params.sigma2_sq = 1.0;
    params.noise_var = noise_var_for_snr_db(opts.measure_snr_db, params.sigma1_sq);
    params.uncoded_symbols = h.n_cols() / 2;
    CounterRng rng(opts.seed, 0xC0DEULL);
    RelayFrame coded = make_frame(&enc, rng, params);
    const Complex h1 = coded.channel.h1 == Complex{0.0, 0.0} ? Complex{1.0, 0.0}
                                                             : coded.channel.h1;
    const std::vector<double> gamma = direct_llr(coded.r1, h1, coded.noise_var);
    auto [unified, ulay] = build_unified(coded, h1, h, gamma, 1.0, 1.0,
                                         /*integer=*/false, /*include_parity=*/false);
    row.adaptive_vars = unified.num_vars();
    row.adaptive_base_rows = unified.num_rows();
    row.unified_total_rows =
        unified.num_rows() + static_cast<long>(row.parity_inequalities);

    CounterRng rng_u(opts.seed, 0xC0DFULL);
    RelayFrame uncoded_frame = make_frame(nullptr, rng_u, params);
    auto [uncoded, play] = build_uncoded(uncoded_frame, h1, 1.0, 1.0, /*integer=*/false);
    row.uncoded_vars = uncoded.num_vars();
    row.uncoded_rows = uncoded.num_rows();

    if (opts.measure_frames > 0 && h.n_cols() <= opts.measure_max_length) {
      long cuts = 0, iters = 0;
      for (int f = 0; f < opts.measure_frames; ++f) {
        CounterRng frng(opts.seed, 0xAD0000ULL + static_cast<uint64_t>(f));
        RelayFrame frame = make_frame(&enc, frng, params);
        if (frame.channel.h1 == Complex{0.0, 0.0}) continue;
        ReceiverReport rep =
            decode_adaptive(frame, frame.channel.h1, h, DecodeMode::kRelaxed);
        cuts += rep.cuts_added;
        iters += rep.simplex_iterations;
      }
      row.mean_cuts = static_cast<double>(cuts) / opts.measure_frames;
      row.mean_iterations = static_cast<double>(iters) / opts.measure_frames;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string complexity_table_text(const std::vector<ComplexityRow>& rows) {
  std::ostringstream os;
  char buf[256];
  os << "length  parity_ineqs  unified_rows  adaptive_vars  adaptive_rows  "
        "uncoded_vars  uncoded_rows  mean_cuts  mean_iters\n";
  for (const ComplexityRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%6d  %12llu  %12ld  %13d  %13ld  %12d  %12ld  %9.2f  %10.1f\n",
                  r.code_length, static_cast<unsigned long long>(r.parity_inequalities),
                  r.unified_total_rows, r.adaptive_vars, r.adaptive_base_rows,
                  r.uncoded_vars, r.uncoded_rows, r.mean_cuts, r.mean_iterations);
    os << buf;
  }
  return os.str();
}

std::pair<std::vector<uint8_t>, double> brute_force_oracle(
    const RelayFrame& frame, Complex h1, const ParityCheckMatrix& h,
    double lambda_t, double lambda_tau) {
  Encoder enc = systematize(h);
  const int k = enc.message_length();
  if (k > 16) throw std::invalid_argument("brute_force_oracle: message too long");
  const int n = frame.num_symbols();
  if (h.n_cols() != 2 * n)
    throw std::invalid_argument("brute_force_oracle: code length mismatch");

  const std::vector<double> gamma = direct_llr(frame.r1, h1, frame.noise_var);

  // Residual program over (theta, tau) alone; the structure is shared by
  // every candidate, only the rhs changes with x.
  const int theta0 = 0;
  auto tau_re = [&](int kk) { return 4 + kk; };
  auto tau_im = [&](int kk) { return 4 + n + kk; };

  std::vector<uint8_t> best_bits;
  double best_obj = kInf;

  std::vector<uint8_t> message(k, 0);
  const long count = 1L << k;
  for (long msg = 0; msg < count; ++msg) {
    for (int t = 0; t < k; ++t) message[t] = static_cast<uint8_t>((msg >> t) & 1);
    const std::vector<uint8_t> bits = enc.encode(message);
    const std::vector<Complex> x = modulate_qam4_gray(bits);

    double fixed = 0.0;
    for (int kk = 0; kk < n; ++kk) {
      const Complex e = h1 * x[kk] - frame.r1[kk];
      fixed += lambda_t * (std::abs(e.real()) + std::abs(e.imag()));
    }
    for (size_t b = 0; b < bits.size(); ++b)
      if (bits[b]) fixed += gamma[b];

    LpProblem p(4 + 2 * n);
    for (int i = 0; i < 4; ++i) p.set_bounds(theta0 + i, -kInf, kInf);
    for (int kk = 0; kk < n; ++kk) {
      p.set_bounds(tau_re(kk), 0.0, kInf);
      p.set_bounds(tau_im(kk), 0.0, kInf);
      p.set_objective(tau_re(kk), lambda_tau);
      p.set_objective(tau_im(kk), lambda_tau);
    }
    std::vector<int> cols;
    std::vector<double> vals;
    for (int kk = 0; kk < n; ++kk) {
      const double r1r = frame.r1[kk].real(), r1i = frame.r1[kk].imag();
      const double r2r = frame.r2[kk].real(), r2i = frame.r2[kk].imag();
      for (double s : {1.0, -1.0}) {
        cols.clear();
        vals.clear();
        auto push = [&](int c, double v) {
          if (v != 0.0) { cols.push_back(c); vals.push_back(v); }
        };
        push(theta0 + 0, -s * r1r);
        push(theta0 + 1, -s * r1i);
        push(theta0 + 2, -s * r2r);
        push(theta0 + 3, -s * r2i);
        push(tau_re(kk), -1.0);
        p.add_row(cols, vals, RowSense::kLessEqual, -s * x[kk].real());
      }
      for (double s : {1.0, -1.0}) {
        cols.clear();
        vals.clear();
        auto push = [&](int c, double v) {
          if (v != 0.0) { cols.push_back(c); vals.push_back(v); }
        };
        push(theta0 + 0, -s * r1i);
        push(theta0 + 1, s * r1r);
        push(theta0 + 2, -s * r2i);
        push(theta0 + 3, s * r2r);
        push(tau_im(kk), -1.0);
        p.add_row(cols, vals, RowSense::kLessEqual, -s * x[kk].imag());
      }
    }
    const LpSolution sol = solve_lp(p);
    if (sol.status != SolveStatus::kOptimal)
      throw std::runtime_error("brute_force_oracle: residual LP not optimal");
    const double total = fixed + sol.objective_value;
    if (total < best_obj - 1e-12 ||
        (total < best_obj + 1e-12 &&
         std::lexicographical_compare(bits.begin(), bits.end(), best_bits.begin(),
                                      best_bits.end()))) {
      best_obj = total;
      best_bits = bits;
    }
  }
  return {best_bits, best_obj};
}

}  // namespace relaylp
