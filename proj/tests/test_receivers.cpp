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
#include "relaylp/channel.hpp"
#include "relaylp/harness.hpp"
#include "relaylp/ldpc.hpp"
#include "relaylp/receivers.hpp"
#include "relaylp/rng.hpp"

using namespace relaylp;

namespace {

RelayFrame frame_at(const Encoder* enc, uint64_t seed, uint64_t stream, double snr_db,
                    int uncoded_symbols = 20) {
  FrameParams params;
  params.uncoded_symbols = uncoded_symbols;
  params.noise_var = noise_var_for_snr_db(snr_db, params.sigma1_sq);
  CounterRng rng(seed, stream);
  return make_frame(enc, rng, params);
}

long bit_errors(std::span<const uint8_t> a, std::span<const uint8_t> b) {
  long e = 0;
  for (size_t i = 0; i < a.size(); ++i) e += a[i] != b[i] ? 1 : 0;
  return e;
}

}  // namespace

TEST_CASE("direct-link ML slices the rotated observation") {
  const std::vector<Complex> r1{{0.9, 0.8}};
  CHECK(detect_ml_direct(r1, {1.0, 0.0}) == std::vector<uint8_t>{0, 0});
  // A purely imaginary channel rotates the constellation; slicing on r/h
  // must undo it.
  const std::vector<Complex> r2{Complex{0.0, 1.0} * Complex{1.0, 1.0}};
  CHECK(detect_ml_direct(r2, {0.0, 1.0}) == std::vector<uint8_t>{0, 0});
  CHECK_THROWS_AS(detect_ml_direct(r1, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("all-links ML") {
  SUBCASE("h2 = 0 reduces to the direct link") {
    CounterRng rng(41, 0);
    for (int t = 0; t < 50; ++t) {
      std::vector<Complex> r1{{rng.next_gaussian(), rng.next_gaussian()}};
      std::vector<Complex> r2{{rng.next_gaussian(), rng.next_gaussian()}};
      const Complex h1{rng.next_gaussian(), rng.next_gaussian()};
      CHECK(detect_ml_all_links(r1, r2, h1, {0.0, 0.0}) == detect_ml_direct(r1, h1));
    }
  }
  SUBCASE("noiseless frames decode exactly") {
    FrameParams params;
    params.noise_var = 0.0;
    for (uint64_t t = 0; t < 20; ++t) {
      CounterRng rng(42, t);
      const RelayFrame f = make_frame(nullptr, rng, params);
      if (std::abs(f.channel.h1) < 1e-6 && std::abs(f.channel.h2) < 1e-6) continue;
      CHECK(detect_ml_all_links(f.r1, f.r2, f.channel.h1, f.channel.h2) == f.tx_bits);
    }
  }
  SUBCASE("agrees with an explicit four-point metric scan") {
    CounterRng rng(43, 0);
    for (int t = 0; t < 200; ++t) {
      const Complex h1{rng.next_gaussian(), rng.next_gaussian()};
      const Complex h2{rng.next_gaussian(), rng.next_gaussian()};
      const std::vector<Complex> r1{{rng.next_gaussian(), rng.next_gaussian()}};
      const std::vector<Complex> r2{{rng.next_gaussian(), rng.next_gaussian()}};
      const auto bits = detect_ml_all_links(r1, r2, h1, h2);
      double best = 1e300;
      std::vector<uint8_t> want;
      for (uint8_t im = 0; im < 2; ++im)
        for (uint8_t re = 0; re < 2; ++re) {
          const Complex x{1.0 - 2.0 * re, 1.0 - 2.0 * im};
          const double metric = std::norm(h1 * x - r1[0]) + std::norm(h2 * x - r2[0]);
          if (metric < best) {
            best = metric;
            want = {im, re};
          }
        }
      CHECK(bits == want);
    }
  }
}

TEST_CASE("decision-feedback channel estimation") {
  SUBCASE("noiseless consistent data recovers h2 exactly") {
    FrameParams params;
    params.noise_var = 0.0;
    CounterRng rng(44, 1);
    const RelayFrame f = make_frame(nullptr, rng, params);
    REQUIRE(std::abs(f.channel.h1) > 0.05);
    Complex h2_hat;
    const auto bits = detect_df_chanest(f.r1, f.r2, f.channel.h1, &h2_hat);
    CHECK(bits == f.tx_bits);
    CHECK(std::abs(h2_hat - f.channel.h2) < 1e-12);
  }
  SUBCASE("beats the direct link at high SNR") {
    long err_direct = 0, err_df = 0;
    for (uint64_t t = 0; t < 800; ++t) {
      const RelayFrame f = frame_at(nullptr, 45, t, 14.0);
      if (std::abs(f.channel.h1) < 1e-9) continue;
      err_direct += bit_errors(detect_ml_direct(f.r1, f.channel.h1), f.tx_bits);
      err_df += bit_errors(detect_df_chanest(f.r1, f.r2, f.channel.h1), f.tx_bits);
    }
    CHECK(err_df < err_direct);
  }
}

TEST_CASE("uncoded builder counting identities") {
  SUBCASE("N = 1") {
    const RelayFrame f = frame_at(nullptr, 46, 0, 8.0, 1);
    auto [p, lay] = build_uncoded(f, f.channel.h1, 1.0, 1.0, false);
    CHECK(p.num_vars() == 10);
    CHECK(p.num_rows() == 8);
  }
  SUBCASE("N = 128 matches the reported uncoded LP size") {
    const RelayFrame f = frame_at(nullptr, 46, 1, 8.0, 128);
    auto [p, lay] = build_uncoded(f, f.channel.h1, 1.0, 1.0, false);
    CHECK(p.num_vars() == 772);
    CHECK(p.num_rows() == 1024);
    CHECK_FALSE(p.has_integer_vars());
  }
  SUBCASE("integer mode adds the Gray bits and their couplings") {
    const RelayFrame f = frame_at(nullptr, 46, 2, 8.0, 16);
    auto [p, lay] = build_uncoded(f, f.channel.h1, 1.0, 1.0, true);
    CHECK(p.num_vars() == 8 * 16 + 4);
    CHECK(p.num_rows() == 10 * 16);
    CHECK(p.has_integer_vars());
  }
  SUBCASE("empty frame rejected") {
    RelayFrame f;
    CHECK_THROWS_AS(build_uncoded(f, {1.0, 0.0}, 1.0, 1.0, false),
                    std::invalid_argument);
  }
}

TEST_CASE("unified builder counting identities") {
  const ParityCheckMatrix h = gallager_construct(256, 3, 6, 1);
  const Encoder enc = systematize(h);
  const RelayFrame f = frame_at(&enc, 47, 0, 8.0);
  const auto gamma = direct_llr(f.r1, f.channel.h1, f.noise_var);

  SUBCASE("base rows and variables") {
    auto [p, lay] = build_unified(f, f.channel.h1, h, gamma, 1.0, 1.0, false, false);
    CHECK(p.num_vars() == 4 * 256 + 4);  // 1028
    CHECK(p.num_rows() == 5 * 256);      // 1280
  }
  SUBCASE("exhaustive parity rows") {
    auto [p, lay] = build_unified(f, f.channel.h1, h, gamma, 1.0, 1.0, false, true);
    CHECK(p.num_rows() == 1280 + 4096);
  }
  SUBCASE("transmitted point is feasible and bounds the optimum") {
    auto [p, lay] = build_unified(f, f.channel.h1, h, gamma, 1.0, 1.0, false, true);
    std::vector<double> point(p.num_vars(), 0.0);
    for (int k = 0; k < lay.num_symbols; ++k) {
      point[lay.x_re(k)] = f.x[k].real();
      point[lay.x_im(k)] = f.x[k].imag();
      const Complex e1 = f.channel.h1 * f.x[k] - f.r1[k];
      point[lay.t_re(k)] = std::abs(e1.real());
      point[lay.t_im(k)] = std::abs(e1.imag());
      // theta = 0, so tau must cover |x| itself.
      point[lay.tau_re(k)] = std::abs(f.x[k].real());
      point[lay.tau_im(k)] = std::abs(f.x[k].imag());
    }
    for (int b = 0; b < lay.num_bits; ++b) point[lay.f(b)] = f.tx_bits[b];
    for (int i = 0; i < p.num_rows(); ++i) {
      const double a = p.row_activity(i, point);
      if (p.sense()[i] == RowSense::kEqual) {
        CHECK(std::abs(a - p.rhs()[i]) < 1e-9);
      } else {
        CHECK(a <= p.rhs()[i] + 1e-9);
      }
    }
  }
  SUBCASE("dimension mismatches rejected") {
    const RelayFrame wrong = frame_at(nullptr, 47, 1, 8.0, 10);
    CHECK_THROWS_AS(build_unified(wrong, wrong.channel.h1, h, gamma, 1, 1, false, false),
                    std::invalid_argument);
  }
}

TEST_CASE("uncoded MILP at vanishing noise recovers the transmission") {
  for (uint64_t t = 0; t < 5; ++t) {
    FrameParams params;
    params.uncoded_symbols = 8;
    params.noise_var = 1e-8;
    CounterRng rng(48, t);
    const RelayFrame f = make_frame(nullptr, rng, params);
    if (std::abs(f.channel.h1) < 0.05) continue;
    const ReceiverReport rep = detect_uncoded(f, f.channel.h1, DecodeMode::kMilp);
    REQUIRE(rep.status == SolveStatus::kOptimal);
    CHECK(rep.objective_value < 1e-3);
    CHECK(rep.decoded_bits == f.tx_bits);
  }
}

TEST_CASE("unified decoding at high SNR recovers the codeword in both modes") {
  const ParityCheckMatrix h = gallager_construct(32, 3, 6, 11);
  const Encoder enc = systematize(h);
  int ran = 0;
  for (uint64_t t = 0; t < 25 && ran < 20; ++t) {
    const RelayFrame f = frame_at(&enc, 49, t, 40.0);  // sigma^2 = 1e-4
    if (std::abs(f.channel.h1) < 0.05) continue;
    ++ran;
    const ReceiverReport milp = decode_unified(f, f.channel.h1, h, DecodeMode::kMilp);
    const ReceiverReport lp = decode_unified(f, f.channel.h1, h, DecodeMode::kRelaxed);
    CHECK(milp.decoded_bits == f.tx_bits);
    CHECK(lp.decoded_bits == f.tx_bits);
    // Relaxation can only lower the minimum.
    CHECK(milp.objective_value >= lp.objective_value - 1e-7);
    // An integral relaxed optimum is already the MILP answer.
    if (lp.is_integral) CHECK(lp.decoded_bits == milp.decoded_bits);
    // Slicing consistency: rounding f equals slicing x through the active
    // Gray equalities.
    CHECK(lp.decoded_bits == demodulate_hard(f.x.size() == 0 ? std::vector<Complex>{}
                                                             : [&] {
                                                std::vector<Complex> xs(f.x.size());
                                                for (size_t k = 0; k < xs.size(); ++k)
                                                  xs[k] = {1.0 - 2.0 * lp.decoded_bits[2 * k + 1],
                                                           1.0 - 2.0 * lp.decoded_bits[2 * k]};
                                                return xs;
                                              }()));
  }
  CHECK(ran >= 15);
}

TEST_CASE("adaptive receiver") {
  const ParityCheckMatrix h = gallager_construct(32, 3, 6, 11);
  const Encoder enc = systematize(h);

  SUBCASE("noiseless frame needs no cuts") {
    FrameParams params;
    params.noise_var = 1e-9;
    CounterRng rng(50, 3);
    const RelayFrame f = make_frame(&enc, rng, params);
    REQUIRE(std::abs(f.channel.h1) > 0.05);
    const ReceiverReport rep = decode_adaptive(f, f.channel.h1, h, DecodeMode::kRelaxed);
    CHECK(rep.cut_rounds == 0);
    CHECK(rep.cuts_added == 0);
    CHECK(rep.decoded_bits == f.tx_bits);
  }

  SUBCASE("relaxed mode matches the exhaustive unified LP objective") {
    int ran = 0;
    for (uint64_t t = 0; t < 30 && ran < 20; ++t) {
      const RelayFrame f = frame_at(&enc, 51, t, 7.0);
      if (std::abs(f.channel.h1) < 0.05) continue;
      ++ran;
      const ReceiverReport adaptive =
          decode_adaptive(f, f.channel.h1, h, DecodeMode::kRelaxed);
      REQUIRE_FALSE(adaptive.truncated);
      const ReceiverReport full =
          decode_unified(f, f.channel.h1, h, DecodeMode::kRelaxed);
      CHECK(adaptive.objective_value ==
            doctest::Approx(full.objective_value).epsilon(1e-6));
      CHECK(adaptive.cuts_added <=
            static_cast<long>(count_parity_inequalities(h)));
      CHECK(adaptive.rows_at_final_solve < full.rows_at_final_solve);
    }
    CHECK(ran >= 15);
  }

  SUBCASE("milp mode matches the exhaustive unified MILP bits") {
    int ran = 0;
    for (uint64_t t = 0; t < 15 && ran < 8; ++t) {
      const RelayFrame f = frame_at(&enc, 52, t, 10.0);
      if (std::abs(f.channel.h1) < 0.05) continue;
      ++ran;
      const ReceiverReport adaptive =
          decode_adaptive(f, f.channel.h1, h, DecodeMode::kMilp);
      const ReceiverReport full = decode_unified(f, f.channel.h1, h, DecodeMode::kMilp);
      REQUIRE(adaptive.status == SolveStatus::kOptimal);
      REQUIRE(full.status == SolveStatus::kOptimal);
      CHECK(adaptive.decoded_bits == full.decoded_bits);
      CHECK(adaptive.objective_value ==
            doctest::Approx(full.objective_value).epsilon(1e-6));
      CHECK(check_codeword(h, adaptive.decoded_bits));
    }
    CHECK(ran >= 6);
  }

  SUBCASE("hard-decision cut search also terminates and decodes") {
    AdaptiveOptions opts;
    opts.hard_decision_cut_search = true;
    int ran = 0;
    for (uint64_t t = 0; t < 10; ++t) {
      const RelayFrame f = frame_at(&enc, 53, t, 9.0);
      if (std::abs(f.channel.h1) < 0.05) continue;
      ++ran;
      const ReceiverReport rep =
          decode_adaptive(f, f.channel.h1, h, DecodeMode::kRelaxed, 1.0, 1.0, opts);
      CHECK(rep.decoded_bits.size() == 32);
    }
    CHECK(ran >= 6);
  }
}

TEST_CASE("estimate_work copies the counters") {
  ReceiverReport rep;
  rep.simplex_iterations = 12;
  rep.branch_nodes = 3;
  rep.rows_at_final_solve = 77;
  rep.cuts_added = 5;
  const WorkSummary w = estimate_work(rep);
  CHECK(w.simplex_iterations == 12);
  CHECK(w.branch_nodes == 3);
  CHECK(w.rows_at_final_solve == 77);
  CHECK(w.cuts_added == 5);
}
