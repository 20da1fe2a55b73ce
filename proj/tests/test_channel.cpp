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
#include "relaylp/ldpc.hpp"
#include "relaylp/receivers.hpp"

using namespace relaylp;

TEST_CASE("gray mapping worked examples") {
  CHECK(modulate_qam4_gray(std::vector<uint8_t>{0, 0})[0] == Complex{1.0, 1.0});
  CHECK(modulate_qam4_gray(std::vector<uint8_t>{1, 1})[0] == Complex{-1.0, -1.0});
  // (f1, f2) = (0, 1): the second bit drives the real part.
  CHECK(modulate_qam4_gray(std::vector<uint8_t>{0, 1})[0] == Complex{-1.0, 1.0});
  CHECK_THROWS_AS(modulate_qam4_gray(std::vector<uint8_t>{0, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("hard demodulation slices signs, ties to zero bit") {
  CHECK(demodulate_hard(std::vector<Complex>{{1.0, 1.0}}) ==
        std::vector<uint8_t>{0, 0});
  CHECK(demodulate_hard(std::vector<Complex>{{-0.2, 0.7}}) ==
        std::vector<uint8_t>{0, 1});
  CHECK(demodulate_hard(std::vector<Complex>{{0.0, 0.0}}) ==
        std::vector<uint8_t>{0, 0});
  for (uint8_t a = 0; a < 2; ++a)
    for (uint8_t b = 0; b < 2; ++b) {
      const std::vector<uint8_t> bits{a, b};
      CHECK(demodulate_hard(modulate_qam4_gray(bits)) == bits);
    }
}

TEST_CASE("channel draw statistics") {
  CounterRng rng(17, 0);
  SUBCASE("zero variance collapses to zero") {
    const auto ch = draw_channel(0.0, 1.0, rng);
    CHECK(ch.h1 == Complex{0.0, 0.0});
  }
  SUBCASE("empirical variances within two percent") {
    const int n = 100000;
    double v1 = 0.0, v2 = 0.0;
    Complex mean1{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      const auto ch = draw_channel(0.5, 1.0, rng);
      v1 += std::norm(ch.h1);
      v2 += std::norm(ch.h2);
      mean1 += ch.h1;
    }
    CHECK(std::abs(v1 / n - 0.5) < 0.01);
    CHECK(std::abs(v2 / n - 1.0) < 0.02);
    CHECK(std::abs(mean1 / static_cast<double>(n)) < 0.02);
  }
}

TEST_CASE("transmit") {
  CounterRng rng(29, 0);
  const std::vector<uint8_t> bits{0, 1, 1, 0, 1, 1, 0, 0};
  const auto x = modulate_qam4_gray(bits);
  const ChannelRealization ch{{0.4, -0.9}, {1.2, 0.3}};

  SUBCASE("noiseless pass-through") {
    std::vector<Complex> r1, r2;
    transmit(x, ch, 0.0, rng, r1, r2);
    for (size_t k = 0; k < x.size(); ++k) {
      CHECK(r1[k] == ch.h1 * x[k]);
      CHECK(r2[k] == ch.h2 * x[k]);
    }
  }
  SUBCASE("pure-noise variance") {
    const std::vector<Complex> zeros(50000, Complex{0.0, 0.0});
    std::vector<Complex> r1, r2;
    transmit(zeros, ch, 0.8, rng, r1, r2);
    double v = 0.0;
    for (const auto& z : r1) v += std::norm(z);
    for (const auto& z : r2) v += std::norm(z);
    CHECK(std::abs(v / (2 * 50000) - 0.8) < 0.016);
  }
  SUBCASE("same seed, same output") {
    CounterRng a(5, 9), b(5, 9);
    std::vector<Complex> r1a, r2a, r1b, r2b;
    transmit(x, ch, 0.5, a, r1a, r2a);
    transmit(x, ch, 0.5, b, r1b, r2b);
    CHECK(r1a == r1b);
    CHECK(r2a == r2b);
  }
}

TEST_CASE("make_frame modes") {
  FrameParams params;
  params.noise_var = 0.25;
  SUBCASE("uncoded draws 2N bits") {
    CounterRng rng(3, 3);
    const RelayFrame frame = make_frame(nullptr, rng, params);
    CHECK(frame.tx_bits.size() == 40);
    CHECK(frame.num_symbols() == 20);
    CHECK(frame.r1.size() == 20);
    CHECK(frame.noise_var == 0.25);
    for (const auto& s : frame.x) {
      CHECK(std::abs(std::abs(s.real()) - 1.0) < 1e-15);
      CHECK(std::abs(std::abs(s.imag()) - 1.0) < 1e-15);
    }
  }
  SUBCASE("coded frames carry one codeword") {
    const ParityCheckMatrix h = gallager_construct(32, 3, 6, 11);
    const Encoder enc = systematize(h);
    CounterRng rng(3, 4);
    const RelayFrame frame = make_frame(&enc, rng, params);
    CHECK(frame.tx_bits.size() == 32);
    CHECK(frame.num_symbols() == 16);
    CHECK(check_codeword(h, frame.tx_bits));
  }
}

TEST_CASE("noiseless loop-back recovers every frame") {
  FrameParams params;
  params.noise_var = 0.0;
  for (uint64_t t = 0; t < 25; ++t) {
    CounterRng rng(101, t);
    const RelayFrame frame = make_frame(nullptr, rng, params);
    if (frame.channel.h1 == Complex{0.0, 0.0}) continue;
    const auto bits = detect_ml_direct(frame.r1, frame.channel.h1);
    CHECK(bits == frame.tx_bits);
  }
}

TEST_CASE("snr bookkeeping") {
  // Definition: noise_var = E_s sigma1^2 / 10^(dB/10) with E_s = 2.
  CHECK(noise_var_for_snr_db(0.0, 0.5) == doctest::Approx(1.0));
  CHECK(noise_var_for_snr_db(10.0, 0.5) == doctest::Approx(0.1));
  CHECK(snr_db_for_noise_var(noise_var_for_snr_db(7.3, 0.5), 0.5) ==
        doctest::Approx(7.3).epsilon(1e-12));

  // Recompute the realized SNR from samples at one million draws.
  const double snr_db = 6.0;
  const double noise_var = noise_var_for_snr_db(snr_db, 0.5);
  CounterRng rng(7, 70);
  double sig = 0.0, noi = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const Complex h = rng.next_cgaussian(0.5);
    const Complex x{1.0 - 2.0 * rng.next_bit(), 1.0 - 2.0 * rng.next_bit()};
    const Complex w = rng.next_cgaussian(noise_var);
    sig += std::norm(h * x);
    noi += std::norm(w);
  }
  const double est_db = 10.0 * std::log10(sig / noi);
  CHECK(std::abs(est_db - snr_db) < 0.1);
}
