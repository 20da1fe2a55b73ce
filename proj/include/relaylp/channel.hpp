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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "relaylp/rng.hpp"

namespace relaylp {

class Encoder;

using Complex = std::complex<double>;

// 4-QAM Gray mapping.  The bit stream pairs up as (Im bit, Re bit) per
// symbol:  Re{x[k]} = 1 - 2 f_re,  Im{x[k]} = 1 - 2 f_im, so the
// constellation is the unnormalized {+-1 +-1j}.
std::vector<Complex> modulate_qam4_gray(std::span<const uint8_t> bits);

// Sign slicing of both components; exact zeros map to bit 0.  Inverse of
// modulate_qam4_gray on exact constellation points.
std::vector<uint8_t> demodulate_hard(std::span<const Complex> symbols);

// One coherence block's channel pair.
struct ChannelRealization {
  Complex h1;  // source -> destination
  Complex h2;  // relay -> destination
};

// h_i ~ CN(0, sigma_i^2), independent.
ChannelRealization draw_channel(double sigma1_sq, double sigma2_sq, CounterRng& rng);

// r_i[k] = h_i x[k] + n_i[k] with n_i iid CN(0, noise_var), branches
// independent, channel constant over the frame.
void transmit(std::span<const Complex> x, const ChannelRealization& ch,
              double noise_var, CounterRng& rng, std::vector<Complex>& r1,
              std::vector<Complex>& r2);

// One coherence block of the two-phase relay link.
struct RelayFrame {
  std::vector<uint8_t> tx_bits;  // length 2N
  std::vector<Complex> x;        // length N
  std::vector<Complex> r1, r2;   // length N
  ChannelRealization channel;
  double noise_var = 0.0;        // per complex sample (half per dimension)

  int num_symbols() const { return static_cast<int>(x.size()); }
};

struct FrameParams {
  int uncoded_symbols = 20;  // N when no code is attached
  double sigma1_sq = 0.5;
  double sigma2_sq = 1.0;
  double noise_var = 1.0;
};

// Uncoded mode (code == nullptr): 2N random bits.  Coded mode: encodes a
// random message, so N = N_c / 2 symbols.
RelayFrame make_frame(const Encoder* code, CounterRng& rng, const FrameParams& params);

// SNR convention: per-branch SNR referenced to the direct link with
// E_s = 2 (unnormalized 4-QAM), i.e. noise_var = E_s * sigma1_sq / 10^(dB/10).
double noise_var_for_snr_db(double snr_db, double sigma1_sq);
double snr_db_for_noise_var(double noise_var, double sigma1_sq);

}  // namespace relaylp
