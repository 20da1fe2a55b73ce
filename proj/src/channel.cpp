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

#include "relaylp/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "relaylp/ldpc.hpp"

namespace relaylp {

std::vector<Complex> modulate_qam4_gray(std::span<const uint8_t> bits) {
  if (bits.size() % 2 != 0)
    throw std::invalid_argument("modulate_qam4_gray: odd bit count");
  std::vector<Complex> x(bits.size() / 2);
  for (size_t k = 0; k < x.size(); ++k) {
    const double im = 1.0 - 2.0 * (bits[2 * k] & 1);
    const double re = 1.0 - 2.0 * (bits[2 * k + 1] & 1);
    x[k] = {re, im};
  }
  return x;
}

std::vector<uint8_t> demodulate_hard(std::span<const Complex> symbols) {
  std::vector<uint8_t> bits(2 * symbols.size());
  for (size_t k = 0; k < symbols.size(); ++k) {
    bits[2 * k] = symbols[k].imag() < 0.0 ? 1 : 0;
    bits[2 * k + 1] = symbols[k].real() < 0.0 ? 1 : 0;
  }
  return bits;
}

ChannelRealization draw_channel(double sigma1_sq, double sigma2_sq, CounterRng& rng) {
  ChannelRealization ch;
  ch.h1 = rng.next_cgaussian(sigma1_sq);
  ch.h2 = rng.next_cgaussian(sigma2_sq);
  return ch;
}

void transmit(std::span<const Complex> x, const ChannelRealization& ch,
              double noise_var, CounterRng& rng, std::vector<Complex>& r1,
              std::vector<Complex>& r2) {
  r1.resize(x.size());
  r2.resize(x.size());
  for (size_t k = 0; k < x.size(); ++k)
    r1[k] = ch.h1 * x[k] + rng.next_cgaussian(noise_var);
  for (size_t k = 0; k < x.size(); ++k)
    r2[k] = ch.h2 * x[k] + rng.next_cgaussian(noise_var);
}

RelayFrame make_frame(const Encoder* code, CounterRng& rng, const FrameParams& params) {
  RelayFrame frame;
  if (code != nullptr) {
    std::vector<uint8_t> message(code->message_length());
    for (auto& b : message) b = static_cast<uint8_t>(rng.next_bit());
    frame.tx_bits = code->encode(message);
  } else {
    if (params.uncoded_symbols <= 0)
      throw std::invalid_argument("make_frame: symbol count must be positive");
    frame.tx_bits.resize(2 * params.uncoded_symbols);
    for (auto& b : frame.tx_bits) b = static_cast<uint8_t>(rng.next_bit());
  }
  frame.x = modulate_qam4_gray(frame.tx_bits);
  frame.channel = draw_channel(params.sigma1_sq, params.sigma2_sq, rng);
  frame.noise_var = params.noise_var;
  transmit(frame.x, frame.channel, params.noise_var, rng, frame.r1, frame.r2);
  return frame;
}

double noise_var_for_snr_db(double snr_db, double sigma1_sq) {
  return 2.0 * sigma1_sq * std::pow(10.0, -snr_db / 10.0);
}

double snr_db_for_noise_var(double noise_var, double sigma1_sq) {
  return 10.0 * std::log10(2.0 * sigma1_sq / noise_var);
}

}  // namespace relaylp
