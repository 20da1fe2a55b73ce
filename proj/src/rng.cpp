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

#include "relaylp/rng.hpp"

#include <cmath>

namespace relaylp {
namespace {

constexpr uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(uint64_t a, uint64_t b, uint64_t& hi, uint64_t& lo) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<uint64_t>(p >> 64);
  lo = static_cast<uint64_t>(p);
}

}  // namespace

std::array<uint64_t, 4> CounterRng::block(const std::array<uint64_t, 4>& counter,
                                          const std::array<uint64_t, 2>& key) {
  std::array<uint64_t, 4> c = counter;
  uint64_t k0 = key[0], k1 = key[1];
  for (int round = 0; round < 10; ++round) {
    uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return c;
}

CounterRng::CounterRng(uint64_t seed, uint64_t stream)
    : key_{seed, stream}, counter_{0, 0, 0, 0}, buffer_{}, buffer_pos_(4) {}

void CounterRng::refill() {
  buffer_ = block(counter_, key_);
  buffer_pos_ = 0;
  if (++counter_[0] == 0)
    if (++counter_[1] == 0)
      if (++counter_[2] == 0) ++counter_[3];
}

uint64_t CounterRng::next_u64() {
  if (buffer_pos_ >= 4) refill();
  return buffer_[buffer_pos_++];
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t CounterRng::next_below(uint64_t bound) {
  // Rejection sampling over the largest multiple of bound below 2^64.
  uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    uint64_t v = next_u64();
    if (v >= threshold) return v % bound;
  }
}

double CounterRng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return gauss_spare_;
  }
  double u1 = 1.0 - next_unit();  // (0, 1], keeps log() finite
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double phi = 2.0 * M_PI * u2;
  gauss_spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

std::complex<double> CounterRng::next_cgaussian(double variance) {
  if (variance <= 0.0) return {0.0, 0.0};
  double s = std::sqrt(variance / 2.0);
  double re = next_gaussian();
  double im = next_gaussian();
  return {s * re, s * im};
}

}  // namespace relaylp
