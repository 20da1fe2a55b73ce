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
#include <complex>
#include <cstdint>

namespace relaylp {

// Counter-based generator (Philox4x64-10 from the Random123 family).
// A stream is identified by (seed, stream): trials in a Monte-Carlo run get
// disjoint substreams, so parallel and serial schedules produce identical
// draws for each trial.
class CounterRng {
 public:
  CounterRng() : CounterRng(0, 0) {}
  CounterRng(uint64_t seed, uint64_t stream);

  uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double next_unit();

  // Uniform on {0, ..., bound-1} without modulo bias. bound must be > 0.
  uint64_t next_below(uint64_t bound);

  int next_bit() { return static_cast<int>(next_u64() >> 63); }

  // Standard normal via Box-Muller; second value of each pair is cached.
  double next_gaussian();

  // Circularly symmetric complex Gaussian CN(0, variance):
  // variance/2 per real dimension. variance = 0 yields exactly 0.
  std::complex<double> next_cgaussian(double variance);

  // One raw Philox4x64-10 block; exposed for known-answer tests.
  static std::array<uint64_t, 4> block(const std::array<uint64_t, 4>& counter,
                                       const std::array<uint64_t, 2>& key);

 private:
  void refill();

  std::array<uint64_t, 2> key_;
  std::array<uint64_t, 4> counter_;
  std::array<uint64_t, 4> buffer_;
  int buffer_pos_;
  double gauss_spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace relaylp
