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
#include "relaylp/rng.hpp"

using namespace relaylp;

TEST_CASE("philox4x64-10 known answers") {
  // Random123 reference vectors.
  auto z = CounterRng::block({0, 0, 0, 0}, {0, 0});
  CHECK(z[0] == 0x16554d9eca36314cULL);
  CHECK(z[1] == 0xdb20fe9d672d0fdcULL);
  CHECK(z[2] == 0xd7e772cee186176bULL);
  CHECK(z[3] == 0x7e68b68aec7ba23bULL);

  z = CounterRng::block({0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL,
                         0xa4093822299f31d0ULL, 0x082efa98ec4e6c89ULL},
                        {0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL});
  CHECK(z[0] == 0xa528f45403e61d95ULL);
  CHECK(z[1] == 0x38c72dbd566e9788ULL);
  CHECK(z[2] == 0xa5a1610e72fd18b5ULL);
  CHECK(z[3] == 0x57bd43b5e52b7fe6ULL);

  // Counter (1,0,0,0): second block of the zero-keyed stream.
  z = CounterRng::block({1, 0, 0, 0}, {0, 0});
  CHECK(z[0] == 0x02f4ba6408e4d89bULL);
  CHECK(z[1] == 0x3dd62b0b9ca8c5b2ULL);
  CHECK(z[2] == 0x1c8667a55d902e79ULL);
  CHECK(z[3] == 0x907d7a052fd5b4dcULL);
}

TEST_CASE("streams are deterministic and distinct") {
  CounterRng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) {
    const uint64_t va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
  }
}

TEST_CASE("uniform moments") {
  CounterRng rng(1, 0);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.005);
  CHECK(std::abs(sum2 / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("gaussian moments") {
  CounterRng rng(3, 1);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian();
    sum += g;
    sum2 += g * g;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sum2 / n - 1.0) < 0.02);
}

TEST_CASE("complex gaussian variance and zero case") {
  CounterRng rng(5, 2);
  const int n = 100000;
  double var = 0.0;
  for (int i = 0; i < n; ++i) var += std::norm(rng.next_cgaussian(0.7));
  CHECK(std::abs(var / n - 0.7) < 0.02);
  CHECK(rng.next_cgaussian(0.0) == std::complex<double>{0.0, 0.0});
}

TEST_CASE("next_below range and determinism") {
  CounterRng rng(9, 9), rng2(9, 9);
  for (int i = 0; i < 1000; ++i) {
    const uint64_t v = rng.next_below(17);
    CHECK(v < 17);
    CHECK(v == rng2.next_below(17));
  }
}
