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
#include <stdexcept>

#include "relaylp/receivers.hpp"

namespace relaylp {
namespace {

// The four constellation points indexed by (im_bit << 1) | re_bit.
inline Complex point_of(int idx) {
  const double im = 1.0 - 2.0 * ((idx >> 1) & 1);
  const double re = 1.0 - 2.0 * (idx & 1);
  return {re, im};
}

}  // namespace

std::vector<uint8_t> detect_ml_direct(std::span<const Complex> r1, Complex h1) {
  if (h1 == Complex{0.0, 0.0})
    throw std::invalid_argument("detect_ml_direct: h1 must be nonzero");
  std::vector<uint8_t> bits(2 * r1.size());
  for (size_t k = 0; k < r1.size(); ++k) {
    // argmin |h1 x - r1| over the 4 points == sign slicing of r1/h1.
    const Complex z = r1[k] / h1;
    bits[2 * k] = z.imag() < 0.0 ? 1 : 0;
    bits[2 * k + 1] = z.real() < 0.0 ? 1 : 0;
  }
  return bits;
}

std::vector<uint8_t> detect_ml_all_links(std::span<const Complex> r1,
                                         std::span<const Complex> r2, Complex h1,
                                         Complex h2) {
  std::vector<uint8_t> bits(2 * r1.size());
  for (size_t k = 0; k < r1.size(); ++k) {
    int best = 0;
    double best_metric = 0.0;
    for (int idx = 0; idx < 4; ++idx) {
      const Complex x = point_of(idx);
      const double metric = std::norm(h1 * x - r1[k]) + std::norm(h2 * x - r2[k]);
      if (idx == 0 || metric < best_metric) {
        best = idx;
        best_metric = metric;
      }
    }
    bits[2 * k] = static_cast<uint8_t>((best >> 1) & 1);
    bits[2 * k + 1] = static_cast<uint8_t>(best & 1);
  }
  return bits;
}

std::vector<uint8_t> detect_df_chanest(std::span<const Complex> r1,
                                       std::span<const Complex> r2, Complex h1,
                                       Complex* h2_estimate) {
  std::vector<uint8_t> stage1 = detect_ml_direct(r1, h1);
  std::vector<Complex> x_hat = modulate_qam4_gray(stage1);
  // Least squares h2 = sum conj(x) r2 / sum |x|^2; the denominator is 2N
  // because every constellation point has |x|^2 = 2.
  Complex num{0.0, 0.0};
  double den = 0.0;
  for (size_t k = 0; k < x_hat.size(); ++k) {
    num += std::conj(x_hat[k]) * r2[k];
    den += std::norm(x_hat[k]);
  }
  const Complex h2 = num / den;
  if (h2_estimate != nullptr) *h2_estimate = h2;
  return detect_ml_all_links(r1, r2, h1, h2);
}

WorkSummary estimate_work(const ReceiverReport& report) {
  return {report.simplex_iterations, report.branch_nodes, report.rows_at_final_solve,
          report.cuts_added};
}

}  // namespace relaylp
