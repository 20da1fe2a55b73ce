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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "relaylp/ldpc.hpp"

namespace relaylp {

namespace {
constexpr double kInfViolation = std::numeric_limits<double>::infinity();
}

std::vector<ParityCut> enumerate_parity_inequalities(const ParityCheckMatrix& h) {
  std::vector<ParityCut> cuts;
  for (int m = 0; m < h.n_rows(); ++m) {
    const auto& nbrs = h.row_neighbors(m);
    const int d = static_cast<int>(nbrs.size());
    if (d > 24)
      throw std::invalid_argument(
          "enumerate_parity_inequalities: row weight above 24 would overflow");
    const uint32_t full = 1u << d;
    for (uint32_t mask = 1; mask < full; ++mask) {
      if ((std::popcount(mask) & 1) == 0) continue;
      ParityCut cut;
      cut.check = m;
      for (int b = 0; b < d; ++b)
        if (mask & (1u << b)) cut.subset_f.push_back(nbrs[b]);
      cuts.push_back(std::move(cut));
    }
  }
  return cuts;
}

uint64_t count_parity_inequalities(const ParityCheckMatrix& h) {
  uint64_t total = 0;
  for (int m = 0; m < h.n_rows(); ++m) {
    const int d = h.row_weight(m);
    if (d >= 64)
      throw std::invalid_argument("count_parity_inequalities: row weight overflow");
    total += 1ULL << (d - 1);
  }
  return total;
}

double cut_violation(const ParityCut& cut, const ParityCheckMatrix& h,
                     std::span<const double> f) {
  const auto& nbrs = h.row_neighbors(cut.check);
  double lhs = 0.0;
  size_t fi = 0;
  for (int n : nbrs) {
    const bool in_f = fi < cut.subset_f.size() && cut.subset_f[fi] == n;
    if (in_f) {
      lhs += f[n];
      ++fi;
    } else {
      lhs -= f[n];
    }
  }
  return lhs - (static_cast<double>(cut.subset_f.size()) - 1.0);
}

std::vector<ParityCut> find_violated_cuts(const ParityCheckMatrix& h,
                                          std::span<const double> f, double tol) {
  if (static_cast<int>(f.size()) != h.n_cols())
    throw std::invalid_argument("find_violated_cuts: length mismatch");
  std::vector<ParityCut> cuts;
  std::vector<int> members;
  for (int m = 0; m < h.n_rows(); ++m) {
    const auto& nbrs = h.row_neighbors(m);
    members.clear();
    // v(F) = sum_F f - sum_{N\F} f - |F| + 1 = sum_F (2f-1) - sum_all f + 1.
    // The unconstrained maximizer takes every entry above 1/2; an even |F|
    // is repaired by the cheapest single toggle (f closest to 1/2, ties to
    // the lowest variable index).  Toggling n in either direction costs
    // exactly |2 f[n] - 1|.
    double sum_all = 0.0;
    double gain = 0.0;
    double cheapest = kInfViolation;
    int toggle = -1;
    for (int n : nbrs) {
      const double v = std::clamp(f[n], 0.0, 1.0);
      sum_all += v;
      if (v > 0.5) {
        members.push_back(n);
        gain += 2.0 * v - 1.0;
      }
      const double cost = std::abs(2.0 * v - 1.0);
      if (cost < cheapest) {
        cheapest = cost;
        toggle = n;
      }
    }
    double violation = gain - sum_all + 1.0;
    if ((members.size() & 1) == 0) {
      if (toggle < 0) continue;
      violation -= cheapest;
      auto it = std::lower_bound(members.begin(), members.end(), toggle);
      if (it != members.end() && *it == toggle) {
        members.erase(it);
      } else {
        members.insert(it, toggle);
      }
    }
    if (violation <= tol) continue;
    ParityCut cut;
    cut.check = m;
    cut.subset_f = members;
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

std::vector<double> direct_llr(std::span<const std::complex<double>> r1,
                               std::complex<double> h1, double noise_var) {
  if (noise_var <= 0.0)
    throw std::invalid_argument("direct_llr: noise variance must be positive");
  std::vector<double> gamma(2 * r1.size());
  const double scale = 4.0 / noise_var;
  for (size_t k = 0; k < r1.size(); ++k) {
    const std::complex<double> z = std::conj(h1) * r1[k];
    gamma[2 * k] = scale * z.imag();
    gamma[2 * k + 1] = scale * z.real();
  }
  return gamma;
}

}  // namespace relaylp
