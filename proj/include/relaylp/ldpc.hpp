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
#include <string>
#include <vector>

namespace relaylp {

class CounterRng;

// Sparse binary parity check matrix, kept as per-row and per-column sorted
// neighbor lists (the sets N_m and their transpose).
class ParityCheckMatrix {
 public:
  ParityCheckMatrix() = default;

  // Builds from per-row neighbor lists; columns lists are derived.  Throws
  // std::invalid_argument on empty rows, repeated indices, or range errors.
  static ParityCheckMatrix from_rows(int n_cols, std::vector<std::vector<int>> rows);

  int n_cols() const { return n_cols_; }
  int n_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<int>& row_neighbors(int m) const { return rows_[m]; }
  const std::vector<int>& col_neighbors(int n) const { return cols_[n]; }
  int row_weight(int m) const { return static_cast<int>(rows_[m].size()); }
  int max_row_weight() const;
  long total_ones() const;

  bool operator==(const ParityCheckMatrix& other) const {
    return n_cols_ == other.n_cols_ && rows_ == other.rows_;
  }

 private:
  int n_cols_ = 0;
  std::vector<std::vector<int>> rows_;
  std::vector<std::vector<int>> cols_;
};

// Regular LDPC construction in the Gallager permutation-block style: every
// column gets exactly col_weight edges, every row exactly row_weight, via a
// seeded random matching of edge stubs, followed by duplicate-edge repair
// and best-effort 4-cycle reduction swaps.  Deterministic in the seed.
// Requires n * col_weight divisible by row_weight.
ParityCheckMatrix gallager_construct(int n, int col_weight, int row_weight,
                                     uint64_t seed);

// alist interchange text (dims, max weights, per-node degree lists,
// per-node 1-indexed neighbor lists).
std::string save_alist(const ParityCheckMatrix& h);
// Throws std::runtime_error naming the offending line on malformed input.
ParityCheckMatrix load_alist(const std::string& text);
ParityCheckMatrix load_alist_file(const std::string& path);
void save_alist_file(const ParityCheckMatrix& h, const std::string& path);

// H * f == 0 over GF(2)?
bool check_codeword(const ParityCheckMatrix& h, std::span<const uint8_t> f);

// Systematic encoder obtained by GF(2) Gaussian elimination of H into
// [A | I] under a column permutation.  Rank deficits shrink the message.
class Encoder {
 public:
  int code_length() const { return n_; }
  int rank() const { return rank_; }
  int message_length() const { return n_ - rank_; }

  // message.size() == message_length(); returns N_c codeword bits with
  // H * codeword == 0.
  std::vector<uint8_t> encode(std::span<const uint8_t> message) const;

 private:
  friend Encoder systematize(const ParityCheckMatrix& h);
  int n_ = 0;
  int rank_ = 0;
  std::vector<int> message_cols_;           // size message_length()
  std::vector<int> parity_cols_;            // size rank()
  std::vector<std::vector<uint64_t>> a_;    // rank x message bit rows
};

Encoder systematize(const ParityCheckMatrix& h);

// One Feldman parity inequality: for check m and odd-cardinality
// F subset of N_m,  sum_{n in F} f[n] - sum_{n in N_m \ F} f[n] <= |F| - 1.
struct ParityCut {
  int check = 0;
  std::vector<int> subset_f;  // sorted, odd size

  bool operator==(const ParityCut& other) const = default;
};

// All 2^(d_m - 1) odd subsets for every check.  Refuses rows with weight
// above 24 (count overflow guard): desk-scale H only.
std::vector<ParityCut> enumerate_parity_inequalities(const ParityCheckMatrix& h);

// Sum over checks of 2^(d_m - 1), without materializing anything.
uint64_t count_parity_inequalities(const ParityCheckMatrix& h);

// LHS - (|F| - 1) of the cut at the point f.
double cut_violation(const ParityCut& cut, const ParityCheckMatrix& h,
                     std::span<const double> f);

// Separation oracle: per check, the most violated parity inequality if its
// violation exceeds tol; at most one cut per check.  Input values are
// clamped to [0, 1].  For check m this takes O(d_m) time: take
// F = {n : f[n] > 1/2} and, if |F| is even, toggle the member whose
// toggle costs the least violation (the f closest to 1/2, ties to the
// lowest variable index).
std::vector<ParityCut> find_violated_cuts(const ParityCheckMatrix& h,
                                          std::span<const double> f, double tol);

// Per-bit log-likelihood ratios log Pr(r|f=0)/Pr(r|f=1) for the direct
// link under the 4-QAM Gray mapping: gamma has length 2N with
// gamma[2k]   = (4/sigma^2) * Im{conj(h1) r1[k]}   (bit driving Im{x[k]})
// gamma[2k+1] = (4/sigma^2) * Re{conj(h1) r1[k]}   (bit driving Re{x[k]})
// in 0-indexed stream order.  noise_var must be positive.
std::vector<double> direct_llr(std::span<const std::complex<double>> r1,
                               std::complex<double> h1, double noise_var);

}  // namespace relaylp
