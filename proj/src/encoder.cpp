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
#include <stdexcept>
#include <vector>

#include "relaylp/ldpc.hpp"

namespace relaylp {
namespace {

inline bool get_bit(const std::vector<uint64_t>& row, int c) {
  return (row[c >> 6] >> (c & 63)) & 1;
}
inline void xor_rows(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src) {
  for (size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

}  // namespace

Encoder systematize(const ParityCheckMatrix& h) {
  const int n = h.n_cols();
  const int m = h.n_rows();
  const int words = (n + 63) / 64;

  // Dense GF(2) Gauss-Jordan with column pivoting: H P -> [A | I] up to the
  // recorded permutation.
  std::vector<std::vector<uint64_t>> rows(m, std::vector<uint64_t>(words, 0));
  for (int r = 0; r < m; ++r)
    for (int c : h.row_neighbors(r)) rows[r][c >> 6] |= 1ULL << (c & 63);

  std::vector<int> pivot_col;   // pivot column of each reduced row
  std::vector<int> pivot_row;
  std::vector<uint8_t> col_used(n, 0);
  int rank = 0;
  for (int c = 0; c < n && rank < m; ++c) {
    int sel = -1;
    for (int r = rank; r < m; ++r)
      if (get_bit(rows[r], c)) { sel = r; break; }
    if (sel < 0) continue;
    std::swap(rows[sel], rows[rank]);
    for (int r = 0; r < m; ++r)
      if (r != rank && get_bit(rows[r], c)) xor_rows(rows[r], rows[rank]);
    pivot_col.push_back(c);
    pivot_row.push_back(rank);
    col_used[c] = 1;
    ++rank;
  }

  Encoder enc;
  enc.n_ = n;
  enc.rank_ = rank;
  enc.parity_cols_ = pivot_col;
  for (int c = 0; c < n; ++c)
    if (!col_used[c]) enc.message_cols_.push_back(c);

  // Row r of the reduced system reads: bit[pivot_col[r]] = sum of message
  // bits it touches.  Store those message-column masks.
  const int k = static_cast<int>(enc.message_cols_.size());
  const int kwords = (k + 63) / 64;
  enc.a_.assign(rank, std::vector<uint64_t>(kwords, 0));
  for (int r = 0; r < rank; ++r) {
    for (int t = 0; t < k; ++t)
      if (get_bit(rows[r], enc.message_cols_[t])) enc.a_[r][t >> 6] |= 1ULL << (t & 63);
  }
  return enc;
}

std::vector<uint8_t> Encoder::encode(std::span<const uint8_t> message) const {
  if (static_cast<int>(message.size()) != message_length())
    throw std::invalid_argument("Encoder::encode: message length mismatch");
  std::vector<uint8_t> cw(n_, 0);
  for (size_t t = 0; t < message.size(); ++t) cw[message_cols_[t]] = message[t] & 1;
  for (int r = 0; r < rank_; ++r) {
    uint64_t acc = 0;
    for (size_t t = 0; t < message.size(); ++t)
      if (message[t] & 1) acc ^= (a_[r][t >> 6] >> (t & 63)) & 1;
    cw[parity_cols_[r]] = static_cast<uint8_t>(acc & 1);
  }
  return cw;
}

}  // namespace relaylp
