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

#include "relaylp/ldpc.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "relaylp/rng.hpp"

namespace relaylp {

ParityCheckMatrix ParityCheckMatrix::from_rows(int n_cols,
                                               std::vector<std::vector<int>> rows) {
  if (n_cols <= 0) throw std::invalid_argument("ParityCheckMatrix: n_cols must be positive");
  ParityCheckMatrix h;
  h.n_cols_ = n_cols;
  h.cols_.resize(n_cols);
  for (size_t m = 0; m < rows.size(); ++m) {
    auto& r = rows[m];
    if (r.empty()) throw std::invalid_argument("ParityCheckMatrix: empty row");
    std::sort(r.begin(), r.end());
    int prev = -1;
    for (int c : r) {
      if (c < 0 || c >= n_cols)
        throw std::invalid_argument("ParityCheckMatrix: column index out of range");
      if (c == prev)
        throw std::invalid_argument("ParityCheckMatrix: repeated index within a row");
      prev = c;
      h.cols_[c].push_back(static_cast<int>(m));
    }
  }
  h.rows_ = std::move(rows);
  return h;
}

int ParityCheckMatrix::max_row_weight() const {
  int w = 0;
  for (const auto& r : rows_) w = std::max(w, static_cast<int>(r.size()));
  return w;
}

long ParityCheckMatrix::total_ones() const {
  long t = 0;
  for (const auto& r : rows_) t += static_cast<long>(r.size());
  return t;
}

namespace {

// Column owner of each edge stays fixed; rows are reassigned by swapping the
// row targets of two edges, which preserves all degrees.
struct EdgeGraph {
  int n, m, col_weight, row_weight;
  std::vector<int> edge_row;                 // edge e = c * col_weight + s
  std::vector<std::set<int>> row_cols;       // current column set per row

  int edge_col(int e) const { return e / col_weight; }

  bool swap_ok(int e1, int e2) const {
    const int r1 = edge_row[e1], r2 = edge_row[e2];
    const int c1 = edge_col(e1), c2 = edge_col(e2);
    if (r1 == r2) return false;
    return !row_cols[r1].count(c2) && !row_cols[r2].count(c1);
  }

  void swap_rows(int e1, int e2) {
    const int r1 = edge_row[e1], r2 = edge_row[e2];
    const int c1 = edge_col(e1), c2 = edge_col(e2);
    row_cols[r1].erase(c1);
    row_cols[r2].erase(c2);
    row_cols[r1].insert(c2);
    row_cols[r2].insert(c1);
    edge_row[e1] = r2;
    edge_row[e2] = r1;
  }
};

// Column pairs shared by two rows; each shared pair is one 4-cycle.
// Direct O(m^2 * w) intersection count; fine at construction scale.
long count_four_cycles(const EdgeGraph& g) {
  long cycles = 0;
  for (int r1 = 0; r1 < g.m; ++r1) {
    for (int r2 = r1 + 1; r2 < g.m; ++r2) {
      int shared = 0;
      for (int c : g.row_cols[r1]) shared += g.row_cols[r2].count(c) ? 1 : 0;
      if (shared >= 2) cycles += static_cast<long>(shared) * (shared - 1) / 2;
    }
  }
  return cycles;
}

}  // namespace

ParityCheckMatrix gallager_construct(int n, int col_weight, int row_weight,
                                     uint64_t seed) {
  if (n <= 0 || col_weight <= 0 || row_weight <= 0)
    throw std::invalid_argument("gallager_construct: weights and length must be positive");
  const long total = static_cast<long>(n) * col_weight;
  if (total % row_weight != 0)
    throw std::invalid_argument(
        "gallager_construct: n * col_weight must be divisible by row_weight");
  if (row_weight > n)
    throw std::invalid_argument("gallager_construct: row_weight exceeds code length");
  const int m = static_cast<int>(total / row_weight);
  if (col_weight > m)
    throw std::invalid_argument("gallager_construct: col_weight exceeds check count");

  CounterRng rng(seed, 0x6c647063ULL /* "ldpc" */);

  EdgeGraph g;
  g.n = n;
  g.m = m;
  g.col_weight = col_weight;
  g.row_weight = row_weight;

  // Random matching of column stubs to row stubs: row stub i belongs to row
  // i / row_weight.  A Fisher-Yates shuffle keeps it deterministic.
  std::vector<int> row_stub(total);
  for (long i = 0; i < total; ++i) row_stub[i] = static_cast<int>(i / row_weight);
  for (long i = total - 1; i > 0; --i)
    std::swap(row_stub[i], row_stub[rng.next_below(static_cast<uint64_t>(i) + 1)]);

  g.edge_row.assign(row_stub.begin(), row_stub.end());
  g.row_cols.assign(m, {});
  std::vector<int> duplicates;
  std::vector<uint8_t> is_dup(total, 0);
  for (int e = 0; e < total; ++e) {
    if (!g.row_cols[g.edge_row[e]].insert(g.edge_col(e)).second) {
      duplicates.push_back(e);
      is_dup[e] = 1;
    }
  }

  // Repair duplicate edges by swapping row targets with a random partner.
  // The set entry of a duplicated pair belongs to the earlier edge, so only
  // the partner's pair is erased.
  int guard = 0;
  while (!duplicates.empty()) {
    if (++guard > 1000)
      throw std::runtime_error("gallager_construct: duplicate repair did not converge");
    std::vector<int> still;
    for (int e : duplicates) {
      bool fixed = false;
      for (int tries = 0; tries < 4 * n && !fixed; ++tries) {
        const int e2 = static_cast<int>(rng.next_below(static_cast<uint64_t>(total)));
        if (e2 == e || is_dup[e2]) continue;
        const int r1 = g.edge_row[e], r2 = g.edge_row[e2];
        const int c1 = g.edge_col(e), c2 = g.edge_col(e2);
        if (r1 == r2 || g.row_cols[r1].count(c2) || g.row_cols[r2].count(c1)) continue;
        g.row_cols[r2].erase(c2);
        g.row_cols[r1].insert(c2);
        g.row_cols[r2].insert(c1);
        g.edge_row[e] = r2;
        g.edge_row[e2] = r1;
        is_dup[e] = 0;
        fixed = true;
      }
      if (!fixed) still.push_back(e);
    }
    duplicates = std::move(still);
  }

  // Best-effort 4-cycle reduction: when two rows share at least two columns,
  // swap one offending edge with a random partner, keeping degrees intact and
  // introducing no duplicates.
  for (int pass = 0; pass < 8; ++pass) {
    const long before = count_four_cycles(g);
    if (before == 0) break;
    bool changed = false;
    for (int r1 = 0; r1 < m; ++r1) {
      for (int r2 = r1 + 1; r2 < m; ++r2) {
        int shared_col = -1;
        int shared = 0;
        for (int c : g.row_cols[r1])
          if (g.row_cols[r2].count(c)) {
            ++shared;
            shared_col = c;
          }
        if (shared < 2) continue;
        // Move r2's edge in the last shared column somewhere else.
        int e1 = -1;
        for (int e = shared_col * col_weight; e < (shared_col + 1) * col_weight; ++e)
          if (g.edge_row[e] == r2) { e1 = e; break; }
        if (e1 < 0) continue;
        for (int tries = 0; tries < 64; ++tries) {
          const int e3 = static_cast<int>(rng.next_below(static_cast<uint64_t>(total)));
          if (e3 == e1 || !g.swap_ok(e1, e3)) continue;
          g.swap_rows(e1, e3);
          changed = true;
          break;
        }
      }
    }
    if (!changed || count_four_cycles(g) >= before) break;
  }

  std::vector<std::vector<int>> rows(m);
  for (int e = 0; e < total; ++e) rows[g.edge_row[e]].push_back(g.edge_col(e));
  return ParityCheckMatrix::from_rows(n, std::move(rows));
}

// --- alist ----------------------------------------------------------------

std::string save_alist(const ParityCheckMatrix& h) {
  std::ostringstream os;
  const int n = h.n_cols(), m = h.n_rows();
  int max_col = 0;
  for (int c = 0; c < n; ++c)
    max_col = std::max(max_col, static_cast<int>(h.col_neighbors(c).size()));
  os << n << " " << m << "\n" << max_col << " " << h.max_row_weight() << "\n";
  for (int c = 0; c < n; ++c) os << h.col_neighbors(c).size() << (c + 1 < n ? " " : "\n");
  for (int r = 0; r < m; ++r) os << h.row_neighbors(r).size() << (r + 1 < m ? " " : "\n");
  for (int c = 0; c < n; ++c) {
    const auto& list = h.col_neighbors(c);
    for (size_t k = 0; k < list.size(); ++k)
      os << list[k] + 1 << (k + 1 < list.size() ? " " : "");
    os << "\n";
  }
  for (int r = 0; r < m; ++r) {
    const auto& list = h.row_neighbors(r);
    for (size_t k = 0; k < list.size(); ++k)
      os << list[k] + 1 << (k + 1 < list.size() ? " " : "");
    os << "\n";
  }
  return os.str();
}

namespace {

struct LineReader {
  std::istringstream in;
  int line_no = 0;
  explicit LineReader(const std::string& text) : in(text) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("alist parse error at line " + std::to_string(line_no) +
                             ": " + what);
  }

  std::vector<long> next_ints(const std::string& what) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream ls(line);
      std::vector<long> vals;
      long v;
      while (ls >> v) vals.push_back(v);
      if (!ls.eof()) fail("non-numeric token while reading " + what);
      if (!vals.empty()) return vals;
    }
    ++line_no;
    fail("unexpected end of file while reading " + what);
  }
};

}  // namespace

ParityCheckMatrix load_alist(const std::string& text) {
  LineReader reader(text);
  auto header = reader.next_ints("dimensions");
  if (header.size() != 2) reader.fail("expected 'n m' header");
  const long n = header[0], m = header[1];
  if (n <= 0 || m <= 0 || n > 1000000 || m > 1000000) reader.fail("dimensions out of range");
  auto maxw = reader.next_ints("max weights");
  if (maxw.size() != 2) reader.fail("expected max column/row weights");
  auto col_w = reader.next_ints("column weights");
  if (static_cast<long>(col_w.size()) != n) reader.fail("column weight count mismatch");
  auto row_w = reader.next_ints("row weights");
  if (static_cast<long>(row_w.size()) != m) reader.fail("row weight count mismatch");

  std::vector<std::vector<int>> col_lists(n);
  for (long c = 0; c < n; ++c) {
    auto vals = reader.next_ints("column neighbor list");
    // Padded entries (zeros) are tolerated and dropped.
    while (!vals.empty() && vals.back() == 0) vals.pop_back();
    if (static_cast<long>(vals.size()) != col_w[c]) reader.fail("column degree mismatch");
    for (long v : vals) {
      if (v < 1 || v > m) reader.fail("check index overflow");
      col_lists[c].push_back(static_cast<int>(v - 1));
    }
  }
  std::vector<std::vector<int>> rows(m);
  for (long r = 0; r < m; ++r) {
    auto vals = reader.next_ints("row neighbor list");
    while (!vals.empty() && vals.back() == 0) vals.pop_back();
    if (static_cast<long>(vals.size()) != row_w[r]) reader.fail("row degree mismatch");
    for (long v : vals) {
      if (v < 1 || v > n) reader.fail("variable index overflow");
      rows[r].push_back(static_cast<int>(v - 1));
    }
  }

  ParityCheckMatrix h = ParityCheckMatrix::from_rows(static_cast<int>(n), std::move(rows));
  // Transpose consistency against the column lists in the file.
  for (long c = 0; c < n; ++c) {
    auto sorted = col_lists[c];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != h.col_neighbors(static_cast<int>(c)))
      throw std::runtime_error("alist parse error: row/column lists are inconsistent");
  }
  return h;
}

ParityCheckMatrix load_alist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open alist file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_alist(ss.str());
}

void save_alist_file(const ParityCheckMatrix& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write alist file: " + path);
  out << save_alist(h);
}

bool check_codeword(const ParityCheckMatrix& h, std::span<const uint8_t> f) {
  if (static_cast<int>(f.size()) != h.n_cols())
    throw std::invalid_argument("check_codeword: length mismatch");
  for (int m = 0; m < h.n_rows(); ++m) {
    int parity = 0;
    for (int c : h.row_neighbors(m)) parity ^= f[c] & 1;
    if (parity) return false;
  }
  return true;
}

}  // namespace relaylp
