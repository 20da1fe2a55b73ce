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
//
// Joint detection (and detection-decoding) programs over one relay frame.
// Each modulus constraint |a'v - c| <= bound splits into the two rows
// a'v - bound <= c and -a'v - bound <= -c.  Bit-range and box constraints
// live in the variable bounds, not in rows.

#include <stdexcept>

#include "relaylp/receivers.hpp"

namespace relaylp {
namespace {

// Row assembly helper that drops exact zeros (the problem invariant bans
// explicit zero coefficients; h1 or r components can be exactly zero).
struct RowBuf {
  std::vector<int> cols;
  std::vector<double> vals;

  void clear() {
    cols.clear();
    vals.clear();
  }
  void push(int col, double val) {
    if (val != 0.0) {
      cols.push_back(col);
      vals.push_back(val);
    }
  }
};

void add_base_rows(LpProblem& p, const VariableLayout& lay, const RelayFrame& frame,
                   Complex h1) {
  const int n = lay.num_symbols;
  RowBuf row;
  const double h1r = h1.real(), h1i = h1.imag();
  for (int k = 0; k < n; ++k) {
    const double r1r = frame.r1[k].real(), r1i = frame.r1[k].imag();
    const double r2r = frame.r2[k].real(), r2i = frame.r2[k].imag();

    // |Re{h1 x} - Re{r1}| <= t_re
    for (double s : {1.0, -1.0}) {
      row.clear();
      row.push(lay.x_re(k), s * h1r);
      row.push(lay.x_im(k), -s * h1i);
      row.push(lay.t_re(k), -1.0);
      p.add_row(row.cols, row.vals, RowSense::kLessEqual, s * r1r);
    }
    // |Im{h1 x} - Im{r1}| <= t_im
    for (double s : {1.0, -1.0}) {
      row.clear();
      row.push(lay.x_re(k), s * h1i);
      row.push(lay.x_im(k), s * h1r);
      row.push(lay.t_im(k), -1.0);
      p.add_row(row.cols, row.vals, RowSense::kLessEqual, s * r1i);
    }
    // |Re{x - theta^H r}| <= tau_re ; Re{theta^H r} expands over the four
    // real combiner components with the received samples as coefficients.
    for (double s : {1.0, -1.0}) {
      row.clear();
      row.push(lay.x_re(k), s);
      row.push(lay.tau_re(k), -1.0);
      row.push(lay.theta(0), -s * r1r);
      row.push(lay.theta(1), -s * r1i);
      row.push(lay.theta(2), -s * r2r);
      row.push(lay.theta(3), -s * r2i);
      p.add_row(row.cols, row.vals, RowSense::kLessEqual, 0.0);
    }
    // |Im{x - theta^H r}| <= tau_im
    for (double s : {1.0, -1.0}) {
      row.clear();
      row.push(lay.x_im(k), s);
      row.push(lay.tau_im(k), -1.0);
      row.push(lay.theta(0), -s * r1i);
      row.push(lay.theta(1), s * r1r);
      row.push(lay.theta(2), -s * r2i);
      row.push(lay.theta(3), s * r2r);
      p.add_row(row.cols, row.vals, RowSense::kLessEqual, 0.0);
    }
  }
}

void add_gray_rows(LpProblem& p, const VariableLayout& lay) {
  RowBuf row;
  for (int k = 0; k < lay.num_symbols; ++k) {
    row.clear();
    row.push(lay.x_im(k), 1.0);
    row.push(lay.f(2 * k), 2.0);
    p.add_row(row.cols, row.vals, RowSense::kEqual, 1.0);
    row.clear();
    row.push(lay.x_re(k), 1.0);
    row.push(lay.f(2 * k + 1), 2.0);
    p.add_row(row.cols, row.vals, RowSense::kEqual, 1.0);
  }
}

void set_common_bounds(LpProblem& p, const VariableLayout& lay) {
  const int n = lay.num_symbols;
  for (int k = 0; k < n; ++k) {
    p.set_bounds(lay.x_re(k), -1.0, 1.0);
    p.set_bounds(lay.x_im(k), -1.0, 1.0);
    p.set_bounds(lay.t_re(k), 0.0, kInf);
    p.set_bounds(lay.t_im(k), 0.0, kInf);
    p.set_bounds(lay.tau_re(k), 0.0, kInf);
    p.set_bounds(lay.tau_im(k), 0.0, kInf);
    p.set_objective(lay.t_re(k), lay.lambda_t);
    p.set_objective(lay.t_im(k), lay.lambda_t);
    p.set_objective(lay.tau_re(k), lay.lambda_tau);
    p.set_objective(lay.tau_im(k), lay.lambda_tau);
  }
  for (int i = 0; i < 4; ++i) p.set_bounds(lay.theta(i), -kInf, kInf);
}

}  // namespace

std::pair<LpProblem, VariableLayout> build_uncoded(const RelayFrame& frame,
                                                   Complex h1, double lambda_t,
                                                   double lambda_tau, bool integer) {
  const int n = frame.num_symbols();
  if (n == 0) throw std::invalid_argument("build_uncoded: empty frame");
  VariableLayout lay;
  lay.num_symbols = n;
  lay.num_bits = integer ? 2 * n : 0;
  lay.lambda_t = lambda_t;
  lay.lambda_tau = lambda_tau;

  LpProblem p(lay.num_vars());
  set_common_bounds(p, lay);
  add_base_rows(p, lay, frame, h1);
  if (integer) {
    for (int b = 0; b < lay.num_bits; ++b) {
      p.set_bounds(lay.f(b), 0.0, 1.0);
      p.mark_integer(lay.f(b));
    }
    add_gray_rows(p, lay);
  }
  return {std::move(p), lay};
}

std::pair<LpProblem, VariableLayout> build_unified(
    const RelayFrame& frame, Complex h1, const ParityCheckMatrix& h,
    std::span<const double> gamma, double lambda_t, double lambda_tau,
    bool integer, bool include_parity) {
  const int n = frame.num_symbols();
  if (n == 0) throw std::invalid_argument("build_unified: empty frame");
  if (h.n_cols() != 2 * n)
    throw std::invalid_argument("build_unified: code length must equal 2N");
  if (static_cast<int>(gamma.size()) != 2 * n)
    throw std::invalid_argument("build_unified: LLR length must equal 2N");

  VariableLayout lay;
  lay.num_symbols = n;
  lay.num_bits = 2 * n;
  lay.lambda_t = lambda_t;
  lay.lambda_tau = lambda_tau;

  LpProblem p(lay.num_vars());
  set_common_bounds(p, lay);
  for (int b = 0; b < lay.num_bits; ++b) {
    p.set_bounds(lay.f(b), 0.0, 1.0);
    p.set_objective(lay.f(b), gamma[b]);
    if (integer) p.mark_integer(lay.f(b));
  }
  add_base_rows(p, lay, frame, h1);
  add_gray_rows(p, lay);
  if (include_parity) {
    for (const ParityCut& cut : enumerate_parity_inequalities(h))
      p.add_row(parity_cut_row(cut, h, lay));
  }
  return {std::move(p), lay};
}

SparseRow parity_cut_row(const ParityCut& cut, const ParityCheckMatrix& h,
                         const VariableLayout& layout) {
  SparseRow row;
  row.sense = RowSense::kLessEqual;
  row.rhs = static_cast<double>(cut.subset_f.size()) - 1.0;
  size_t fi = 0;
  for (int n : h.row_neighbors(cut.check)) {
    const bool in_f = fi < cut.subset_f.size() && cut.subset_f[fi] == n;
    if (in_f) ++fi;
    row.cols.push_back(layout.f(n));
    row.vals.push_back(in_f ? 1.0 : -1.0);
  }
  return row;
}

}  // namespace relaylp
