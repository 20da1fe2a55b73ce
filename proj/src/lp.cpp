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

#include "relaylp/lp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace relaylp {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kUnbounded: return "Unbounded";
    case SolveStatus::kIterationLimit: return "IterationLimit";
    case SolveStatus::kNodeLimit: return "NodeLimit";
  }
  return "Unknown";
}

LpProblem::LpProblem(int num_vars)
    : num_vars_(num_vars),
      objective_(num_vars, 0.0),
      row_start_(1, 0),
      lower_(num_vars, 0.0),
      upper_(num_vars, kInf),
      integer_(num_vars, 0) {
  if (num_vars <= 0) throw std::invalid_argument("LpProblem: num_vars must be positive");
}

void LpProblem::set_objective(int var, double coef) {
  objective_.at(var) = coef;
}

void LpProblem::set_bounds(int var, double lower, double upper) {
  if (lower > upper) throw std::invalid_argument("LpProblem: lower bound exceeds upper bound");
  lower_.at(var) = lower;
  upper_.at(var) = upper;
}

void LpProblem::mark_integer(int var, bool flag) {
  integer_.at(var) = flag ? 1 : 0;
}

void LpProblem::add_row(std::span<const int> cols, std::span<const double> vals,
                        RowSense sense, double rhs) {
  if (cols.size() != vals.size())
    throw std::invalid_argument("LpProblem::add_row: cols/vals size mismatch");
  int prev = -1;
  for (size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] < 0 || cols[k] >= num_vars_)
      throw std::invalid_argument("LpProblem::add_row: column index out of range");
    if (cols[k] <= prev)
      throw std::invalid_argument("LpProblem::add_row: columns not strictly increasing");
    prev = cols[k];
    if (!std::isfinite(vals[k]))
      throw std::invalid_argument("LpProblem::add_row: non-finite coefficient");
    if (vals[k] != 0.0) {
      cols_.push_back(cols[k]);
      vals_.push_back(vals[k]);
    }
  }
  row_start_.push_back(static_cast<int>(cols_.size()));
  sense_.push_back(sense);
  rhs_.push_back(rhs);
}

void LpProblem::add_row(const SparseRow& row) {
  add_row(row.cols, row.vals, row.sense, row.rhs);
}

void LpProblem::validate() const {
  for (int j = 0; j < num_vars_; ++j) {
    if (lower_[j] > upper_[j])
      throw std::invalid_argument("LpProblem: lower bound exceeds upper bound");
    if (integer_[j] && (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j])))
      throw std::invalid_argument("LpProblem: integer variable needs finite bounds");
    if (!std::isfinite(objective_[j]))
      throw std::invalid_argument("LpProblem: non-finite objective coefficient");
  }
  for (int i = 0; i < num_rows(); ++i) {
    int prev = -1;
    for (int k = row_start_[i]; k < row_start_[i + 1]; ++k) {
      if (cols_[k] < 0 || cols_[k] >= num_vars_)
        throw std::invalid_argument("LpProblem: column index out of range");
      if (cols_[k] <= prev)
        throw std::invalid_argument("LpProblem: columns not strictly increasing");
      prev = cols_[k];
      if (vals_[k] == 0.0 || !std::isfinite(vals_[k]))
        throw std::invalid_argument("LpProblem: zero or non-finite coefficient");
    }
    if (!std::isfinite(rhs_[i]))
      throw std::invalid_argument("LpProblem: non-finite rhs");
  }
}

bool LpProblem::has_integer_vars() const {
  for (uint8_t m : integer_)
    if (m) return true;
  return false;
}

double LpProblem::row_activity(int row, std::span<const double> x) const {
  double a = 0.0;
  for (int k = row_start_[row]; k < row_start_[row + 1]; ++k) a += vals_[k] * x[cols_[k]];
  return a;
}

double LpProblem::objective_value(std::span<const double> x) const {
  double v = 0.0;
  for (int j = 0; j < num_vars_; ++j) v += objective_[j] * x[j];
  return v;
}

LpProblem append_rows(const LpProblem& p, std::span<const SparseRow> rows) {
  LpProblem out = p;
  for (const SparseRow& r : rows) out.add_row(r);
  return out;
}

namespace {

void format_terms(std::ostringstream& os, const LpProblem& p, int row) {
  const auto& rs = p.row_start();
  bool first = true;
  for (int k = rs[row]; k < rs[row + 1]; ++k) {
    double v = p.vals()[k];
    if (first) {
      os << (v < 0 ? "- " : "");
      first = false;
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    os << std::abs(v) << " x" << p.cols()[k];
  }
}

}  // namespace

std::string dump_lp_format(const LpProblem& p) {
  std::ostringstream os;
  os.precision(17);
  os << "Minimize\n obj:";
  bool first = true;
  for (int j = 0; j < p.num_vars(); ++j) {
    double c = p.objective()[j];
    if (c == 0.0) continue;
    os << (c < 0 ? (first ? " - " : " - ") : (first ? " " : " + ")) << std::abs(c) << " x" << j;
    first = false;
  }
  if (first) os << " 0";
  os << "\nSubject To\n";
  for (int i = 0; i < p.num_rows(); ++i) {
    os << " c" << i << ": ";
    format_terms(os, p, i);
    os << (p.sense()[i] == RowSense::kLessEqual ? " <= " : " = ") << p.rhs()[i] << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < p.num_vars(); ++j) {
    double lo = p.var_lower()[j], hi = p.var_upper()[j];
    if (lo == -kInf && hi == kInf) {
      os << " x" << j << " free\n";
    } else if (hi == kInf) {
      os << " " << lo << " <= x" << j << "\n";
    } else if (lo == -kInf) {
      os << " -inf <= x" << j << " <= " << hi << "\n";
    } else {
      os << " " << lo << " <= x" << j << " <= " << hi << "\n";
    }
  }
  bool any_int = p.has_integer_vars();
  if (any_int) {
    os << "Generals\n";
    for (int j = 0; j < p.num_vars(); ++j)
      if (p.integer_mask()[j]) os << " x" << j;
    os << "\n";
  }
  os << "End\n";
  return os.str();
}

}  // namespace relaylp
