// Copyright 2026 The hybrid_relay Authors
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

#include "hybrid_relay/simplex.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hybrid_relay {

std::string_view Name(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

DenseSimplex::DenseSimplex(std::vector<std::vector<double>> a,
                           std::vector<double> b, std::vector<double> c)
    : m_(static_cast<int>(b.size())),
      n_(static_cast<int>(c.size())),
      t_(m_ + 1, std::vector<double>(n_ + m_ + 1, 0.0)),
      basis_(m_),
      cost_(std::move(c)) {
  if (static_cast<int>(a.size()) != m_) {
    throw std::invalid_argument("constraint matrix row count mismatch");
  }
  for (int i = 0; i < m_; ++i) {
    if (static_cast<int>(a[i].size()) != n_) {
      throw std::invalid_argument("constraint matrix column count mismatch");
    }
    // Artificial basis needs b >= 0.
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) t_[i][j] = sign * a[i][j];
    t_[i][n_ + i] = 1.0;
    t_[i].back() = sign * b[i];
    basis_[i] = n_ + i;
  }
}

void DenseSimplex::Pivot(int row, int col) {
  ++pivots_;
  std::vector<double>& pr = t_[row];
  const double inv = 1.0 / pr[col];
  for (double& v : pr) v *= inv;
  pr[col] = 1.0;
  for (int i = 0; i <= m_; ++i) {
    if (i == row) continue;
    const double f = t_[i][col];
    if (f == 0.0) continue;
    for (size_t j = 0; j < pr.size(); ++j) t_[i][j] -= f * pr[j];
    t_[i][col] = 0.0;
  }
  basis_[row] = col;
}

// Objective row holds reduced costs for "maximize cost_'x" as
// z_j - c_j; a negative entry marks an improving column.
void DenseSimplex::PriceOut() {
  std::vector<double>& obj = t_[m_];
  for (int i = 0; i < m_; ++i) {
    const int bcol = basis_[i];
    if (bcol < 0) continue;
    const double cb = -obj[bcol];
    if (cb == 0.0) continue;
    for (size_t j = 0; j < obj.size(); ++j) obj[j] += cb * t_[i][j];
    obj[bcol] = 0.0;
  }
}

bool DenseSimplex::RunPhase(int num_enterable) {
  const int rhs = n_ + m_;
  for (;;) {
    int col = -1;
    for (int j = 0; j < num_enterable; ++j) {
      if (t_[m_][j] < -kPivotTolerance) {
        col = j;
        break;
      }
    }
    if (col < 0) return true;
    int row = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < 0 || t_[i][col] <= kPivotTolerance) continue;
      const double ratio = t_[i][rhs] / t_[i][col];
      if (ratio < best - kPivotTolerance ||
          (ratio <= best + kPivotTolerance && row >= 0 &&
           basis_[i] < basis_[row])) {
        best = std::min(best, ratio);
        row = i;
      }
    }
    if (row < 0) return false;
    Pivot(row, col);
  }
}

LpSolution DenseSimplex::Solve() {
  LpSolution out;
  const int rhs = n_ + m_;

  // Phase 1: maximize -(sum of artificials).
  std::vector<double>& obj = t_[m_];
  std::fill(obj.begin(), obj.end(), 0.0);
  for (int i = 0; i < m_; ++i) obj[n_ + i] = 1.0;
  PriceOut();
  RunPhase(n_ + m_);
  if (-t_[m_][rhs] > 1e-9) {
    out.status = LpStatus::kInfeasible;
    out.pivots = pivots_;
    return out;
  }

  // Drive remaining (zero-valued) artificials out of the basis; a row with
  // no usable original column is linearly dependent and is dropped.
  for (int i = 0; i < m_; ++i) {
    if (basis_[i] < n_) continue;
    int col = -1;
    for (int j = 0; j < n_; ++j) {
      if (std::abs(t_[i][j]) > kPivotTolerance) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      Pivot(i, col);
    } else {
      basis_[i] = -1;
    }
  }

  // Phase 2 over original columns only.
  std::fill(obj.begin(), obj.end(), 0.0);
  for (int j = 0; j < n_; ++j) obj[j] = -cost_[j];
  PriceOut();
  if (!RunPhase(n_)) {
    out.status = LpStatus::kUnbounded;
    out.pivots = pivots_;
    return out;
  }

  out.status = LpStatus::kOptimal;
  out.x.assign(n_, 0.0);
  for (int i = 0; i < m_; ++i) {
    if (basis_[i] >= 0 && basis_[i] < n_) {
      out.x[basis_[i]] = std::max(0.0, t_[i][rhs]);
    }
  }
  out.objective = 0.0;
  for (int j = 0; j < n_; ++j) out.objective += cost_[j] * out.x[j];
  out.basis = basis_;
  out.pivots = pivots_;
  return out;
}

}  // namespace hybrid_relay
