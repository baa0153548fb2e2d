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

// Two-phase dense tableau simplex for small equality-form problems
//
//   maximize  c'x   subject to  A x = b,  x >= 0.
//
// Bland's rule (lowest eligible index enters, lowest basic index leaves on
// ratio ties) prevents cycling on the degenerate vertices that balance-type
// constraints produce.

#ifndef HYBRID_RELAY_SIMPLEX_H_
#define HYBRID_RELAY_SIMPLEX_H_

#include <string_view>
#include <vector>

namespace hybrid_relay {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view Name(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<int> basis;  // basic column per row; -1 for dropped rows
  int pivots = 0;
};

class DenseSimplex {
 public:
  static constexpr double kPivotTolerance = 1e-10;

  // `a` is row-major with a.size() == b.size() rows of c.size() columns.
  DenseSimplex(std::vector<std::vector<double>> a, std::vector<double> b,
               std::vector<double> c);

  LpSolution Solve();

 private:
  bool RunPhase(int num_enterable);
  void Pivot(int row, int col);
  void PriceOut();

  int m_;
  int n_;
  // (m_ + 1) x (n_ + m_ + 1); last row is the objective, last column the rhs.
  std::vector<std::vector<double>> t_;
  std::vector<int> basis_;
  std::vector<double> cost_;
  int pivots_ = 0;
};

}  // namespace hybrid_relay

#endif  // HYBRID_RELAY_SIMPLEX_H_
