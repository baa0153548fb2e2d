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

#include "hybrid_relay/lp_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hybrid_relay {

ModeMask AllModesAllowed() {
  ModeMask mask;
  for (auto& row : mask) row.fill(true);
  return mask;
}

ModeMask HalfDuplexOnly() {
  ModeMask mask = AllModesAllowed();
  for (auto& row : mask) row[Index(Mode::kFullDuplex)] = false;
  return mask;
}

ViabilityTable StandardViability() {
  ViabilityTable table;
  for (Region r : kAllRegions) table[Index(r)] = Viability(r);
  return table;
}

AllocationSolution SolveAllocationLp(const AllocationProblem& problem) {
  struct Column {
    Region region;
    Mode mode;
  };
  std::vector<Column> columns;
  for (Region r : kAllRegions) {
    bool any = false;
    for (Mode m : kAllModes) {
      if (!problem.allowed[Index(r)][Index(m)]) continue;
      columns.push_back({r, m});
      any = true;
    }
    if (!any) {
      throw std::invalid_argument("no allowed mode in region " +
                                  std::string(Name(r)));
    }
  }

  const int n = static_cast<int>(columns.size());
  const int m = 1 + kNumRegions;
  std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
  std::vector<double> b(m, 0.0);
  std::vector<double> c(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const auto [r, mode] = columns[j];
    const ModeViability& o = problem.viability[Index(r)];
    const double p = problem.rp[r];
    const bool ok = o.Succeeds(mode);
    if (ok && (mode == Mode::kHdTransmit || mode == Mode::kFullDuplex)) {
      c[j] = p * problem.r0;
    }
    if (ok && mode == Mode::kHdReceive) a[0][j] = p;
    if (ok && mode == Mode::kHdTransmit) a[0][j] = -p;
    a[1 + Index(r)][j] = 1.0;
  }
  for (int k = 0; k < kNumRegions; ++k) b[1 + k] = 1.0;

  DenseSimplex lp(std::move(a), std::move(b), std::move(c));
  const LpSolution sol = lp.Solve();

  AllocationSolution out;
  out.status = sol.status;
  if (sol.status != LpStatus::kOptimal) return out;
  out.value = sol.objective;

  std::array<Policy::Row, kNumRegions> rows{};
  for (int j = 0; j < n; ++j) {
    const double x = sol.x[j];
    if (x > 1e-12) ++out.support;
    const auto [r, mode] = columns[j];
    const bool ok = problem.viability[Index(r)].Succeeds(mode);
    rows[Index(r)][Index(ok ? mode : Mode::kSilent)] += x;
  }
  for (Region r : kAllRegions) {
    Policy::Row row = rows[Index(r)];
    double sum = 0.0;
    for (double& v : row) {
      v = std::clamp(v, 0.0, 1.0);
      sum += v;
    }
    if (sum > 0.0) {
      for (double& v : row) v /= sum;
    } else {
      row = {0.0, 0.0, 0.0, 1.0};
    }
    out.allocation.SetRow(r, row);
  }
  return out;
}

AllocationSolution SolveAllocationLp(const RegionProbabilities& rp, double r0,
                                     const ModeMask& allowed) {
  return SolveAllocationLp(
      AllocationProblem{.rp = rp, .r0 = r0, .allowed = allowed});
}

double SelectionFunction(Region r, Mode m, double alpha0, double r0) {
  const ModeViability o = Viability(r);
  switch (m) {
    case Mode::kHdReceive:
      return alpha0 * (o.o1 ? 1.0 : 0.0) * r0;
    case Mode::kHdTransmit:
      return (1.0 - alpha0) * (o.o2 ? 1.0 : 0.0) * r0;
    case Mode::kFullDuplex:
      return (o.o3 ? 1.0 : 0.0) * r0;
    case Mode::kSilent:
      return 0.0;
  }
  return 0.0;
}

Certification Certify(const Policy& policy, const RegionProbabilities& rp,
                      double alpha0, double r0, double tol) {
  Certification out;
  for (Region r : kAllRegions) {
    if (rp[r] <= 0.0) continue;
    double best = -std::numeric_limits<double>::infinity();
    for (Mode m : kAllModes) best = std::max(best, SelectionFunction(r, m, alpha0, r0));
    for (Mode m : kAllModes) {
      if (policy(r, m) <= 0.0) continue;
      const double gap = best - SelectionFunction(r, m, alpha0, r0);
      if (gap > tol) out.violations.push_back({r, m, gap});
    }
  }
  out.certified = out.violations.empty();
  return out;
}

double CaseMultiplier(StatCase c) {
  switch (c) {
    case StatCase::kPsi1:
    case StatCase::kPsi2:
      return 0.0;
    case StatCase::kPsi3:
      return 0.5;
    case StatCase::kPsi4:
    case StatCase::kPsi5:
      return 1.0;
  }
  return 0.0;
}

OracleComparison CompareWithOracle(const RegionProbabilities& rp, double r0) {
  OracleComparison out;
  const ThroughputReport analytic = ClosedFormThroughput(rp, r0);
  const Policy policy = OptimalPolicy(rp);
  const AllocationSolution lp = SolveAllocationLp(rp, r0);
  const LinkRates rates = EvaluatePolicy(policy, rp, r0);

  out.stat_case = analytic.stat_case;
  out.lp_optimum = lp.value;
  out.closed_form = analytic.throughput;
  out.gap = std::abs(lp.value - analytic.throughput);
  out.policy_objective = rates.departure;
  out.policy_gap = std::abs(lp.value - rates.departure);
  out.balance_residual = std::abs(rates.Imbalance());
  out.policy_row_stochastic = policy.IsRowStochastic();
  out.certified = Certify(policy, rp, CaseMultiplier(analytic.stat_case), r0)
                      .certified;
  out.lp_support = lp.support;
  return out;
}

Policy InjectTypo(Policy policy, TableTypo typo) {
  const Region r =
      typo == TableTypo::kFullDuplexInR2 ? Region::kR2 : Region::kR3;
  const Mode from = typo == TableTypo::kFullDuplexInR2 ? Mode::kHdReceive
                                                       : Mode::kHdTransmit;
  const Mode to = typo == TableTypo::kFullDuplexInR2 ? Mode::kFullDuplex
                                                     : Mode::kHdReceive;
  Policy::Row row = policy.row(r);
  row[Index(to)] += row[Index(from)];
  row[Index(from)] = 0.0;
  policy.SetRow(r, row);
  return policy;
}

bool DetectsFaultyPolicy(const Policy& policy, const RegionProbabilities& rp,
                         double tol) {
  const LinkRates rates = EvaluatePolicy(policy, rp, 1.0);
  const double alpha0 = CaseMultiplier(ClassifyCase(rp));
  return std::abs(rates.Imbalance()) > tol ||
         !Certify(policy, rp, alpha0, 1.0, tol).certified;
}

}  // namespace hybrid_relay
