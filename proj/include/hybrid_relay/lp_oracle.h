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

// Independent optimality checks for mode-selection policies.
//
// The per-slot binary selection problem, once relaxed, depends on a slot only
// through its region, so it aggregates exactly into a 24-variable LP over
// x[k][j] = fraction of region-k slots given to mode j:
//
//   maximize   r0 * sum_k P_k (x[k][M2] o2(k) + x[k][M3] o3(k))
//   subject to sum_k P_k (x[k][M1] o1(k) - x[k][M2] o2(k)) = 0   (balance)
//              sum_j x[k][j] = 1                               (each k)
//              x >= 0
//
// (the FD terms appear on both sides of the balance and cancel.) The LP is
// solved with DenseSimplex, independently of the closed-form policy.
//
// The KKT side: with multiplier alpha0 on the balance row, each mode has a
// selection score V_j = {alpha0 o1, (1 - alpha0) o2, o3, 0} * r0 and an
// optimal policy only puts mass on modes attaining the per-region maximum.

#ifndef HYBRID_RELAY_LP_ORACLE_H_
#define HYBRID_RELAY_LP_ORACLE_H_

#include <array>
#include <vector>

#include "hybrid_relay/channel_model.h"
#include "hybrid_relay/policy_engine.h"
#include "hybrid_relay/simplex.h"

namespace hybrid_relay {

using ModeMask = std::array<std::array<bool, kNumModes>, kNumRegions>;
using ViabilityTable = std::array<ModeViability, kNumRegions>;

ModeMask AllModesAllowed();
// Every mode except FD.
ModeMask HalfDuplexOnly();
ViabilityTable StandardViability();

struct AllocationProblem {
  RegionProbabilities rp;
  double r0 = 1.0;
  ViabilityTable viability = StandardViability();
  // Disallowed (region, mode) pairs are removed from the LP.
  ModeMask allowed = AllModesAllowed();
};

struct AllocationSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  // Optimal x as a policy. Mass the LP put on a mode that fails in its region
  // (objective-equivalent to silence) is reported under M4.
  Policy allocation;
  // Number of strictly positive LP variables before the M4 remap.
  int support = 0;
};

// Throws std::invalid_argument when a region has no allowed mode.
AllocationSolution SolveAllocationLp(const AllocationProblem& problem);
AllocationSolution SolveAllocationLp(const RegionProbabilities& rp, double r0,
                                     const ModeMask& allowed = AllModesAllowed());

double SelectionFunction(Region r, Mode m, double alpha0, double r0 = 1.0);

struct CertificateViolation {
  Region region;
  Mode mode;
  double gap;  // max_j V_j - V_mode, > tolerance
};

struct Certification {
  bool certified = true;
  std::vector<CertificateViolation> violations;
};

// A policy is certified iff, in every region of positive probability, each
// mode with positive selection probability attains the maximal selection
// function within `tol`.
Certification Certify(const Policy& policy, const RegionProbabilities& rp,
                      double alpha0, double r0 = 1.0, double tol = 1e-9);

// Balance multiplier that certifies OptimalPolicy in each case:
// 0, 0, 1/2, 1, 1 for Psi1..Psi5. Psi5 needs exactly 1 because R3 mixes M2
// with M4, which forces (1 - alpha0) r0 == 0.
double CaseMultiplier(StatCase c);

struct OracleComparison {
  StatCase stat_case = StatCase::kPsi1;
  double lp_optimum = 0.0;
  double closed_form = 0.0;
  double gap = 0.0;  // |lp_optimum - closed_form|
  // The analytic policy evaluated as an LP point.
  double policy_objective = 0.0;
  double policy_gap = 0.0;          // |lp_optimum - policy_objective|
  double balance_residual = 0.0;    // |arrival - departure| of the policy
  bool policy_row_stochastic = false;
  bool certified = false;           // under CaseMultiplier(stat_case)
  int lp_support = 0;

  bool Agrees(double tol = 1e-9) const {
    return gap < tol && policy_gap < tol && balance_residual < tol &&
           policy_row_stochastic;
  }
};

OracleComparison CompareWithOracle(const RegionProbabilities& rp, double r0);

// Negative controls: two known-bad variants of the optimal policy table.
enum class TableTypo {
  kFullDuplexInR2,  // R2's receive share given to FD, which fails in R2
  kReceiveInR3,     // R3's transmit share given to M1, which fails in R3
};

Policy InjectTypo(Policy policy, TableTypo typo);

// True when a policy is caught either by the certificate (under the case
// multiplier) or by a balance residual above `tol`.
bool DetectsFaultyPolicy(const Policy& policy, const RegionProbabilities& rp,
                         double tol = 1e-9);

}  // namespace hybrid_relay

#endif  // HYBRID_RELAY_LP_ORACLE_H_
