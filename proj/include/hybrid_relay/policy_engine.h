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

// Throughput-optimal hybrid FD/HD mode selection.
//
// The relay knows the region probabilities P_R1..P_R6 and, in every slot, the
// current region. A stationary policy assigns each region a probability
// distribution over the four modes. Long-run throughput is maximized when the
// buffer sits exactly on the edge of stability (arrival rate == departure
// rate); which regions have to be throttled to reach that balance depends on
// one of five orderings of P_R3 against the other region masses.

#ifndef HYBRID_RELAY_POLICY_ENGINE_H_
#define HYBRID_RELAY_POLICY_ENGINE_H_

#include <array>
#include <string_view>

#include "hybrid_relay/channel_model.h"

namespace hybrid_relay {

enum class StatCase : int { kPsi1 = 1, kPsi2, kPsi3, kPsi4, kPsi5 };

std::string_view Name(StatCase c);  // "Psi1".."Psi5"

// With S = P_R4 + P_R5:
//   Psi1: P_R3 <= S - P_R1 - P_R2        Psi4: ... <= S + P_R2 + P_R1
//   Psi2: ...  <= S - P_R2               Psi5: otherwise
//   Psi3: ...  <= S + P_R2
// A vector sitting on a boundary takes the lower-numbered case.
StatCase ClassifyCase(const RegionProbabilities& rp);

// Row-stochastic 6x4 matrix of per-region mode probabilities.
class Policy {
 public:
  using Row = std::array<double, kNumModes>;

  // All-silent.
  Policy();

  double operator()(Region r, Mode m) const {
    return prob_[Index(r)][Index(m)];
  }
  const Row& row(Region r) const { return prob_[Index(r)]; }

  void SetRow(Region r, const Row& row);
  // Puts all mass of row r on mode m.
  void SetDeterministic(Region r, Mode m);
  // Mode a w.p. p, mode b w.p. 1 - p. p is clamped into [0, 1].
  void SetMix(Region r, Mode a, double p, Mode b);

  // Rows whose defining ratio had a zero-probability denominator and were set
  // to silent instead.
  bool degenerate(Region r) const { return degenerate_[Index(r)]; }
  void MarkDegenerate(Region r) { degenerate_[Index(r)] = true; }

  bool IsRowStochastic(double tol = 1e-12) const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::array<Row, kNumRegions> prob_;
  std::array<bool, kNumRegions> degenerate_{};
};

// Expected per-slot rates (bits/slot) of a stationary policy, counting only
// successful transmissions. Throughput of a stable buffer is departure_rate;
// when arrival < departure the buffer drains and the delivered rate is
// bounded by arrivals, hence Sustainable().
struct LinkRates {
  double arrival = 0.0;    // S->R, from M1 and M3 slots
  double departure = 0.0;  // R->D, from M2 and M3 slots

  double Sustainable() const { return arrival < departure ? arrival : departure; }
  double Imbalance() const { return arrival - departure; }
};

LinkRates EvaluatePolicy(const Policy& policy, const RegionProbabilities& rp,
                         double r0);

// Regions with zero probability get a silent row.
Policy OptimalPolicy(const RegionProbabilities& rp);

struct ThroughputReport {
  double throughput = 0.0;
  StatCase stat_case = StatCase::kPsi1;
  double arrival_rate = 0.0;
  double departure_rate = 0.0;
};

ThroughputReport ClosedFormThroughput(const RegionProbabilities& rp,
                                      double r0);

enum class BaselineKind { kHdOptimal, kFdAlways, kFdPreferred };

std::string_view Name(BaselineKind k);

struct BaselineResult {
  Policy policy;
  double throughput = 0.0;
};

// Comparators for the hybrid scheme:
//   kHdOptimal   - best policy that never uses FD; closed form
//                  min((A+B+C)/2, A+C, B+C) with A = P_R4+P_R5, B = P_R3,
//                  C = P_R1+P_R2.
//   kFdAlways    - FD whenever it succeeds, silent otherwise.
//   kFdPreferred - FD forced in R1, remaining regions balanced by the LP.
BaselineResult BaselinePolicy(BaselineKind kind, const RegionProbabilities& rp,
                              double r0);

}  // namespace hybrid_relay

#endif  // HYBRID_RELAY_POLICY_ENGINE_H_
