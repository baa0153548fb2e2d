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

#include "hybrid_relay/policy_engine.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hybrid_relay/lp_oracle.h"

namespace hybrid_relay {
namespace {

// Fractions computed within a case interval may stray outside [0, 1] by
// round-off only.
double Clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

// Sets region r to "a w.p. num/den, b otherwise", or to silent when the
// region itself has no mass (den == 0).
void SetRatioMix(Policy& policy, Region r, Mode a, double num, double den,
                 Mode b) {
  if (den <= 0.0) {
    policy.SetDeterministic(r, Mode::kSilent);
    policy.MarkDegenerate(r);
    return;
  }
  policy.SetMix(r, a, num / den, b);
}

}  // namespace

std::string_view Name(StatCase c) {
  switch (c) {
    case StatCase::kPsi1:
      return "Psi1";
    case StatCase::kPsi2:
      return "Psi2";
    case StatCase::kPsi3:
      return "Psi3";
    case StatCase::kPsi4:
      return "Psi4";
    case StatCase::kPsi5:
      return "Psi5";
  }
  return "?";
}

std::string_view Name(BaselineKind k) {
  switch (k) {
    case BaselineKind::kHdOptimal:
      return "hd-optimal";
    case BaselineKind::kFdAlways:
      return "fd-always";
    case BaselineKind::kFdPreferred:
      return "fd-preferred";
  }
  return "?";
}

StatCase ClassifyCase(const RegionProbabilities& rp) {
  const double s = rp.r4() + rp.r5();
  const double b = rp.r3();
  if (b <= s - rp.r1() - rp.r2()) return StatCase::kPsi1;
  if (b <= s - rp.r2()) return StatCase::kPsi2;
  if (b <= s + rp.r2()) return StatCase::kPsi3;
  if (b <= s + rp.r2() + rp.r1()) return StatCase::kPsi4;
  return StatCase::kPsi5;
}

Policy::Policy() {
  for (auto& row : prob_) row = {0.0, 0.0, 0.0, 1.0};
}

void Policy::SetRow(Region r, const Row& row) {
  for (double v : row) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("policy entry outside [0, 1]");
    }
  }
  prob_[Index(r)] = row;
}

void Policy::SetDeterministic(Region r, Mode m) {
  Row row{};
  row[Index(m)] = 1.0;
  prob_[Index(r)] = row;
}

void Policy::SetMix(Region r, Mode a, double p, Mode b) {
  p = Clamp01(p);
  Row row{};
  row[Index(a)] += p;
  row[Index(b)] += 1.0 - p;
  prob_[Index(r)] = row;
}

bool Policy::IsRowStochastic(double tol) const {
  for (const Row& row : prob_) {
    double sum = 0.0;
    for (double v : row) {
      if (v < 0.0 || v > 1.0) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

LinkRates EvaluatePolicy(const Policy& policy, const RegionProbabilities& rp,
                         double r0) {
  LinkRates rates;
  for (Region r : kAllRegions) {
    const ModeViability o = Viability(r);
    const double p = rp[r];
    const double fd = o.o3 ? policy(r, Mode::kFullDuplex) : 0.0;
    rates.arrival += p * ((o.o1 ? policy(r, Mode::kHdReceive) : 0.0) + fd);
    rates.departure += p * ((o.o2 ? policy(r, Mode::kHdTransmit) : 0.0) + fd);
  }
  rates.arrival *= r0;
  rates.departure *= r0;
  return rates;
}

Policy OptimalPolicy(const RegionProbabilities& rp) {
  const double p1 = rp.r1(), p2 = rp.r2(), p3 = rp.r3();
  const double s = rp.r4() + rp.r5();
  Policy policy;
  auto set_r45 = [&](Mode m) {
    policy.SetDeterministic(Region::kR4, m);
    policy.SetDeterministic(Region::kR5, m);
  };
  switch (ClassifyCase(rp)) {
    case StatCase::kPsi1: {
      // Even all-M2 cannot drain what R4/R5 could feed; throttle arrivals.
      policy.SetDeterministic(Region::kR1, Mode::kHdTransmit);
      policy.SetDeterministic(Region::kR2, Mode::kHdTransmit);
      policy.SetDeterministic(Region::kR3, Mode::kHdTransmit);
      if (s > 0.0) {
        const double p41 = Clamp01((p1 + p2 + p3) / s);
        policy.SetMix(Region::kR4, Mode::kHdReceive, p41, Mode::kSilent);
        policy.SetMix(Region::kR5, Mode::kHdReceive, p41, Mode::kSilent);
      } else {
        set_r45(Mode::kSilent);
        policy.MarkDegenerate(Region::kR4);
        policy.MarkDegenerate(Region::kR5);
      }
      break;
    }
    case StatCase::kPsi2:
      SetRatioMix(policy, Region::kR1, Mode::kHdTransmit, s - p2 - p3, p1,
                  Mode::kFullDuplex);
      policy.SetDeterministic(Region::kR2, Mode::kHdTransmit);
      policy.SetDeterministic(Region::kR3, Mode::kHdTransmit);
      set_r45(Mode::kHdReceive);
      break;
    case StatCase::kPsi3:
      policy.SetDeterministic(Region::kR1, Mode::kFullDuplex);
      // R2 splits between receive and transmit so that the HD-only flows
      // balance: s + p2 (1 - x) = p3 + p2 x.
      SetRatioMix(policy, Region::kR2, Mode::kHdTransmit, p2 + s - p3,
                  2.0 * p2, Mode::kHdReceive);
      policy.SetDeterministic(Region::kR3, Mode::kHdTransmit);
      set_r45(Mode::kHdReceive);
      break;
    case StatCase::kPsi4:
      SetRatioMix(policy, Region::kR1, Mode::kHdReceive, p3 - p2 - s, p1,
                  Mode::kFullDuplex);
      policy.SetDeterministic(Region::kR2, Mode::kHdReceive);
      policy.SetDeterministic(Region::kR3, Mode::kHdTransmit);
      set_r45(Mode::kHdReceive);
      break;
    case StatCase::kPsi5:
      policy.SetDeterministic(Region::kR1, Mode::kHdReceive);
      policy.SetDeterministic(Region::kR2, Mode::kHdReceive);
      SetRatioMix(policy, Region::kR3, Mode::kHdTransmit, p1 + p2 + s, p3,
                  Mode::kSilent);
      set_r45(Mode::kHdReceive);
      break;
  }
  policy.SetDeterministic(Region::kR6, Mode::kSilent);
  // Rows of regions that never occur carry no weight; report them silent.
  for (Region r : kAllRegions) {
    if (rp[r] == 0.0) policy.SetDeterministic(r, Mode::kSilent);
  }
  return policy;
}

ThroughputReport ClosedFormThroughput(const RegionProbabilities& rp,
                                      double r0) {
  const StatCase c = ClassifyCase(rp);
  const double s = rp.r4() + rp.r5();
  double t = 0.0;
  switch (c) {
    case StatCase::kPsi1:
    case StatCase::kPsi2:
      t = rp.r1() + rp.r2() + rp.r3();
      break;
    case StatCase::kPsi3:
      t = rp.r1() + (rp.r2() + rp.r3() + s) / 2.0;
      break;
    case StatCase::kPsi4:
    case StatCase::kPsi5:
      t = rp.r1() + rp.r2() + s;
      break;
  }
  t *= r0;
  return ThroughputReport{
      .throughput = t, .stat_case = c, .arrival_rate = t, .departure_rate = t};
}

namespace {

BaselineResult HdOptimal(const RegionProbabilities& rp, double r0) {
  // A: receive-only mass, B: transmit-only mass, C: mass where either HD
  // direction works and must be split between them.
  const double a = rp.r4() + rp.r5();
  const double b = rp.r3();
  const double c = rp.r1() + rp.r2();
  BaselineResult out;
  Policy& policy = out.policy;
  if (a >= b + c) {
    policy.SetDeterministic(Region::kR1, Mode::kHdTransmit);
    policy.SetDeterministic(Region::kR2, Mode::kHdTransmit);
    policy.SetDeterministic(Region::kR3, Mode::kHdTransmit);
    if (a > 0.0) {
      policy.SetMix(Region::kR4, Mode::kHdReceive, (b + c) / a, Mode::kSilent);
      policy.SetMix(Region::kR5, Mode::kHdReceive, (b + c) / a, Mode::kSilent);
    }
    out.throughput = (b + c) * r0;
  } else if (b >= a + c) {
    policy.SetDeterministic(Region::kR1, Mode::kHdReceive);
    policy.SetDeterministic(Region::kR2, Mode::kHdReceive);
    policy.SetDeterministic(Region::kR4, Mode::kHdReceive);
    policy.SetDeterministic(Region::kR5, Mode::kHdReceive);
    policy.SetMix(Region::kR3, Mode::kHdTransmit, (a + c) / b, Mode::kSilent);
    out.throughput = (a + c) * r0;
  } else {
    // |a - b| < c, so c > 0: a + c (1 - x) = b + c x.
    const double x = (a + c - b) / (2.0 * c);
    policy.SetMix(Region::kR1, Mode::kHdTransmit, x, Mode::kHdReceive);
    policy.SetMix(Region::kR2, Mode::kHdTransmit, x, Mode::kHdReceive);
    policy.SetDeterministic(Region::kR3, Mode::kHdTransmit);
    policy.SetDeterministic(Region::kR4, Mode::kHdReceive);
    policy.SetDeterministic(Region::kR5, Mode::kHdReceive);
    out.throughput = (a + b + c) / 2.0 * r0;
  }
  return out;
}

}  // namespace

BaselineResult BaselinePolicy(BaselineKind kind, const RegionProbabilities& rp,
                              double r0) {
  switch (kind) {
    case BaselineKind::kHdOptimal:
      return HdOptimal(rp, r0);
    case BaselineKind::kFdAlways: {
      BaselineResult out;
      out.policy.SetDeterministic(Region::kR1, Mode::kFullDuplex);
      out.throughput = rp.r1() * r0;
      return out;
    }
    case BaselineKind::kFdPreferred: {
      ModeMask mask = AllModesAllowed();
      mask[Index(Region::kR1)] = {false, false, true, false};
      const AllocationSolution sol = SolveAllocationLp(rp, r0, mask);
      return BaselineResult{.policy = sol.allocation, .throughput = sol.value};
    }
  }
  throw std::invalid_argument("unknown baseline kind");
}

}  // namespace hybrid_relay
