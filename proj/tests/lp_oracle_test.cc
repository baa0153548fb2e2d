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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "hybrid_relay/lp_oracle.h"
#include "hybrid_relay/rp_sampling.h"

namespace hybrid_relay {
namespace {

const RegionProbabilities kPsi2({0.3, 0.1, 0.05, 0.15, 0.1, 0.3});
const RegionProbabilities kPsi3({0.2, 0.2, 0.15, 0.1, 0.05, 0.3});
const RegionProbabilities kPsi4({0.2, 0.05, 0.3, 0.05, 0.05, 0.35});
const RegionProbabilities kPsi5({0.1, 0.05, 0.5, 0.05, 0.05, 0.25});

TEST_CASE("lp optimum on hand-checked vectors") {
  const AllocationSolution a = SolveAllocationLp(kPsi2, 1.0);
  REQUIRE(a.status == LpStatus::kOptimal);
  CHECK(a.value == doctest::Approx(0.45).epsilon(1e-12));

  CHECK(SolveAllocationLp(RegionProbabilities(), 1.0).value == 0.0);

  const RegionProbabilities fd({0.5, 0, 0, 0, 0, 0.5});
  const AllocationSolution b = SolveAllocationLp(fd, 3.0);
  CHECK(b.value == doctest::Approx(1.5));
  CHECK(b.allocation(Region::kR1, Mode::kFullDuplex) == doctest::Approx(1.0));
}

TEST_CASE("lp agrees with the closed form on random vectors") {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RegionProbabilities rp = SampleDirichlet(rng);
    const OracleComparison c = CompareWithOracle(rp, 1.0);
    CHECK(c.Agrees());
    CHECK(c.certified);
    CHECK(c.lp_support <= 1 + kNumRegions);
    worst = std::max(worst, c.gap);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("lp agrees on case-boundary vectors") {
  std::mt19937_64 rng(2);
  for (const RegionProbabilities& rp : CaseBoundaryVectors(rng, 100)) {
    const OracleComparison c = CompareWithOracle(rp, 1.0);
    CHECK(c.Agrees());
    CHECK(c.certified);
  }
}

TEST_CASE("lp scales linearly with the rate") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const RegionProbabilities rp = SampleDirichlet(rng);
    CHECK(SolveAllocationLp(rp, 5.0).value ==
          doctest::Approx(5.0 * SolveAllocationLp(rp, 1.0).value).epsilon(1e-10));
  }
}

TEST_CASE("half-duplex mask reproduces the half-duplex closed form") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const RegionProbabilities rp = SampleDirichlet(rng);
    const double lp = SolveAllocationLp(rp, 1.0, HalfDuplexOnly()).value;
    const double a = rp.r4() + rp.r5();
    const double b = rp.r3();
    const double c = rp.r1() + rp.r2();
    const double closed = std::min({(a + b + c) / 2, a + c, b + c});
    CHECK(std::abs(lp - closed) < 1e-9);
    CHECK(std::abs(BaselinePolicy(BaselineKind::kHdOptimal, rp, 1.0).throughput -
                   closed) < 1e-12);
  }
}

TEST_CASE("region without allowed modes is rejected") {
  ModeMask mask = AllModesAllowed();
  mask[Index(Region::kR2)].fill(false);
  CHECK_THROWS_AS(SolveAllocationLp(kPsi2, 1.0, mask), std::invalid_argument);
}

TEST_CASE("selection functions") {
  CHECK(SelectionFunction(Region::kR2, Mode::kHdReceive, 0.5, 2.0) == 1.0);
  CHECK(SelectionFunction(Region::kR2, Mode::kHdTransmit, 0.5, 2.0) == 1.0);
  CHECK(SelectionFunction(Region::kR2, Mode::kFullDuplex, 0.5, 2.0) == 0.0);
  CHECK(SelectionFunction(Region::kR1, Mode::kFullDuplex, 0.5, 2.0) == 2.0);
  CHECK(SelectionFunction(Region::kR6, Mode::kSilent, 0.3) == 0.0);
}

TEST_CASE("certify") {
  const Policy p3 = OptimalPolicy(kPsi3);
  CHECK(Certify(p3, kPsi3, 0.5).certified);
  const Certification off = Certify(p3, kPsi3, 0.9);
  CHECK_FALSE(off.certified);
  REQUIRE_FALSE(off.violations.empty());
  CHECK(off.violations.front().region == Region::kR2);

  Policy silent;
  const RegionProbabilities r6_only({0, 0, 0, 0, 0, 1});
  for (double alpha0 : {-1.0, 0.0, 0.5, 2.0}) {
    CHECK(Certify(silent, r6_only, alpha0).certified);
  }
}

TEST_CASE("case multipliers certify every case") {
  for (const RegionProbabilities& rp : {kPsi2, kPsi3, kPsi4, kPsi5}) {
    const StatCase c = ClassifyCase(rp);
    CHECK(Certify(OptimalPolicy(rp), rp, CaseMultiplier(c)).certified);
  }
}

TEST_CASE("psi5 mixes transmit with silence so no multiplier above one works") {
  // In R3 the policy uses M2 and M4; both must score equally, which pins the
  // multiplier to one.
  const Policy p5 = OptimalPolicy(kPsi5);
  REQUIRE(p5(Region::kR3, Mode::kHdTransmit) > 0.0);
  REQUIRE(p5(Region::kR3, Mode::kSilent) > 0.0);
  CHECK_FALSE(Certify(p5, kPsi5, 2.0).certified);
  CHECK_FALSE(Certify(p5, kPsi5, 1.5).certified);
  CHECK(Certify(p5, kPsi5, 1.0).certified);
}

TEST_CASE("negative controls are caught") {
  const Policy bad_r2 = InjectTypo(OptimalPolicy(kPsi3), TableTypo::kFullDuplexInR2);
  CHECK(bad_r2.IsRowStochastic());
  CHECK(DetectsFaultyPolicy(bad_r2, kPsi3));

  const Policy bad_r3 = InjectTypo(OptimalPolicy(kPsi4), TableTypo::kReceiveInR3);
  CHECK(DetectsFaultyPolicy(bad_r3, kPsi4));

  CHECK_FALSE(DetectsFaultyPolicy(OptimalPolicy(kPsi3), kPsi3));
  CHECK_FALSE(DetectsFaultyPolicy(OptimalPolicy(kPsi4), kPsi4));
}

}  // namespace
}  // namespace hybrid_relay
