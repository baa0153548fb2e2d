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

// Slotted Monte Carlo simulation of the relay buffer.
//
// Each slot: draw (g1, g2), classify the region, draw a mode from the policy
// row, apply the region's success indicators, update the queue. M1 enqueues
// r0 bits, M2 dequeues r0, M3 does both (the forwarded bits are ones already
// buffered before the slot), M4 does nothing.

#ifndef HYBRID_RELAY_SLOT_SIMULATOR_H_
#define HYBRID_RELAY_SLOT_SIMULATOR_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hybrid_relay/channel_model.h"
#include "hybrid_relay/policy_engine.h"

namespace hybrid_relay {

enum class BufferMode {
  // Departures succeed whenever the R-D link does; the queue is floored at
  // zero. This is the infinite-backlog abstraction of the analysis.
  kIdeal,
  // A departure needs q >= r0 at the start of the slot.
  kStrict,
};

std::string_view Name(BufferMode b);

struct SimConfig {
  SystemParams params;
  Policy policy;
  std::uint64_t horizon = 1'000'000;
  std::uint64_t seed = 1;
  BufferMode buffer = BufferMode::kIdeal;
  std::uint64_t warmup = 10'000;

  void Validate() const;
};

struct SlotOutcome {
  Region region = Region::kR6;
  Mode mode = Mode::kSilent;
  bool received = false;   // r0 bits entered the buffer
  bool attempted = false;  // R-D transmission succeeded at the PHY
  bool delivered = false;  // r0 bits actually reached D
  double queue = 0.0;      // after the slot
};

// Running sums of the per-slot rate summands.
class RateEstimator {
 public:
  explicit RateEstimator(double r0) : r0_(r0) {}

  void Add(const SlotOutcome& s);

  std::uint64_t slots() const { return slots_; }
  // Mean of [d1 O1 + d3 O3] r0.
  double ArrivalRate() const;
  // Mean of [d2 O2 + d3 O3] r0.
  double DepartureRate() const;
  double DeliveredRate() const;
  // Standard error of DeliveredRate() for i.i.d. Bernoulli slots.
  double DeliveredStderr() const;

 private:
  double r0_;
  std::uint64_t slots_ = 0;
  std::uint64_t received_ = 0;
  std::uint64_t attempted_ = 0;
  std::uint64_t delivered_ = 0;
};

struct LinkEstimate {
  double est_r1 = 0.0;
  double est_r2 = 0.0;
};

LinkEstimate EstimateRates(std::span<const SlotOutcome> trace, double r0);

struct SimReport {
  std::uint64_t horizon = 0;
  std::uint64_t warmup = 0;
  std::uint64_t seed = 0;
  BufferMode buffer = BufferMode::kIdeal;
  double est_r1 = 0.0;
  double est_r2 = 0.0;
  double est_throughput = 0.0;
  double throughput_stderr = 0.0;
  std::array<std::array<std::uint64_t, kNumModes>, kNumRegions> mode_counts{};
  std::array<std::uint64_t, kNumRegions> region_counts{};
  double final_queue = 0.0;
  double peak_queue = 0.0;
  // Queue after every `trajectory_stride`-th slot (all slots, incl. warmup).
  std::uint64_t trajectory_stride = 1;
  std::vector<double> trajectory;
  // Slope of log q against log slot over the dyadic slots 2^10, 2^11, ...
  // of this run; empty when fewer than two of them have a non-empty queue.
  std::optional<double> queue_growth_exponent;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

// Deterministic in cfg (including seed).
SimReport Run(const SimConfig& cfg);

// Every slot of a run; for tests and small horizons.
std::vector<SlotOutcome> RunTrace(const SimConfig& cfg);

struct GrowthProbeConfig {
  int min_log2 = 14;
  int max_log2 = 20;
  int seeds = 100;
  std::uint64_t base_seed = 1;
  BufferMode buffer = BufferMode::kStrict;
  int threads = 0;  // 0: hardware concurrency
};

struct GrowthProbe {
  double exponent = 0.0;
  bool degenerate = false;  // E[Q] is zero somewhere; no exponent
  std::vector<std::uint64_t> horizons;
  std::vector<double> mean_queue;
};

// Fits log E[Q(N)] against log N over dyadic N, averaging Q(N) across
// independent seeds. A balanced policy makes the queue a driftless reflected
// walk (exponent 1/2); positive drift gives exponent 1.
GrowthProbe QueueGrowthProbe(const SystemParams& params, const Policy& policy,
                             const GrowthProbeConfig& probe = {});

// Least-squares slope of log(y) against log(x).
double LogLogSlope(std::span<const double> x, std::span<const double> y);

}  // namespace hybrid_relay

#endif  // HYBRID_RELAY_SLOT_SIMULATOR_H_
