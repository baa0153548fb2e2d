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

#include "hybrid_relay/slot_simulator.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hybrid_relay {
namespace {

constexpr std::uint64_t kMaxTrajectorySamples = 10'000;
constexpr int kFirstDyadicCheckpoint = 10;

// One chain of slots: channel draw, mode draw, queue update.
class SlotEngine {
 public:
  SlotEngine(const SystemParams& params, const Policy& policy,
             std::uint64_t seed, BufferMode buffer)
      : sampler_(params, seed),
        thresholds_(ComputeThresholds(params)),
        r0_(params.r0),
        buffer_(buffer) {
    for (Region r : kAllRegions) {
      double acc = 0.0;
      for (Mode m : kAllModes) {
        acc += policy(r, m);
        cumulative_[Index(r)][Index(m)] = acc;
      }
    }
  }

  SlotOutcome Step() {
    const auto [g1, g2] = sampler_.Next();
    SlotOutcome s;
    s.region = Classify(thresholds_, g1, g2);
    s.mode = DrawMode(s.region);
    const ModeViability o = Viability(s.region);
    const bool fd = s.mode == Mode::kFullDuplex && o.o3;
    s.received = fd || (s.mode == Mode::kHdReceive && o.o1);
    s.attempted = fd || (s.mode == Mode::kHdTransmit && o.o2);
    if (buffer_ == BufferMode::kIdeal) {
      s.delivered = s.attempted;
      queue_ += (s.received ? r0_ : 0.0) - (s.attempted ? r0_ : 0.0);
      queue_ = std::max(queue_, 0.0);
    } else {
      s.delivered = s.attempted && queue_ >= r0_;
      queue_ += (s.received ? r0_ : 0.0) - (s.delivered ? r0_ : 0.0);
    }
    s.queue = queue_;
    return s;
  }

 private:
  Mode DrawMode(Region r) {
    const auto& cum = cumulative_[Index(r)];
    const double u = uniform_(sampler_.engine());
    for (Mode m : kAllModes) {
      if (u < cum[Index(m)]) return m;
    }
    // u landed in the round-off gap above the row sum.
    for (int j = kNumModes - 1; j >= 0; --j) {
      if (cum[j] > (j > 0 ? cum[j - 1] : 0.0)) return ModeFromIndex(j);
    }
    return Mode::kSilent;
  }

  GainSampler sampler_;
  OutageThresholds thresholds_;
  double r0_;
  BufferMode buffer_;
  double queue_ = 0.0;
  std::array<std::array<double, kNumModes>, kNumRegions> cumulative_{};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace

std::string_view Name(BufferMode b) {
  return b == BufferMode::kIdeal ? "ideal" : "strict";
}

void SimConfig::Validate() const {
  params.Validate();
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (warmup >= horizon) {
    throw std::invalid_argument("warmup must be smaller than horizon");
  }
  if (!policy.IsRowStochastic(1e-9)) {
    throw std::invalid_argument("policy is not row-stochastic");
  }
}

void RateEstimator::Add(const SlotOutcome& s) {
  ++slots_;
  received_ += s.received;
  attempted_ += s.attempted;
  delivered_ += s.delivered;
}

double RateEstimator::ArrivalRate() const {
  return slots_ ? r0_ * static_cast<double>(received_) / slots_ : 0.0;
}

double RateEstimator::DepartureRate() const {
  return slots_ ? r0_ * static_cast<double>(attempted_) / slots_ : 0.0;
}

double RateEstimator::DeliveredRate() const {
  return slots_ ? r0_ * static_cast<double>(delivered_) / slots_ : 0.0;
}

double RateEstimator::DeliveredStderr() const {
  if (slots_ == 0) return 0.0;
  const double p = static_cast<double>(delivered_) / slots_;
  return r0_ * std::sqrt(p * (1.0 - p) / slots_);
}

LinkEstimate EstimateRates(std::span<const SlotOutcome> trace, double r0) {
  RateEstimator est(r0);
  for (const SlotOutcome& s : trace) est.Add(s);
  return LinkEstimate{.est_r1 = est.ArrivalRate(),
                      .est_r2 = est.DepartureRate()};
}

SimReport Run(const SimConfig& cfg) {
  cfg.Validate();
  SlotEngine engine(cfg.params, cfg.policy, cfg.seed, cfg.buffer);
  RateEstimator est(cfg.params.r0);

  SimReport report;
  report.horizon = cfg.horizon;
  report.warmup = cfg.warmup;
  report.seed = cfg.seed;
  report.buffer = cfg.buffer;
  report.trajectory_stride =
      (cfg.horizon + kMaxTrajectorySamples - 1) / kMaxTrajectorySamples;
  report.trajectory.reserve(cfg.horizon / report.trajectory_stride + 1);

  std::vector<double> checkpoint_slots;
  std::vector<double> checkpoint_queue;
  for (std::uint64_t i = 1; i <= cfg.horizon; ++i) {
    const SlotOutcome s = engine.Step();
    if (i > cfg.warmup) {
      est.Add(s);
      ++report.region_counts[Index(s.region)];
      ++report.mode_counts[Index(s.region)][Index(s.mode)];
    }
    report.peak_queue = std::max(report.peak_queue, s.queue);
    if (i % report.trajectory_stride == 0) report.trajectory.push_back(s.queue);
    if (std::has_single_bit(i) && std::countr_zero(i) >= kFirstDyadicCheckpoint &&
        s.queue > 0.0) {
      checkpoint_slots.push_back(static_cast<double>(i));
      checkpoint_queue.push_back(s.queue);
    }
    if (i == cfg.horizon) report.final_queue = s.queue;
  }

  report.est_r1 = est.ArrivalRate();
  report.est_r2 = est.DepartureRate();
  report.est_throughput = est.DeliveredRate();
  report.throughput_stderr = est.DeliveredStderr();
  if (checkpoint_slots.size() >= 2) {
    report.queue_growth_exponent =
        LogLogSlope(checkpoint_slots, checkpoint_queue);
  }
  return report;
}

std::vector<SlotOutcome> RunTrace(const SimConfig& cfg) {
  cfg.Validate();
  SlotEngine engine(cfg.params, cfg.policy, cfg.seed, cfg.buffer);
  std::vector<SlotOutcome> trace;
  trace.reserve(cfg.horizon);
  for (std::uint64_t i = 0; i < cfg.horizon; ++i) trace.push_back(engine.Step());
  return trace;
}

double LogLogSlope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("log-log fit needs >= 2 paired points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GrowthProbe QueueGrowthProbe(const SystemParams& params, const Policy& policy,
                             const GrowthProbeConfig& probe) {
  if (probe.min_log2 < 0 || probe.max_log2 <= probe.min_log2 ||
      probe.max_log2 > 40 || probe.seeds < 1) {
    throw std::invalid_argument("invalid growth probe configuration");
  }
  params.Validate();
  const int num_points = probe.max_log2 - probe.min_log2 + 1;
  const std::uint64_t horizon = std::uint64_t{1} << probe.max_log2;

  // queue[seed][point]; each seed owns its engine and its row.
  std::vector<std::vector<double>> queue(probe.seeds,
                                         std::vector<double>(num_points, 0.0));
  auto run_seed = [&](int s) {
    SlotEngine engine(params, policy, probe.base_seed + s, probe.buffer);
    int point = 0;
    for (std::uint64_t i = 1; i <= horizon; ++i) {
      const SlotOutcome out = engine.Step();
      if (i == (std::uint64_t{1} << (probe.min_log2 + point))) {
        queue[s][point++] = out.queue;
      }
    }
  };

  unsigned workers = probe.threads > 0 ? probe.threads
                                       : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, probe.seeds);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int s = static_cast<int>(w); s < probe.seeds;
             s += static_cast<int>(workers)) {
          run_seed(s);
        }
      });
    }
  }

  GrowthProbe out;
  for (int p = 0; p < num_points; ++p) {
    double sum = 0.0;
    for (int s = 0; s < probe.seeds; ++s) sum += queue[s][p];
    out.horizons.push_back(std::uint64_t{1} << (probe.min_log2 + p));
    out.mean_queue.push_back(sum / probe.seeds);
    if (!(out.mean_queue.back() > 0.0)) out.degenerate = true;
  }
  if (!out.degenerate) {
    std::vector<double> xs(out.horizons.begin(), out.horizons.end());
    out.exponent = LogLogSlope(xs, out.mean_queue);
  }
  return out;
}

}  // namespace hybrid_relay
