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

#include "hybrid_relay/channel_model.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hybrid_relay {
namespace {

void RequirePositive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive, got " +
                                std::to_string(v));
  }
}

// Success indicators per region (O1, O2, O3).
constexpr std::array<ModeViability, kNumRegions> kViability = {{
    {true, true, true},
    {true, true, false},
    {false, true, false},
    {true, false, false},
    {true, false, false},
    {false, false, false},
}};

}  // namespace

std::string_view Name(Region r) {
  static constexpr std::array<std::string_view, kNumRegions> kNames = {
      "R1", "R2", "R3", "R4", "R5", "R6"};
  return kNames[Index(r)];
}

std::string_view Name(Mode m) {
  static constexpr std::array<std::string_view, kNumModes> kNames = {
      "M1", "M2", "M3", "M4"};
  return kNames[Index(m)];
}

double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

void SystemParams::Validate() const {
  RequirePositive(p1, "p1");
  RequirePositive(p2, "p2");
  RequirePositive(sigma2_r, "sigma2_r");
  RequirePositive(sigma2_d, "sigma2_d");
  RequirePositive(omega1, "omega1");
  RequirePositive(omega2, "omega2");
  RequirePositive(r0, "r0");
  const double level = std::visit(
      [](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>,
                                     RsiCoefficient>) {
          return m.k_r;
        } else {
          return m.i_r;
        }
      },
      rsi);
  if (!(level >= 0.0) || !std::isfinite(level)) {
    throw std::invalid_argument("RSI level must be non-negative");
  }
  if (gamma0_override) RequirePositive(*gamma0_override, "gamma0");
  RequirePositive(SinrThreshold(), "derived gamma0");
}

double SystemParams::ResidualInterference() const {
  if (const auto* c = std::get_if<RsiCoefficient>(&rsi)) return c->k_r * p2;
  return std::get<RsiFixed>(rsi).i_r;
}

double SystemParams::SinrThreshold() const {
  if (gamma0_override) return *gamma0_override;
  return std::exp2(r0) - 1.0;
}

Sinr ComputeSinr(const SystemParams& params, double g1, double g2) {
  const double ir = params.ResidualInterference();
  return Sinr{
      .sr_full_duplex = params.p1 * g1 / (ir + params.sigma2_r),
      .sr_half_duplex = params.p1 * g1 / params.sigma2_r,
      .rd = params.p2 * g2 / params.sigma2_d,
  };
}

OutageThresholds ComputeThresholds(const SystemParams& params) {
  const double gamma0 = params.SinrThreshold();
  const double ir = params.ResidualInterference();
  return OutageThresholds{
      .g1_hd = gamma0 * params.sigma2_r / params.p1,
      .g1_fd = gamma0 * (ir + params.sigma2_r) / params.p1,
      .g2_hd = gamma0 * params.sigma2_d / params.p2,
  };
}

Region Classify(const OutageThresholds& th, double g1, double g2) {
  const bool rd_ok = g2 >= th.g2_hd;
  if (g1 >= th.g1_fd) return rd_ok ? Region::kR1 : Region::kR5;
  if (g1 >= th.g1_hd) return rd_ok ? Region::kR2 : Region::kR4;
  return rd_ok ? Region::kR3 : Region::kR6;
}

bool ModeViability::Succeeds(Mode m) const {
  switch (m) {
    case Mode::kHdReceive:
      return o1;
    case Mode::kHdTransmit:
      return o2;
    case Mode::kFullDuplex:
      return o3;
    case Mode::kSilent:
      return false;
  }
  return false;
}

ModeViability Viability(Region r) { return kViability[Index(r)]; }

RegionProbabilities::RegionProbabilities(
    const std::array<double, kNumRegions>& p)
    : p_(p) {
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("region probability outside [0, 1]: " +
                                  std::to_string(v));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("region probabilities sum to " +
                                std::to_string(sum));
  }
}

RegionProbabilities ComputeRegionProbabilities(const SystemParams& params) {
  const OutageThresholds th = ComputeThresholds(params);
  // a = P(g1 >= g1_hd), b = P(g1 >= g1_fd), c = P(g2 >= g2_hd). The
  // complements go through expm1 so tiny outage probabilities keep precision.
  const double a = std::exp(-th.g1_hd / params.omega1);
  const double b = std::exp(-th.g1_fd / params.omega1);
  const double c = std::exp(-th.g2_hd / params.omega2);
  const double not_a = -std::expm1(-th.g1_hd / params.omega1);
  const double not_c = -std::expm1(-th.g2_hd / params.omega2);
  const double a_minus_b = std::max(0.0, a - b);
  return RegionProbabilities({
      b * c,
      a_minus_b * c,
      not_a * c,
      a_minus_b * not_c,
      b * not_c,
      not_a * not_c,
  });
}

GainSampler::GainSampler(const SystemParams& params, std::uint64_t seed)
    : engine_(seed),
      g1_(1.0 / params.omega1),
      g2_(1.0 / params.omega2) {}

std::pair<double, double> GainSampler::Next() {
  const double g1 = g1_(engine_);
  const double g2 = g2_(engine_);
  return {g1, g2};
}

}  // namespace hybrid_relay
