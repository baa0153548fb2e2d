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

// Physical layer of a buffer-aided decode-and-forward relay S -> R -> D.
// The relay may receive (HD), transmit (HD), do both at once (FD) or stay
// silent. Only the channel power gains g1 = |h1|^2 and g2 = |h2|^2 matter;
// together with three outage thresholds they partition the gain plane into
// six regions, each of which fixes which transmission modes can succeed.

#ifndef HYBRID_RELAY_CHANNEL_MODEL_H_
#define HYBRID_RELAY_CHANNEL_MODEL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <variant>

namespace hybrid_relay {

inline constexpr int kNumRegions = 6;
inline constexpr int kNumModes = 4;

// Gain-plane cells, numbered as in the usual R1..R6 layout:
//   R1: FD and both HD links succeed     R4: only S-R under HD
//   R2: both HD links, FD S-R fails      R5: S-R even under FD, R-D fails
//   R3: only R-D                         R6: everything in outage
enum class Region : int { kR1 = 0, kR2, kR3, kR4, kR5, kR6 };

enum class Mode : int {
  kHdReceive = 0,   // M1: S transmits, R stores into its buffer.
  kHdTransmit = 1,  // M2: R forwards buffered data to D.
  kFullDuplex = 2,  // M3: both links active in the same slot.
  kSilent = 3,      // M4: nobody transmits.
};

inline constexpr std::array<Region, kNumRegions> kAllRegions = {
    Region::kR1, Region::kR2, Region::kR3,
    Region::kR4, Region::kR5, Region::kR6};
inline constexpr std::array<Mode, kNumModes> kAllModes = {
    Mode::kHdReceive, Mode::kHdTransmit, Mode::kFullDuplex, Mode::kSilent};

constexpr int Index(Region r) { return static_cast<int>(r); }
constexpr int Index(Mode m) { return static_cast<int>(m); }
constexpr Region RegionFromIndex(int k) { return static_cast<Region>(k); }
constexpr Mode ModeFromIndex(int j) { return static_cast<Mode>(j); }

// "R1".."R6" and "M1".."M4".
std::string_view Name(Region r);
std::string_view Name(Mode m);

double DbToLinear(double db);

// Residual self-interference after cancellation, either proportional to the
// relay transmit power (I_R = k_r * P2) or an absolute level (I_R = i_r).
struct RsiCoefficient {
  double k_r = 0.0;
};
struct RsiFixed {
  double i_r = 0.0;
};
using RsiModel = std::variant<RsiCoefficient, RsiFixed>;

// All quantities linear. Throws std::invalid_argument from Validate() when an
// invariant is violated.
struct SystemParams {
  double p1 = 1.0;        // source transmit power
  double p2 = 1.0;        // relay transmit power
  double sigma2_r = 1.0;  // noise variance at the relay
  double sigma2_d = 1.0;  // noise variance at the destination
  RsiModel rsi = RsiFixed{0.0};
  double omega1 = 1.0;  // E{g1}
  double omega2 = 1.0;  // E{g2}
  double r0 = 1.0;      // fixed rate, bits/slot
  std::optional<double> gamma0_override;

  void Validate() const;
  double ResidualInterference() const;
  // 2^r0 - 1 unless overridden.
  double SinrThreshold() const;
};

struct Sinr {
  double sr_full_duplex = 0.0;
  double sr_half_duplex = 0.0;
  double rd = 0.0;
};

Sinr ComputeSinr(const SystemParams& params, double g1, double g2);

// Minimum gains for successful decoding at the fixed rate.
struct OutageThresholds {
  double g1_hd = 0.0;
  double g1_fd = 0.0;
  double g2_hd = 0.0;
};

OutageThresholds ComputeThresholds(const SystemParams& params);

// Gains exactly on a threshold count as success.
Region Classify(const OutageThresholds& th, double g1, double g2);

struct ModeViability {
  bool o1 = false;
  bool o2 = false;
  bool o3 = false;

  bool Succeeds(Mode m) const;
};

ModeViability Viability(Region r);

// Probability vector over the six regions. Construction validates that all
// entries lie in [0, 1] and sum to one within kSumTolerance.
class RegionProbabilities {
 public:
  static constexpr double kSumTolerance = 1e-12;

  RegionProbabilities() : p_{0, 0, 0, 0, 0, 1} {}
  explicit RegionProbabilities(const std::array<double, kNumRegions>& p);

  double operator[](Region r) const { return p_[Index(r)]; }
  double at(int k) const { return p_.at(k); }
  const std::array<double, kNumRegions>& values() const { return p_; }

  double r1() const { return p_[0]; }
  double r2() const { return p_[1]; }
  double r3() const { return p_[2]; }
  double r4() const { return p_[3]; }
  double r5() const { return p_[4]; }
  double r6() const { return p_[5]; }

 private:
  std::array<double, kNumRegions> p_;
};

// Closed form under independent exponential gains (Rayleigh fading).
RegionProbabilities ComputeRegionProbabilities(const SystemParams& params);

// Draws i.i.d. exponential gain pairs. Each instance owns its generator, so
// independent shards can run concurrently.
class GainSampler {
 public:
  GainSampler(const SystemParams& params, std::uint64_t seed);

  std::pair<double, double> Next();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::exponential_distribution<double> g1_;
  std::exponential_distribution<double> g2_;
};

}  // namespace hybrid_relay

#endif  // HYBRID_RELAY_CHANNEL_MODEL_H_
