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

// Declarative run configuration: a flat key = value document layered as
// preset -> config file -> --set overrides.
//
// Recognized keys:
//   p1_db | p1, p2_db | p2     transmit powers (dB or linear; a later layer
//                              setting one form replaces the other)
//   sigma2_r, sigma2_d, sigma2 noise variances (sigma2 sets both)
//   k_r | i_r                  RSI as coefficient of p2, or absolute level
//   omega1, omega2             mean channel gains
//   r0, gamma0                 rate and optional SINR threshold override
//   policy                     optimal | hd-optimal | fd-always | fd-preferred
//   horizon, seed, warmup      simulation length, generator seed, warmup
//   buffer                     ideal | strict
//   format, out                csv | json, output path ("-" or empty: stdout)
//   sweep, sweep_start, sweep_stop, sweep_step
//   series, series_values      optional second axis, comma-separated values
//   sweep_simulate             true | false, add Monte Carlo column to sweeps
//   count                      random vectors for `verify`

#ifndef HYBRID_RELAY_RUN_CONFIG_H_
#define HYBRID_RELAY_RUN_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hybrid_relay/channel_model.h"
#include "hybrid_relay/policy_engine.h"
#include "hybrid_relay/slot_simulator.h"

namespace hybrid_relay {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PolicyKind { kOptimal, kHdOptimal, kFdAlways, kFdPreferred };
enum class OutputFormat { kCsv, kJson };

std::string_view Name(PolicyKind k);
PolicyKind ParsePolicyKind(std::string_view s);

struct PowerSetting {
  double value = 1.0;
  bool in_db = false;

  double Linear() const { return in_db ? DbToLinear(value) : value; }
};

struct SweepAxis {
  std::string key;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  // start + i * step for every i with the value <= stop (1e-9 relative
  // slack on the last point).
  std::vector<double> Points() const;
};

struct SeriesAxis {
  std::string key;
  std::vector<double> values;
};

struct RunConfig {
  PowerSetting p1;
  PowerSetting p2;
  double sigma2_r = 1.0;
  double sigma2_d = 1.0;
  RsiModel rsi = RsiFixed{0.0};
  double omega1 = 1.0;
  double omega2 = 1.0;
  double r0 = 1.0;
  std::optional<double> gamma0;

  PolicyKind policy = PolicyKind::kOptimal;
  std::uint64_t horizon = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t warmup = 10'000;
  BufferMode buffer = BufferMode::kIdeal;

  OutputFormat format = OutputFormat::kCsv;
  std::string out;

  std::optional<SweepAxis> sweep;
  std::optional<SeriesAxis> series;
  bool sweep_simulate = false;
  std::uint64_t verify_count = 1000;

  // Throws ConfigError on an unknown key or malformed value.
  void Set(std::string_view key, std::string_view value);
  // Numeric parameter keys only (the ones a sweep or series may use).
  void SetNumeric(std::string_view key, double value);

  SystemParams ToSystemParams() const;
  SimConfig ToSimConfig(const Policy& policy) const;

  // Cross-field checks; throws ConfigError.
  void Validate() const;
};

bool IsSweepableKey(std::string_view key);

// Parses "key = value" lines; '#' starts a comment. Within one document the
// two forms of a power or of the RSI may not both appear.
void ApplyDocument(RunConfig& cfg, std::string_view text);

// "key=value".
void ApplyOverride(RunConfig& cfg, std::string_view assignment);

std::vector<std::string> PresetNames();
// Throws ConfigError for unknown names.
RunConfig Preset(std::string_view name);

}  // namespace hybrid_relay

#endif  // HYBRID_RELAY_RUN_CONFIG_H_
