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

// Parameter sweeps and their CSV / JSON encodings.
//
// CSV schema (header row, LF line endings, RFC 4180 quoting):
//   axis_key, axis_value, series_key, series_value,
//   p_r1 .. p_r6, case,
//   t_optimal, t_hd_optimal, t_fd_always, t_fd_preferred,
//   sim_policy, sim_throughput, sim_stderr
// Throughputs are bits/slot. series_* and sim_* are empty when unused.
// Numbers are written with 17 significant digits so rows parse back exactly.

#ifndef HYBRID_RELAY_SWEEP_H_
#define HYBRID_RELAY_SWEEP_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "hybrid_relay/policy_engine.h"
#include "hybrid_relay/run_config.h"

namespace hybrid_relay {

struct SweepRow {
  std::string axis_key;
  double axis_value = 0.0;
  std::string series_key;
  std::optional<double> series_value;
  std::array<double, kNumRegions> region_probs{};
  StatCase stat_case = StatCase::kPsi1;
  double t_optimal = 0.0;
  double t_hd_optimal = 0.0;
  double t_fd_always = 0.0;
  double t_fd_preferred = 0.0;
  std::string sim_policy;
  std::optional<double> sim_throughput;
  std::optional<double> sim_stderr;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Policy of the requested kind and its analytic throughput.
struct PolicyChoice {
  Policy policy;
  double throughput = 0.0;
};
PolicyChoice ChoosePolicy(PolicyKind kind, const RegionProbabilities& rp,
                          double r0);

// Analytic (and optionally simulated) evaluation of one configuration. The
// simulation, if requested, uses cfg.seed as-is.
SweepRow EvaluatePoint(const RunConfig& cfg, bool simulate);

// One row per (series value, axis value), sorted by series then axis value.
// Points run on `threads` workers (0: hardware concurrency); the simulation
// seed of point i is cfg.seed + i, so output does not depend on scheduling.
std::vector<SweepRow> RunSweep(const RunConfig& cfg, int threads = 0);

std::string SweepCsvHeader();
std::string ToCsv(const std::vector<SweepRow>& rows);
// Throws ConfigError on malformed input.
std::vector<SweepRow> ParseCsv(std::string_view text);

nlohmann::json ToJson(const SweepRow& row);
nlohmann::json ToJson(const std::vector<SweepRow>& rows);

StatCase ParseStatCase(std::string_view s);

// Round-trip-exact decimal form.
std::string FormatDouble(double v);

}  // namespace hybrid_relay

#endif  // HYBRID_RELAY_SWEEP_H_
