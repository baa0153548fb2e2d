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

#ifndef HYBRID_RELAY_CLI_H_
#define HYBRID_RELAY_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "hybrid_relay/run_config.h"
#include "hybrid_relay/slot_simulator.h"

namespace hybrid_relay {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification found a discrepancy
inline constexpr int kExitUsage = 2;    // bad command line or config

// Entry point of the `hybrid_relay` tool: subcommands policy, sweep,
// simulate, verify. Output files named by --out are written directly;
// everything else goes to `out` / `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

nlohmann::json ToJson(const SimReport& report);
nlohmann::json ToJson(const SystemParams& params);

struct VerifySummary {
  std::uint64_t vectors = 0;
  double max_gap = 0.0;
  double max_policy_gap = 0.0;
  double max_balance_residual = 0.0;
  std::uint64_t certification_failures = 0;
  bool negative_controls_detected = false;

  bool Passed(double tol = 1e-9) const {
    return max_gap <= tol && max_policy_gap <= tol &&
           max_balance_residual <= tol && certification_failures == 0 &&
           negative_controls_detected;
  }
};

// Oracle sweep over `count` Dirichlet vectors, the case-boundary vectors and
// every preset grid point.
VerifySummary RunVerification(std::uint64_t count, std::uint64_t seed);

}  // namespace hybrid_relay

#endif  // HYBRID_RELAY_CLI_H_
