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

#include "hybrid_relay/run_config.h"

#include <array>
#include <charconv>
#include <cmath>
#include <set>

namespace hybrid_relay {
namespace {

constexpr std::array<std::string_view, 13> kSweepableKeys = {
    "p1_db", "p1",  "p2_db",  "p2",     "sigma2_r", "sigma2_d", "sigma2",
    "k_r",   "i_r", "omega1", "omega2", "r0",       "gamma0"};

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseDouble(std::string_view key, std::string_view text) {
  text = Trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" +
                      std::string(text) + "'");
  }
  return v;
}

std::uint64_t ParseUint(std::string_view key, std::string_view text) {
  text = Trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    // Accept integral scientific notation such as 1e6.
    const double d = ParseDouble(key, text);
    if (d < 0 || d != std::floor(d) || d > 1.8e19) {
      throw ConfigError("invalid non-negative integer for '" +
                        std::string(key) + "': '" + std::string(text) + "'");
    }
    return static_cast<std::uint64_t>(d);
  }
  return v;
}

bool ParseBool(std::string_view key, std::string_view text) {
  text = Trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("invalid boolean for '" + std::string(key) + "'");
}

std::vector<double> ParseList(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(ParseDouble(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("empty list for '" + std::string(key) + "'");
  return out;
}

SweepAxis& EnsureSweep(RunConfig& cfg) {
  if (!cfg.sweep) cfg.sweep.emplace();
  return *cfg.sweep;
}

SeriesAxis& EnsureSeries(RunConfig& cfg) {
  if (!cfg.series) cfg.series.emplace();
  return *cfg.series;
}

}  // namespace

std::string_view Name(PolicyKind k) {
  switch (k) {
    case PolicyKind::kOptimal:
      return "optimal";
    case PolicyKind::kHdOptimal:
      return "hd-optimal";
    case PolicyKind::kFdAlways:
      return "fd-always";
    case PolicyKind::kFdPreferred:
      return "fd-preferred";
  }
  return "?";
}

PolicyKind ParsePolicyKind(std::string_view s) {
  for (PolicyKind k : {PolicyKind::kOptimal, PolicyKind::kHdOptimal,
                       PolicyKind::kFdAlways, PolicyKind::kFdPreferred}) {
    if (Name(k) == s) return k;
  }
  throw ConfigError("unknown policy kind '" + std::string(s) + "'");
}

std::vector<double> SweepAxis::Points() const {
  std::vector<double> out;
  const double span = stop - start;
  const auto count =
      static_cast<std::int64_t>(std::floor(span / step * (1.0 + 1e-9) + 1e-9));
  for (std::int64_t i = 0; i <= count; ++i) out.push_back(start + i * step);
  return out;
}

bool IsSweepableKey(std::string_view key) {
  for (std::string_view k : kSweepableKeys) {
    if (k == key) return true;
  }
  return false;
}

void RunConfig::SetNumeric(std::string_view key, double v) {
  if (key == "p1_db") {
    p1 = {v, true};
  } else if (key == "p1") {
    p1 = {v, false};
  } else if (key == "p2_db") {
    p2 = {v, true};
  } else if (key == "p2") {
    p2 = {v, false};
  } else if (key == "sigma2_r") {
    sigma2_r = v;
  } else if (key == "sigma2_d") {
    sigma2_d = v;
  } else if (key == "sigma2") {
    sigma2_r = sigma2_d = v;
  } else if (key == "k_r") {
    rsi = RsiCoefficient{v};
  } else if (key == "i_r") {
    rsi = RsiFixed{v};
  } else if (key == "omega1") {
    omega1 = v;
  } else if (key == "omega2") {
    omega2 = v;
  } else if (key == "r0") {
    r0 = v;
  } else if (key == "gamma0") {
    gamma0 = v;
  } else {
    throw ConfigError("'" + std::string(key) + "' is not a numeric parameter");
  }
}

void RunConfig::Set(std::string_view key, std::string_view value) {
  key = Trim(key);
  value = Trim(value);
  if (IsSweepableKey(key)) {
    SetNumeric(key, ParseDouble(key, value));
  } else if (key == "policy") {
    policy = ParsePolicyKind(value);
  } else if (key == "horizon") {
    horizon = ParseUint(key, value);
  } else if (key == "seed") {
    seed = ParseUint(key, value);
  } else if (key == "warmup") {
    warmup = ParseUint(key, value);
  } else if (key == "count") {
    verify_count = ParseUint(key, value);
  } else if (key == "buffer") {
    if (value == "ideal") {
      buffer = BufferMode::kIdeal;
    } else if (value == "strict") {
      buffer = BufferMode::kStrict;
    } else {
      throw ConfigError("buffer must be ideal or strict");
    }
  } else if (key == "format") {
    if (value == "csv") {
      format = OutputFormat::kCsv;
    } else if (value == "json") {
      format = OutputFormat::kJson;
    } else {
      throw ConfigError("format must be csv or json");
    }
  } else if (key == "out") {
    out = std::string(value);
  } else if (key == "sweep") {
    if (value.empty() || value == "none") {
      sweep.reset();
    } else {
      EnsureSweep(*this).key = std::string(value);
    }
  } else if (key == "sweep_start") {
    EnsureSweep(*this).start = ParseDouble(key, value);
  } else if (key == "sweep_stop") {
    EnsureSweep(*this).stop = ParseDouble(key, value);
  } else if (key == "sweep_step") {
    EnsureSweep(*this).step = ParseDouble(key, value);
  } else if (key == "series") {
    if (value.empty() || value == "none") {
      series.reset();
    } else {
      EnsureSeries(*this).key = std::string(value);
    }
  } else if (key == "series_values") {
    EnsureSeries(*this).values = ParseList(key, value);
  } else if (key == "sweep_simulate") {
    sweep_simulate = ParseBool(key, value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

SystemParams RunConfig::ToSystemParams() const {
  SystemParams p;
  p.p1 = p1.Linear();
  p.p2 = p2.Linear();
  p.sigma2_r = sigma2_r;
  p.sigma2_d = sigma2_d;
  p.rsi = rsi;
  p.omega1 = omega1;
  p.omega2 = omega2;
  p.r0 = r0;
  p.gamma0_override = gamma0;
  return p;
}

SimConfig RunConfig::ToSimConfig(const Policy& pol) const {
  return SimConfig{.params = ToSystemParams(),
                   .policy = pol,
                   .horizon = horizon,
                   .seed = seed,
                   .buffer = buffer,
                   .warmup = warmup};
}

void RunConfig::Validate() const {
  try {
    ToSystemParams().Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (warmup >= horizon) throw ConfigError("warmup must be < horizon");
  if (sweep) {
    if (!IsSweepableKey(sweep->key)) {
      throw ConfigError("sweep axis '" + sweep->key +
                        "' is not a numeric parameter");
    }
    if (!(sweep->step > 0.0)) throw ConfigError("sweep_step must be > 0");
    if (sweep->stop < sweep->start) {
      throw ConfigError("empty sweep: sweep_stop < sweep_start");
    }
  }
  if (series) {
    if (!IsSweepableKey(series->key)) {
      throw ConfigError("series axis '" + series->key +
                        "' is not a numeric parameter");
    }
    if (series->values.empty()) throw ConfigError("series_values is empty");
    if (sweep && series->key == sweep->key) {
      throw ConfigError("series and sweep use the same key");
    }
    std::set<double> seen(series->values.begin(), series->values.end());
    if (seen.size() != series->values.size()) {
      throw ConfigError("series_values contains duplicates");
    }
  }
}

void ApplyDocument(RunConfig& cfg, std::string_view text) {
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                        key + "'");
    }
    cfg.Set(key, line.substr(eq + 1));
  }
  auto exclusive = [&](const char* a, const char* b) {
    if (seen.contains(a) && seen.contains(b)) {
      throw ConfigError(std::string("'") + a + "' and '" + b +
                        "' are mutually exclusive");
    }
  };
  exclusive("p1", "p1_db");
  exclusive("p2", "p2_db");
  exclusive("k_r", "i_r");
}

void ApplyOverride(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override must look like key=value: '" +
                      std::string(assignment) + "'");
  }
  cfg.Set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::vector<std::string> PresetNames() {
  return {"fig3a", "fig3b", "fig3c", "fig4", "fig5", "fig6"};
}

RunConfig Preset(std::string_view name) {
  RunConfig cfg;
  cfg.sigma2_r = cfg.sigma2_d = 1.0;
  cfg.omega1 = 0.8;
  cfg.omega2 = 0.6;
  if (name == "fig3a" || name == "fig3b" || name == "fig3c") {
    cfg.p1 = {name == "fig3b" ? 23.75 : 25.0, true};
    cfg.p2 = {name == "fig3c" ? 30.0 : 25.0, true};
    cfg.rsi = RsiFixed{5.0};
    cfg.r0 = 2.0;
    cfg.sweep = SweepAxis{"r0", 0.25, 10.0, 0.25};
  } else if (name == "fig4") {
    cfg.p1 = {30.0, true};
    cfg.p2 = {30.0, true};
    cfg.rsi = RsiFixed{0.0};
    cfg.r0 = 2.0;
    cfg.sweep = SweepAxis{"r0", 0.5, 12.0, 0.5};
    // 0 (no RSI) and 20 (strong RSI) are the named levels; 5 is an extra
    // intermediate level.
    cfg.series = SeriesAxis{"i_r", {0.0, 5.0, 20.0}};
  } else if (name == "fig5") {
    cfg.p1 = {30.0, true};
    cfg.p2 = {30.0, true};
    cfg.omega1 = cfg.omega2 = 0.8;
    // Strong RSI, twice the relay power: keeps the whole 0..60 dB sweep in
    // the Psi5 / Psi3 regimes.
    cfg.rsi = RsiCoefficient{2.0};
    cfg.r0 = 4.0;
    cfg.sweep = SweepAxis{"p1_db", 0.0, 60.0, 1.0};
  } else if (name == "fig6") {
    cfg.p1 = {30.0, true};
    cfg.p2 = {30.0, true};
    cfg.rsi = RsiCoefficient{1.0};  // I_R = P2
    cfg.r0 = 4.0;
    cfg.sweep = SweepAxis{"p2_db", 0.0, 60.0, 1.0};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return cfg;
}

}  // namespace hybrid_relay
