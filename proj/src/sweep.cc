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

#include "hybrid_relay/sweep.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <thread>

#include "hybrid_relay/slot_simulator.h"

namespace hybrid_relay {
namespace {

constexpr size_t kNumColumns = 18;

std::string Quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string Optional(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

// Splits one CSV record; `text` is advanced past its line terminator.
std::vector<std::string> ReadRecord(std::string_view& text) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  size_t i = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw ConfigError("unterminated quoted CSV field");
  text.remove_prefix(std::min(text.size(), i + 1));
  return fields;
}

double ToDouble(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("invalid CSV number '" + s + "'");
  }
  return v;
}

std::optional<double> ToOptional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return ToDouble(s);
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

StatCase ParseStatCase(std::string_view s) {
  for (StatCase c : {StatCase::kPsi1, StatCase::kPsi2, StatCase::kPsi3,
                     StatCase::kPsi4, StatCase::kPsi5}) {
    if (Name(c) == s) return c;
  }
  throw ConfigError("unknown case '" + std::string(s) + "'");
}

PolicyChoice ChoosePolicy(PolicyKind kind, const RegionProbabilities& rp,
                          double r0) {
  switch (kind) {
    case PolicyKind::kOptimal:
      return {OptimalPolicy(rp), ClosedFormThroughput(rp, r0).throughput};
    case PolicyKind::kHdOptimal: {
      auto b = BaselinePolicy(BaselineKind::kHdOptimal, rp, r0);
      return {b.policy, b.throughput};
    }
    case PolicyKind::kFdAlways: {
      auto b = BaselinePolicy(BaselineKind::kFdAlways, rp, r0);
      return {b.policy, b.throughput};
    }
    case PolicyKind::kFdPreferred: {
      auto b = BaselinePolicy(BaselineKind::kFdPreferred, rp, r0);
      return {b.policy, b.throughput};
    }
  }
  throw ConfigError("unknown policy kind");
}

SweepRow EvaluatePoint(const RunConfig& cfg, bool simulate) {
  const SystemParams params = cfg.ToSystemParams();
  const RegionProbabilities rp = ComputeRegionProbabilities(params);
  SweepRow row;
  row.region_probs = rp.values();
  row.stat_case = ClassifyCase(rp);
  row.t_optimal = ClosedFormThroughput(rp, params.r0).throughput;
  row.t_hd_optimal =
      BaselinePolicy(BaselineKind::kHdOptimal, rp, params.r0).throughput;
  row.t_fd_always =
      BaselinePolicy(BaselineKind::kFdAlways, rp, params.r0).throughput;
  row.t_fd_preferred =
      BaselinePolicy(BaselineKind::kFdPreferred, rp, params.r0).throughput;
  if (simulate) {
    const PolicyChoice choice = ChoosePolicy(cfg.policy, rp, params.r0);
    const SimReport report = Run(cfg.ToSimConfig(choice.policy));
    row.sim_policy = std::string(Name(cfg.policy));
    row.sim_throughput = report.est_throughput;
    row.sim_stderr = report.throughput_stderr;
  }
  return row;
}

std::vector<SweepRow> RunSweep(const RunConfig& cfg, int threads) {
  cfg.Validate();
  if (!cfg.sweep) throw ConfigError("no sweep axis configured");
  const std::vector<double> axis = cfg.sweep->Points();
  std::vector<std::optional<double>> series = {std::nullopt};
  if (cfg.series) series.assign(cfg.series->values.begin(), cfg.series->values.end());

  struct Job {
    std::optional<double> series_value;
    double axis_value;
  };
  std::vector<Job> jobs;
  for (const auto& s : series) {
    for (double a : axis) jobs.push_back({s, a});
  }

  std::vector<SweepRow> rows(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      RunConfig point = cfg;
      if (jobs[i].series_value) {
        point.SetNumeric(cfg.series->key, *jobs[i].series_value);
      }
      point.SetNumeric(cfg.sweep->key, jobs[i].axis_value);
      point.seed = cfg.seed + i;
      try {
        point.Validate();
        rows[i] = EvaluatePoint(point, cfg.sweep_simulate);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        continue;
      }
      rows[i].axis_key = cfg.sweep->key;
      rows[i].axis_value = jobs[i].axis_value;
      if (jobs[i].series_value) {
        rows[i].series_key = cfg.series->key;
        rows[i].series_value = jobs[i].series_value;
      }
    }
  };
  unsigned n = threads > 0 ? threads
                           : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, std::max<size_t>(jobs.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i].empty()) {
      throw ConfigError("sweep point " + cfg.sweep->key + "=" +
                        FormatDouble(jobs[i].axis_value) + ": " + errors[i]);
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     if (a.series_value != b.series_value) {
                       return a.series_value < b.series_value;
                     }
                     return a.axis_value < b.axis_value;
                   });
  return rows;
}

std::string SweepCsvHeader() {
  return "axis_key,axis_value,series_key,series_value,"
         "p_r1,p_r2,p_r3,p_r4,p_r5,p_r6,case,"
         "t_optimal,t_hd_optimal,t_fd_always,t_fd_preferred,"
         "sim_policy,sim_throughput,sim_stderr";
}

std::string ToCsv(const std::vector<SweepRow>& rows) {
  std::string out = SweepCsvHeader() + "\n";
  for (const SweepRow& r : rows) {
    std::vector<std::string> f;
    f.push_back(Quote(r.axis_key));
    f.push_back(FormatDouble(r.axis_value));
    f.push_back(Quote(r.series_key));
    f.push_back(Optional(r.series_value));
    for (double p : r.region_probs) f.push_back(FormatDouble(p));
    f.push_back(std::string(Name(r.stat_case)));
    f.push_back(FormatDouble(r.t_optimal));
    f.push_back(FormatDouble(r.t_hd_optimal));
    f.push_back(FormatDouble(r.t_fd_always));
    f.push_back(FormatDouble(r.t_fd_preferred));
    f.push_back(Quote(r.sim_policy));
    f.push_back(Optional(r.sim_throughput));
    f.push_back(Optional(r.sim_stderr));
    for (size_t i = 0; i < f.size(); ++i) {
      if (i) out += ',';
      out += f[i];
    }
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> ParseCsv(std::string_view text) {
  if (text.empty()) throw ConfigError("empty CSV");
  std::vector<std::string> header = ReadRecord(text);
  std::string joined;
  for (size_t i = 0; i < header.size(); ++i) {
    joined += (i ? "," : "") + header[i];
  }
  if (joined != SweepCsvHeader()) throw ConfigError("unexpected CSV header");

  std::vector<SweepRow> rows;
  while (!text.empty()) {
    const std::vector<std::string> f = ReadRecord(text);
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != kNumColumns) {
      throw ConfigError("CSV row has " + std::to_string(f.size()) + " fields");
    }
    SweepRow r;
    r.axis_key = f[0];
    r.axis_value = ToDouble(f[1]);
    r.series_key = f[2];
    r.series_value = ToOptional(f[3]);
    for (int k = 0; k < kNumRegions; ++k) r.region_probs[k] = ToDouble(f[4 + k]);
    r.stat_case = ParseStatCase(f[10]);
    r.t_optimal = ToDouble(f[11]);
    r.t_hd_optimal = ToDouble(f[12]);
    r.t_fd_always = ToDouble(f[13]);
    r.t_fd_preferred = ToDouble(f[14]);
    r.sim_policy = f[15];
    r.sim_throughput = ToOptional(f[16]);
    r.sim_stderr = ToOptional(f[17]);
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json ToJson(const SweepRow& r) {
  nlohmann::json j;
  j["axis_key"] = r.axis_key;
  j["axis_value"] = r.axis_value;
  if (r.series_value) {
    j["series_key"] = r.series_key;
    j["series_value"] = *r.series_value;
  }
  j["region_probabilities"] = r.region_probs;
  j["case"] = Name(r.stat_case);
  j["throughput"] = {{"optimal", r.t_optimal},
                     {"hd_optimal", r.t_hd_optimal},
                     {"fd_always", r.t_fd_always},
                     {"fd_preferred", r.t_fd_preferred}};
  if (r.sim_throughput) {
    j["simulated"] = {{"policy", r.sim_policy},
                      {"throughput", *r.sim_throughput},
                      {"stderr", r.sim_stderr.value_or(0.0)}};
  }
  return j;
}

nlohmann::json ToJson(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRow& r : rows) arr.push_back(ToJson(r));
  return nlohmann::json{{"rows", arr}};
}

}  // namespace hybrid_relay
