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

#include "hybrid_relay/cli.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "hybrid_relay/lp_oracle.h"
#include "hybrid_relay/rp_sampling.h"
#include "hybrid_relay/sweep.h"

namespace hybrid_relay {
namespace {

struct CommonOptions {
  std::string preset;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> count;
  int threads = 0;
};

void AddCommonOptions(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--preset", o.preset, "Named parameter preset")
      ->check(CLI::IsMember(PresetNames()));
  cmd->add_option("--config", o.config_path, "Flat key = value config file");
  cmd->add_option("--set", o.overrides, "Override, key=value (repeatable)");
  cmd->add_option("--out", o.out, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", o.seed, "Generator seed");
  cmd->add_option("--horizon", o.horizon, "Simulated slots");
  cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)");
}

RunConfig BuildConfig(const CommonOptions& o) {
  RunConfig cfg = o.preset.empty() ? RunConfig{} : Preset(o.preset);
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw ConfigError("cannot read config file " + o.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    ApplyDocument(cfg, ss.str());
  }
  for (const std::string& s : o.overrides) ApplyOverride(cfg, s);
  if (!o.out.empty()) cfg.out = o.out;
  if (!o.format.empty()) cfg.Set("format", o.format);
  if (o.seed) cfg.seed = *o.seed;
  if (o.horizon) cfg.horizon = *o.horizon;
  if (o.count) cfg.verify_count = *o.count;
  cfg.Validate();
  return cfg;
}

void Emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + cfg.out);
  file << text;
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

int CmdPolicy(const RunConfig& cfg, std::ostream& out) {
  const SystemParams params = cfg.ToSystemParams();
  const RegionProbabilities rp = ComputeRegionProbabilities(params);
  const StatCase stat_case = ClassifyCase(rp);
  const PolicyChoice choice = ChoosePolicy(cfg.policy, rp, params.r0);
  const LinkRates rates = EvaluatePolicy(choice.policy, rp, params.r0);

  if (cfg.format == OutputFormat::kJson) {
    nlohmann::json j;
    j["params"] = ToJson(params);
    j["region_probabilities"] = rp.values();
    j["case"] = Name(stat_case);
    j["policy_kind"] = Name(cfg.policy);
    nlohmann::json rows = nlohmann::json::array();
    for (Region r : kAllRegions) rows.push_back(choice.policy.row(r));
    j["policy"] = rows;
    j["throughput"] = choice.throughput;
    j["arrival_rate"] = rates.arrival;
    j["departure_rate"] = rates.departure;
    Emit(cfg, j.dump(2) + "\n", out);
    return kExitOk;
  }

  std::ostringstream s;
  s << "region probabilities:";
  for (Region r : kAllRegions) s << ' ' << Name(r) << '=' << Fixed(rp[r]);
  s << "\ncase: " << Name(stat_case) << "\npolicy (" << Name(cfg.policy)
    << "), rows R1..R6, columns M1..M4:\n";
  for (Region r : kAllRegions) {
    s << "  " << Name(r);
    for (double v : choice.policy.row(r)) s << ' ' << Fixed(v);
    if (choice.policy.degenerate(r)) s << "  (zero-probability region)";
    s << '\n';
  }
  s << "throughput: " << FormatDouble(choice.throughput) << " bits/slot\n"
    << "arrival rate: " << FormatDouble(rates.arrival)
    << "  departure rate: " << FormatDouble(rates.departure) << '\n';
  Emit(cfg, s.str(), out);
  return kExitOk;
}

int CmdSweep(const RunConfig& cfg, int threads, std::ostream& out) {
  const std::vector<SweepRow> rows = RunSweep(cfg, threads);
  if (cfg.format == OutputFormat::kJson) {
    Emit(cfg, ToJson(rows).dump(2) + "\n", out);
  } else {
    Emit(cfg, ToCsv(rows), out);
  }
  return kExitOk;
}

int CmdSimulate(const RunConfig& cfg, std::ostream& out) {
  const SystemParams params = cfg.ToSystemParams();
  const RegionProbabilities rp = ComputeRegionProbabilities(params);
  const PolicyChoice choice = ChoosePolicy(cfg.policy, rp, params.r0);
  const SimReport report = Run(cfg.ToSimConfig(choice.policy));
  nlohmann::json j;
  j["params"] = ToJson(params);
  j["policy_kind"] = Name(cfg.policy);
  j["case"] = Name(ClassifyCase(rp));
  j["analytic_throughput"] = choice.throughput;
  j["report"] = ToJson(report);
  Emit(cfg, j.dump(2) + "\n", out);
  return kExitOk;
}

int CmdVerify(const RunConfig& cfg, std::ostream& out) {
  const VerifySummary v = RunVerification(cfg.verify_count, cfg.seed);
  char buf[256];
  std::ostringstream s;
  s << "vectors checked: " << v.vectors << '\n';
  std::snprintf(buf, sizeof(buf),
                "max gap %.1e (LP vs closed form), %.1e (LP vs policy), "
                "%.1e (balance)\n",
                v.max_gap, v.max_policy_gap, v.max_balance_residual);
  s << buf;
  s << "certification failures: " << v.certification_failures << '\n';
  s << "negative controls detected: "
    << (v.negative_controls_detected ? "yes" : "NO") << '\n';
  s << (v.Passed() ? "PASS" : "FAIL") << '\n';
  Emit(cfg, s.str(), out);
  return v.Passed() ? kExitOk : kExitFailure;
}

}  // namespace

nlohmann::json ToJson(const SystemParams& p) {
  nlohmann::json j;
  j["p1"] = p.p1;
  j["p2"] = p.p2;
  j["sigma2_r"] = p.sigma2_r;
  j["sigma2_d"] = p.sigma2_d;
  if (const auto* c = std::get_if<RsiCoefficient>(&p.rsi)) {
    j["k_r"] = c->k_r;
  } else {
    j["i_r"] = std::get<RsiFixed>(p.rsi).i_r;
  }
  j["omega1"] = p.omega1;
  j["omega2"] = p.omega2;
  j["r0"] = p.r0;
  j["gamma0"] = p.SinrThreshold();
  return j;
}

nlohmann::json ToJson(const SimReport& r) {
  nlohmann::json j;
  j["horizon"] = r.horizon;
  j["warmup"] = r.warmup;
  j["seed"] = r.seed;
  j["buffer"] = Name(r.buffer);
  j["est_r1"] = r.est_r1;
  j["est_r2"] = r.est_r2;
  j["est_throughput"] = r.est_throughput;
  j["throughput_stderr"] = r.throughput_stderr;
  j["region_counts"] = r.region_counts;
  j["mode_counts"] = r.mode_counts;
  j["final_queue"] = r.final_queue;
  j["peak_queue"] = r.peak_queue;
  j["trajectory_stride"] = r.trajectory_stride;
  j["trajectory"] = r.trajectory;
  if (r.queue_growth_exponent) {
    j["queue_growth_exponent"] = *r.queue_growth_exponent;
  } else {
    j["queue_growth_exponent"] = nullptr;
  }
  return j;
}

VerifySummary RunVerification(std::uint64_t count, std::uint64_t seed) {
  if (count == 0) throw ConfigError("verify needs a positive vector count");
  std::mt19937_64 rng(seed);
  std::vector<RegionProbabilities> vectors;
  for (std::uint64_t i = 0; i < count; ++i) vectors.push_back(SampleDirichlet(rng));
  for (const auto& rp : CaseBoundaryVectors(rng, 25)) vectors.push_back(rp);
  for (const std::string& name : PresetNames()) {
    const RunConfig cfg = Preset(name);
    std::vector<std::optional<double>> series = {std::nullopt};
    if (cfg.series) series.assign(cfg.series->values.begin(), cfg.series->values.end());
    for (const auto& s : series) {
      for (double x : cfg.sweep->Points()) {
        RunConfig point = cfg;
        if (s) point.SetNumeric(cfg.series->key, *s);
        point.SetNumeric(cfg.sweep->key, x);
        vectors.push_back(ComputeRegionProbabilities(point.ToSystemParams()));
      }
    }
  }

  VerifySummary v;
  for (const RegionProbabilities& rp : vectors) {
    const OracleComparison c = CompareWithOracle(rp, 1.0);
    ++v.vectors;
    v.max_gap = std::max(v.max_gap, c.gap);
    v.max_policy_gap = std::max(v.max_policy_gap, c.policy_gap);
    v.max_balance_residual = std::max(v.max_balance_residual, c.balance_residual);
    if (!c.certified || !c.policy_row_stochastic) ++v.certification_failures;
  }

  const RegionProbabilities psi3({0.2, 0.2, 0.15, 0.1, 0.05, 0.3});
  const RegionProbabilities psi4({0.2, 0.05, 0.3, 0.05, 0.05, 0.35});
  v.negative_controls_detected =
      DetectsFaultyPolicy(
          InjectTypo(OptimalPolicy(psi3), TableTypo::kFullDuplexInR2), psi3) &&
      DetectsFaultyPolicy(
          InjectTypo(OptimalPolicy(psi4), TableTypo::kReceiveInR3), psi4);
  return v;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Hybrid FD/HD buffer-aided relay: policy, sweeps, simulation"};
  app.require_subcommand(1);
  CommonOptions policy_opts, sweep_opts, sim_opts, verify_opts;
  CLI::App* policy = app.add_subcommand(
      "policy", "Print region probabilities, case, policy and throughput");
  CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep table");
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo run, JSON report");
  CLI::App* verify =
      app.add_subcommand("verify", "LP oracle and certificate sweep");
  AddCommonOptions(policy, policy_opts);
  AddCommonOptions(sweep, sweep_opts);
  AddCommonOptions(simulate, sim_opts);
  AddCommonOptions(verify, verify_opts);
  verify->add_option("--count", verify_opts.count, "Random vectors to check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (policy->parsed()) return CmdPolicy(BuildConfig(policy_opts), out);
    if (sweep->parsed()) {
      return CmdSweep(BuildConfig(sweep_opts), sweep_opts.threads, out);
    }
    if (simulate->parsed()) return CmdSimulate(BuildConfig(sim_opts), out);
    if (verify->parsed()) return CmdVerify(BuildConfig(verify_opts), out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hybrid_relay
