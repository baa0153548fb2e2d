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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hybrid_relay/cli.h"
#include "hybrid_relay/lp_oracle.h"
#include "hybrid_relay/rp_sampling.h"
#include "hybrid_relay/slot_simulator.h"
#include "hybrid_relay/sweep.h"

namespace hybrid_relay {
namespace {

constexpr std::uint64_t kVectorSeed = 20260101;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

std::vector<RegionProbabilities> RandomVectors() {
  std::mt19937_64 rng(kVectorSeed);
  std::vector<RegionProbabilities> out;
  for (int i = 0; i < 1000; ++i) out.push_back(SampleDirichlet(rng));
  return out;
}

std::vector<RegionProbabilities> BoundaryVectors() {
  std::mt19937_64 rng(kVectorSeed + 1);
  return CaseBoundaryVectors(rng, 250);
}

RunConfig PresetPoint(const std::string& name,
                      std::vector<std::pair<std::string, double>> values) {
  RunConfig cfg = Preset(name);
  cfg.sweep.reset();
  cfg.series.reset();
  for (const auto& [key, v] : values) cfg.SetNumeric(key, v);
  return cfg;
}

Verdict OracleEquivalence() {
  auto vectors = RandomVectors();
  const auto boundary = BoundaryVectors();
  vectors.insert(vectors.end(), boundary.begin(), boundary.end());
  double gap = 0.0;
  double policy_gap = 0.0;
  for (const RegionProbabilities& rp : vectors) {
    const OracleComparison c = CompareWithOracle(rp, 1.0);
    gap = std::max(gap, c.gap);
    policy_gap = std::max(policy_gap, c.policy_gap);
  }
  return {gap < 1e-9 && policy_gap < 1e-9,
          Format("%zu vectors, max |LP - closed form| %.2e, "
                 "max |LP - policy| %.2e",
                 vectors.size(), gap, policy_gap)};
}

// Multipliers as listed for the certificate check, Psi1..Psi5.
constexpr double kListedMultiplier[] = {0.0, 0.0, 0.5, 1.0, 2.0};

Verdict KktCertification() {
  std::map<StatCase, int> seen;
  std::map<StatCase, int> failed;
  int failed_at_case_multiplier = 0;
  for (const RegionProbabilities& rp : RandomVectors()) {
    const StatCase c = ClassifyCase(rp);
    const Policy p = OptimalPolicy(rp);
    ++seen[c];
    if (!Certify(p, rp, kListedMultiplier[static_cast<int>(c) - 1]).certified) {
      ++failed[c];
    }
    if (!Certify(p, rp, CaseMultiplier(c)).certified) ++failed_at_case_multiplier;
  }

  const RegionProbabilities psi3({0.2, 0.2, 0.15, 0.1, 0.05, 0.3});
  const RegionProbabilities psi4({0.2, 0.05, 0.3, 0.05, 0.05, 0.35});
  const bool control_r2 = DetectsFaultyPolicy(
      InjectTypo(OptimalPolicy(psi3), TableTypo::kFullDuplexInR2), psi3);
  const bool control_r3 = DetectsFaultyPolicy(
      InjectTypo(OptimalPolicy(psi4), TableTypo::kReceiveInR3), psi4);

  int total_failed = 0;
  std::ostringstream detail;
  detail << "certified per case at alpha0 = 0, 0, 1/2, 1, 2:";
  for (StatCase c : {StatCase::kPsi1, StatCase::kPsi2, StatCase::kPsi3,
                     StatCase::kPsi4, StatCase::kPsi5}) {
    detail << ' ' << Name(c) << ' ' << seen[c] - failed[c] << '/' << seen[c];
    total_failed += failed[c];
  }
  detail << "; negative controls " << (control_r2 ? "caught" : "MISSED") << ", "
         << (control_r3 ? "caught" : "MISSED")
         << "; with alpha0 = 1 for Psi5, " << failed_at_case_multiplier
         << " of 1000 fail";
  if (failed[StatCase::kPsi5] > 0) {
    detail << " (Psi5 mixes M2 with M4 in R3, which needs (1 - alpha0) r0 = 0)";
  }
  return {total_failed == 0 && control_r2 && control_r3, detail.str()};
}

Verdict SimulationVsAnalysis() {
  std::vector<RunConfig> points;
  for (double i_r : {0.0, 5.0, 20.0}) {
    for (double r0 : {1.0, 2.0, 4.0, 6.0}) {
      points.push_back(PresetPoint("fig4", {{"i_r", i_r}, {"r0", r0}}));
    }
  }
  for (double p1 : {10.0, 30.0, 50.0}) {
    points.push_back(PresetPoint("fig5", {{"p1_db", p1}}));
  }
  for (double p2 : {10.0, 17.0, 40.0}) {
    points.push_back(PresetPoint("fig6", {{"p2_db", p2}}));
  }

  int ok = 0;
  double worst_rel = 0.0;
  double worst_balance = 0.0;
  std::uint64_t seed = 1000;
  for (RunConfig& cfg : points) {
    cfg.horizon = 1'000'000;
    cfg.warmup = 0;
    cfg.seed = ++seed;
    cfg.buffer = BufferMode::kIdeal;
    const SystemParams params = cfg.ToSystemParams();
    const RegionProbabilities rp = ComputeRegionProbabilities(params);
    const ThroughputReport analytic = ClosedFormThroughput(rp, params.r0);
    const SimReport r = Run(cfg.ToSimConfig(OptimalPolicy(rp)));
    const double err = std::abs(r.est_throughput - analytic.throughput);
    const double tol = std::max(0.01 * analytic.throughput, 3 * r.throughput_stderr);
    const double balance = std::abs(r.est_r1 - r.est_r2);
    const double balance_tol = 3 * params.r0 / std::sqrt(1e6);
    if (err <= tol && balance <= balance_tol) ++ok;
    if (analytic.throughput > 0) worst_rel = std::max(worst_rel, err / analytic.throughput);
    worst_balance = std::max(worst_balance, balance / balance_tol);
  }
  const int n = static_cast<int>(points.size());
  return {n >= 12 && ok == n,
          Format("%d/%d points within tolerance, worst relative error %.3f%%, "
                 "worst balance gap %.2f of its bound",
                 ok, n, 100 * worst_rel, worst_balance)};
}

Verdict RegionFrequencies() {
  std::mt19937_64 rng(kVectorSeed + 2);
  std::uniform_real_distribution<double> db(0.0, 40.0);
  std::uniform_real_distribution<double> rsi(0.0, 20.0);
  std::uniform_real_distribution<double> omega(0.2, 2.0);
  std::uniform_real_distribution<double> rate(0.5, 4.0);
  int ok = 0;
  double worst = 0.0;
  for (int set = 0; set < 10; ++set) {
    SystemParams p;
    p.p1 = DbToLinear(db(rng));
    p.p2 = DbToLinear(db(rng));
    p.rsi = RsiFixed{rsi(rng)};
    p.omega1 = omega(rng);
    p.omega2 = omega(rng);
    p.r0 = rate(rng);
    const RegionProbabilities rp = ComputeRegionProbabilities(p);
    SimConfig cfg;
    cfg.params = p;
    cfg.horizon = 1'000'000;
    cfg.warmup = 0;
    cfg.seed = 5000 + set;
    const SimReport r = Run(cfg);
    bool all = true;
    for (Region reg : kAllRegions) {
      const double q = rp[reg];
      const double freq = r.region_counts[Index(reg)] / 1e6;
      const double se = std::sqrt(q * (1 - q) / 1e6);
      const double z = se > 0 ? std::abs(freq - q) / se : (freq == q ? 0.0 : 1e9);
      worst = std::max(worst, z);
      if (z > 3.0) all = false;
    }
    if (all) ++ok;
  }
  return {ok == 10, Format("%d/10 parameter sets, largest deviation %.2f "
                           "standard errors",
                           ok, worst)};
}

std::vector<SweepRow> PresetRows(const std::string& name) {
  return RunSweep(Preset(name), 0);
}

Verdict QualitativeClaims() {
  // (a) case sequence along the source-power axis.
  std::vector<StatCase> sequence;
  for (const SweepRow& row : PresetRows("fig5")) {
    if (sequence.empty() || sequence.back() != row.stat_case) {
      sequence.push_back(row.stat_case);
    }
  }
  const bool a = sequence == std::vector<StatCase>{StatCase::kPsi5, StatCase::kPsi3};
  std::string seq_text;
  for (StatCase c : sequence) seq_text += std::string(seq_text.empty() ? "" : ">") + std::string(Name(c));

  // (b) interior maximum near 18 dB, then a plateau over the last 20 dB.
  const auto fig6 = PresetRows("fig6");
  const auto peak = std::max_element(fig6.begin(), fig6.end(),
                                     [](const SweepRow& x, const SweepRow& y) {
                                       return x.t_optimal < y.t_optimal;
                                     });
  const double last = fig6.back().axis_value;
  double lo = 1e300;
  double hi = 0.0;
  for (const SweepRow& row : fig6) {
    if (row.axis_value < last - 20.0 - 1e-9) continue;
    lo = std::min(lo, row.t_optimal);
    hi = std::max(hi, row.t_optimal);
  }
  const bool interior = peak != fig6.begin() && peak + 1 != fig6.end() &&
                        peak->t_optimal > fig6.back().t_optimal;
  const bool b = interior && std::abs(peak->axis_value - 18.0) <= 3.0 &&
                 (hi - lo) < 0.01 * hi;

  // (c) no-RSI and strong-RSI curves coincide once both sit in Psi1/Psi2.
  std::map<double, const SweepRow*> none;
  std::map<double, const SweepRow*> strong;
  const auto fig4 = PresetRows("fig4");
  for (const SweepRow& row : fig4) {
    if (row.series_value == 0.0) none[row.axis_value] = &row;
    if (row.series_value == 20.0) strong[row.axis_value] = &row;
  }
  int compared = 0;
  double max_diff = 0.0;
  for (const auto& [r0, x] : none) {
    const SweepRow* y = strong.at(r0);
    const auto low_case = [](StatCase c) {
      return c == StatCase::kPsi1 || c == StatCase::kPsi2;
    };
    if (!low_case(x->stat_case) || !low_case(y->stat_case)) continue;
    ++compared;
    max_diff = std::max(max_diff, std::abs(x->t_optimal - y->t_optimal));
  }
  const bool c = compared > 0 && max_diff < 1e-12;

  return {a && b && c,
          Format("(a) %s %s; (b) %s peak %.3g at %g dB, last 20 dB spread "
                 "%.3f%%; (c) %s %d shared points, max difference %.1e",
                 a ? "ok" : "FAIL", seq_text.c_str(), b ? "ok" : "FAIL",
                 peak->t_optimal, peak->axis_value, 100 * (hi - lo) / hi,
                 c ? "ok" : "FAIL", compared, max_diff)};
}

Verdict DominanceAndGain() {
  int points = 0;
  int violations = 0;
  double best_ratio = 0.0;
  std::string best_at;
  for (const std::string& name : PresetNames()) {
    for (const SweepRow& row : PresetRows(name)) {
      ++points;
      if (row.t_optimal + 1e-12 < row.t_hd_optimal) ++violations;
      if (row.t_hd_optimal > 1e-9) {
        const double ratio = row.t_optimal / row.t_hd_optimal;
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best_at = Format("%s %s=%g", name.c_str(), row.axis_key.c_str(),
                           row.axis_value);
          if (row.series_value) {
            best_at += Format(" %s=%g", row.series_key.c_str(), *row.series_value);
          }
        }
      }
    }
  }
  return {violations == 0,
          Format("%d preset points, %d below the half-duplex optimum; "
                 "max hybrid/HD ratio %.4f (gain %.1f%%) at %s",
                 points, violations, best_ratio, 100 * (best_ratio - 1),
                 best_at.c_str())};
}

Verdict QueueGrowth() {
  const RunConfig cfg = PresetPoint("fig4", {{"i_r", 5.0}, {"r0", 2.0}});
  const SystemParams params = cfg.ToSystemParams();
  const RegionProbabilities rp = ComputeRegionProbabilities(params);
  Policy biased;
  for (Region r : kAllRegions) {
    if (Viability(r).o1) biased.SetDeterministic(r, Mode::kHdReceive);
  }
  GrowthProbeConfig probe;  // 2^14..2^20, 100 seeds
  const GrowthProbe balanced = QueueGrowthProbe(params, OptimalPolicy(rp), probe);
  const GrowthProbe drifting = QueueGrowthProbe(params, biased, probe);
  const bool ok = !balanced.degenerate && !drifting.degenerate &&
                  std::abs(balanced.exponent - 0.5) <= 0.1 &&
                  std::abs(drifting.exponent - 1.0) <= 0.05;
  return {ok, Format("balanced exponent %.3f (want 0.5 +/- 0.1), "
                     "arrival-biased exponent %.3f (want 1.0 +/- 0.05), "
                     "%d seeds",
                     balanced.exponent, drifting.exponent, probe.seeds)};
}

std::string CliOutput(std::vector<std::string> args) {
  args.insert(args.begin(), "hybrid_relay");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

Verdict Determinism() {
  const std::vector<std::string> sim = {"simulate", "--preset", "fig6",
                                        "--set",    "p2_db=17", "--horizon",
                                        "200000",   "--seed",   "99"};
  const std::vector<std::string> sweep = {
      "sweep", "--preset", "fig5", "--set", "sweep_simulate=true",
      "--horizon", "20000", "--seed", "99"};
  const bool sim_same = CliOutput(sim) == CliOutput(sim);
  const bool sweep_same = CliOutput(sweep) == CliOutput(sweep);
  std::vector<std::string> one_thread = sweep;
  one_thread.insert(one_thread.end(), {"--threads", "1"});
  std::vector<std::string> four_threads = sweep;
  four_threads.insert(four_threads.end(), {"--threads", "4"});
  const bool thread_free = CliOutput(one_thread) == CliOutput(four_threads);
  return {sim_same && sweep_same && thread_free,
          Format("simulate report %s, sweep csv %s, thread count %s",
                 sim_same ? "identical" : "DIFFERS",
                 sweep_same ? "identical" : "DIFFERS",
                 thread_free ? "irrelevant" : "CHANGES OUTPUT")};
}

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // 0: none
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace hybrid_relay

int main() {
  using namespace hybrid_relay;
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", 10.0, OracleEquivalence},
      {2, "kkt certification", 0.0, KktCertification},
      {3, "simulation vs analysis", 60.0, SimulationVsAnalysis},
      {4, "region probabilities", 0.0, RegionFrequencies},
      {5, "qualitative sweeps", 0.0, QualitativeClaims},
      {6, "dominance and gain", 0.0, DominanceAndGain},
      {7, "queue growth exponent", 120.0, QueueGrowth},
      {8, "determinism", 0.0, Determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v = c.run();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      v.pass = false;
      v.detail += Format("; over the %.0f s budget", c.time_limit_s);
    }
    if (!v.pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", v.pass ? "PASS" : "FAIL",
                c.id, c.title, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
