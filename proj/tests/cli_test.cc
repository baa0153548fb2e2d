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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hybrid_relay/cli.h"

namespace hybrid_relay {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hybrid_relay");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST_CASE("policy prints case, matrix and throughput") {
  const Result r = Invoke({"policy", "--preset", "fig3a", "--set", "r0=2"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("case: Psi") != std::string::npos);
  CHECK(r.out.find("throughput:") != std::string::npos);
}

TEST_CASE("policy json rows sum to one") {
  const Result r = Invoke({"policy", "--preset", "fig6", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  for (const auto& row : j["policy"]) {
    double sum = 0.0;
    for (double v : row) sum += v;
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("all-outage configuration") {
  const Result r = Invoke({"policy", "--set", "p1=1e-9", "--set", "p2=1e-9",
                           "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["throughput"].get<double>() == 0.0);
  for (const auto& row : j["policy"]) CHECK(row[3].get<double>() == 1.0);
}

TEST_CASE("sweep reruns are byte-identical") {
  const std::vector<std::string> args = {"sweep", "--preset", "fig5", "--set",
                                         "sweep_simulate=true", "--horizon",
                                         "20000", "--seed", "7"};
  const Result a = Invoke(args);
  const Result b = Invoke(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("axis_key,", 0) == 0);
}

TEST_CASE("simulate reruns are byte-identical") {
  const std::vector<std::string> args = {"simulate", "--preset", "fig4",
                                         "--set", "r0=2", "--horizon", "50000"};
  const Result a = Invoke(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == Invoke(args).out);
  const nlohmann::json j = nlohmann::json::parse(a.out);
  CHECK(j.contains("analytic_throughput"));
  CHECK(j["report"]["horizon"].get<std::uint64_t>() == 50000);
}

TEST_CASE("out flag writes the file") {
  const auto path = std::filesystem::temp_directory_path() / "hybrid_relay_cli_test.csv";
  const Result r = Invoke({"sweep", "--preset", "fig3a", "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == Invoke({"sweep", "--preset", "fig3a"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("config file layering") {
  const auto path = std::filesystem::temp_directory_path() / "hybrid_relay_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "r0 = 3\n";
  }
  const Result from_file = Invoke({"policy", "--preset", "fig4", "--config",
                                   path.string(), "--format", "json"});
  const Result from_set = Invoke({"policy", "--preset", "fig4", "--set", "r0=3",
                                  "--format", "json"});
  CHECK(from_file.out == from_set.out);
  const Result overridden = Invoke({"policy", "--preset", "fig4", "--config",
                                    path.string(), "--set", "r0=5", "--format",
                                    "json"});
  CHECK(nlohmann::json::parse(overridden.out)["params"]["r0"] == 5.0);
  std::filesystem::remove(path);
}

TEST_CASE("verify") {
  const Result ok = Invoke({"verify", "--count", "200"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("PASS") != std::string::npos);
  CHECK(ok.out.find("negative controls detected: yes") != std::string::npos);
  CHECK(Invoke({"verify", "--count", "0"}).code == kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(Invoke({}).code == kExitUsage);
  CHECK(Invoke({"frobnicate"}).code == kExitUsage);
  CHECK(Invoke({"policy", "--preset", "nope"}).code == kExitUsage);
  CHECK(Invoke({"policy", "--set", "bogus=1"}).code == kExitUsage);
  CHECK(Invoke({"policy", "--config", "/nonexistent/file"}).code == kExitUsage);
  CHECK(Invoke({"sweep", "--preset", "fig3a", "--set", "sweep_step=0"}).code ==
        kExitUsage);
  CHECK(Invoke({"policy", "--help"}).code == kExitOk);
}

TEST_CASE("json helpers") {
  SystemParams p;
  p.rsi = RsiCoefficient{0.5};
  const nlohmann::json j = ToJson(p);
  CHECK(j["k_r"] == 0.5);
  CHECK_FALSE(j.contains("i_r"));
}

}  // namespace
}  // namespace hybrid_relay
