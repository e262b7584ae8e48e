// Copyright 2026 The blocknorm Authors.
//
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

// End-to-end checks of the command-line tool.

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
};

Result Invoke(const std::string& args) {
  const std::string cmd = std::string(BLOCKNORM_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("blocknorm_cli_" + std::string(::testing::UnitTest::GetInstance()
                                               ->current_test_info()
                                               ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

TEST_F(Cli, Table1RowToStdout) {
  const Result r = Invoke("table1 --output -");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("x,1-Phi,1-t19,1-t9,(1-t9)/(1-Phi)\n", 0), 0u);
  EXPECT_NE(r.out.find("\n2.6,0.00466,0.00879,0.01437,3.08271\n"), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 26);
}

TEST_F(Cli, Table1WritesFileAndManifest) {
  const std::string out = Path("t1.csv");
  ASSERT_EQ(Invoke("table1 --output " + out).code, 0);
  EXPECT_EQ(Slurp(out), Invoke("table1").out);
  const json m = json::parse(Slurp(out + ".manifest.json"));
  EXPECT_TRUE(m.contains("rng_algorithm"));
  EXPECT_TRUE(m.contains("library_version"));
}

TEST_F(Cli, UnwritablePathFails) {
  const Result r = Invoke("table1 --output " + Path("missing/dir/t1.csv"));
  EXPECT_NE(r.code, 0);
}

TEST_F(Cli, SimulateIsDeterministic) {
  const std::string a = Path("a.csv"), b = Path("b.csv");
  const std::string args =
      "simulate --process ar1 --rho-grid 0:0.9:0.45 --stat t-star --m 50 --reps 500 --seed 3 ";
  ASSERT_EQ(Invoke(args + "--workers 1 --output " + a).code, 0);
  ASSERT_EQ(Invoke(args + "--workers 4 --output " + b).code, 0);
  const std::string text = Slurp(a);
  EXPECT_EQ(text, Slurp(b));
  EXPECT_EQ(text.rfind("x,rho=0,rho=0.45,rho=0.9,", 0), 0u);
  // 25 grid rows plus header.
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 26);
  EXPECT_TRUE(fs::exists(a + ".manifest.json"));
}

TEST_F(Cli, SimulateJsonCarriesMetadata) {
  const Result r = Invoke(
      "simulate --process iid --stat i-star --m 50 --reps 10 --seed 1 --format json");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["manifest"]["master_seed"], 1);
  EXPECT_EQ(j["columns"][0]["reference"], "t9");
  EXPECT_EQ(j["columns"][0]["reps"], 10);
  EXPECT_EQ(j["x"].size(), 25u);
}

TEST_F(Cli, SimulateArchSpotCheckRuns) {
  const Result r = Invoke(
      "simulate --process arch1 --b 0.9 --stat w-star --m1 43 --m2 7 --x 4.0 --reps 200");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("x,b=0.9,", 0), 0u);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(Invoke("").code, 1);
  EXPECT_EQ(Invoke("simulate --bogus 1").code, 1);
  EXPECT_EQ(Invoke("simulate --stat i-star --m1 43 --m2 7 --reps 5").code, 1);
  EXPECT_EQ(Invoke("simulate --process iid --rho 0.5 --reps 5").code, 1);
  EXPECT_EQ(Invoke("simulate --process ar1 --rho 1.5 --reps 5").code, 1);
  EXPECT_EQ(Invoke("simulate --x 4:1:0.1 --reps 5").code, 1);
  EXPECT_EQ(Invoke("simulate --format xml --reps 5").code, 1);
  EXPECT_EQ(Invoke("ci").code, 1);
  EXPECT_EQ(Invoke("simulate --help").code, 0);
  EXPECT_EQ(Invoke("ci --help").code, 0);
}

TEST_F(Cli, ConfigFileWithFlagPrecedence) {
  Write("run.cfg", "process=ar1\nrho=0.5\nstat=t-star\nm=25\nreps=200\nseed=9\n");
  const Result from_cfg = Invoke("simulate --config " + Path("run.cfg") + " --format json");
  ASSERT_EQ(from_cfg.code, 0);
  json j = json::parse(from_cfg.out);
  EXPECT_EQ(j["manifest"]["config"]["reps"], 200);
  EXPECT_EQ(j["manifest"]["config"]["scheme"]["m"], 25);
  const Result overridden =
      Invoke("simulate --config " + Path("run.cfg") + " --reps 100 --format json");
  ASSERT_EQ(overridden.code, 0);
  j = json::parse(overridden.out);
  EXPECT_EQ(j["manifest"]["config"]["reps"], 100);
}

TEST_F(Cli, CiOnGeneratedPanel) {
  const std::string panel = Path("panel.csv");
  ASSERT_EQ(Invoke("generate --process hd-linear --p 5 --n 400 --seed 2 --output " + panel).code, 0);
  const Result r = Invoke("ci --input " + panel + " --alpha 0.05 --m auto");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["p"], 5);
  EXPECT_EQ(j["m"], 4);
  EXPECT_EQ(j["quantile_source"], "t49");
  ASSERT_EQ(j["intervals"].size(), 5u);
  EXPECT_EQ(j["intervals"][0]["coordinate"], 1);
  EXPECT_EQ(j["intervals"][0]["name"], "z1");
  EXPECT_LT(j["intervals"][0]["lower"].get<double>(), j["intervals"][0]["upper"].get<double>());
}

TEST_F(Cli, TestDecisionsAndExitCodes) {
  Write("panel.csv", "a,b\n1,10\n2,12\n3,9\n4,11\n5,11\n6,13\n7,8\n8,10\n");
  Write("near.csv", "4.5,11\n");
  Write("far.csv", "100,11\n");
  Write("short.csv", "4.5\n");
  const std::string base = "test --input " + Path("panel.csv") + " --m 2 --mu0 ";

  Result r = Invoke(base + Path("near.csv"));
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(json::parse(r.out)["reject"].get<bool>());

  r = Invoke(base + Path("far.csv"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["reject"].get<bool>());
  EXPECT_EQ(j["violating_coordinates"], json::array({1}));

  EXPECT_NE(Invoke(base + Path("short.csv")).code, 0);
}

TEST_F(Cli, BadInputFiles) {
  Write("empty.csv", "");
  Write("ragged.csv", "1,2\n3\n");
  Write("text.csv", "1,2\n3,x\n");
  EXPECT_EQ(Invoke("ci --input " + Path("empty.csv")).code, 2);
  EXPECT_EQ(Invoke("ci --input " + Path("ragged.csv")).code, 2);
  EXPECT_EQ(Invoke("ci --input " + Path("text.csv")).code, 2);
  EXPECT_EQ(Invoke("ci --input " + Path("nope.csv")).code, 2);
}

}  // namespace
