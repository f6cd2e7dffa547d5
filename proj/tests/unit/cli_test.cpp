// Copyright 2026 The dttc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the command-line tool end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "../support/fixtures.hpp"

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " DTTC_CLI_PATH " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fx(const std::string& name) {
  return dttc::testing::fixture_path(name + ".json");
}

bool has(const CliRun& r, const std::string& needle) {
  return r.out.find(needle) != std::string::npos;
}

TEST(CliTest, RunPrintsTraceAndOutcome) {
  const CliRun r = run("run " + fx("appendix_a"));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(has(r, "steps: 5")) << r.out;
  EXPECT_TRUE(has(r, "step 1: removed="));
  EXPECT_TRUE(has(r, "s3->(c4,t1)->s7->(c2,t2)->s3"));
  EXPECT_TRUE(has(r, "outcome: s1=c2 s2=c1 s3=c4 s4=c1 s5=c1 s6=c3 s7=c2")) << r.out;
}

TEST(CliTest, RunWritesDotFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "dttc_cli_trace";
  std::filesystem::remove_all(dir);
  const CliRun r = run("run " + fx("appendix_a") + " --trace " + dir.string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(std::filesystem::exists(dir / "step_1.dot"));
  EXPECT_TRUE(std::filesystem::exists(dir / "step_5.dot"));
  EXPECT_FALSE(std::filesystem::exists(dir / "step_6.dot"));
  std::filesystem::remove_all(dir);
}

TEST(CliTest, PairRuleGivesSameOutcome) {
  const CliRun r = run("run " + fx("appendix_a") + " --priority pair");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(has(r, "outcome: s1=c2 s2=c1 s3=c4 s4=c1 s5=c1 s6=c3 s7=c2")) << r.out;
}

TEST(CliTest, VerifyExitCodes) {
  const CliRun ok = run("verify " + fx("appendix_a") + " all");
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_TRUE(has(ok, "strategyproof: PASS"));

  const CliRun mu = run("verify " + fx("example_1") + " efficient --matching " +
                     fx("example_1_mu"));
  EXPECT_EQ(mu.status, 0) << mu.out;

  const CliRun fail = run("verify " + fx("example_1") + " efficient");
  EXPECT_EQ(fail.status, 1) << fail.out;
  EXPECT_TRUE(has(fail, "efficient: FAIL"));
}

TEST(CliTest, CheckReportsWitness) {
  const CliRun pseudo = run("check " + fx("appendix_b") + " pseudo-mnat");
  EXPECT_EQ(pseudo.status, 1) << pseudo.out;
  EXPECT_TRUE(has(pseudo, "witness:"));
  const CliRun mnat = run("check " + fx("appendix_b") + " mnat");
  EXPECT_EQ(mnat.status, 0) << mnat.out;
  const CliRun t2 = run("check " + fx("appendix_b") + " contours");
  EXPECT_EQ(t2.status, 0) << t2.out;
  EXPECT_TRUE(has(t2, "agree: yes"));
}

TEST(CliTest, FormatIsStable) {
  const auto tmp = std::filesystem::temp_directory_path() / "dttc_cli_format.json";
  ASSERT_EQ(run("format " + fx("quota_school") + " > " + tmp.string()).status, 0);
  const CliRun first = run("format " + fx("quota_school"));
  const CliRun second = run("format " + tmp.string());
  EXPECT_EQ(first.status, 0);
  EXPECT_EQ(first.out, second.out);
  std::filesystem::remove(tmp);
}

TEST(CliTest, InputErrorsExitTwo) {
  const CliRun missing = run("run /nonexistent/instance.json");
  EXPECT_EQ(missing.status, 2) << missing.out;
  EXPECT_TRUE(has(missing, "io"));
  const CliRun usage = run("frobnicate");
  EXPECT_EQ(usage.status, 2) << usage.out;
}

TEST(CliTest, BudgetExitFour) {
  const CliRun r = run("verify " + fx("appendix_a") + " strategyproof", "DTTC_RUN_BUDGET=10");
  EXPECT_EQ(r.status, 4) << r.out;
  EXPECT_TRUE(has(r, "840"));
}

}  // namespace
