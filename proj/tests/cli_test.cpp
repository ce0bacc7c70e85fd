// Copyright 2026 The qaunwrap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QAUNWRAP_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class CliProcess : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("qaunwrap_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string at(const std::string& name) const { return (dir_ / name).string(); }
  std::string out_dir() const { return "--out-dir " + dir_.string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliProcess, Help) {
  const auto r = run("--help");
  EXPECT_EQ(r.code, 0);
  for (const char* sub : {"gen", "embed", "qubo", "solve", "report", "validate", "stats"})
    EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
}

TEST_F(CliProcess, GenWritesOneFilePerSeed) {
  ASSERT_EQ(run("--seed 10 " + out_dir() + " gen --count 5").code, 0);
  for (int s = 10; s < 15; ++s) EXPECT_TRUE(fs::exists(at("scene_" + std::to_string(s) + ".json")));
  EXPECT_EQ(run(out_dir() + " gen -H 0").code, 1);
}

TEST_F(CliProcess, ChainStatRows) {
  auto r = run(out_dir() + " embed --scheme pegasus_native -H 10 -W 10");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1,0,1,1\n");
  r = run(out_dir() + " embed --scheme chimera_symmetric -H 10 -W 10");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4,0,0,4\n");
  EXPECT_EQ(run("validate --embedding " + at("embedding_pegasus_native_10x10.json")).code, 0);
}

TEST_F(CliProcess, ExitCodes) {
  EXPECT_EQ(run("stats --embedding " + at("nothing.json")).code, 4);
  EXPECT_EQ(run(out_dir() + " embed -H 64 -W 64").code, 3);
  std::ofstream(at("bad.json")) << R"({"target": {"kind": "chimera", "shape": [2, 2, 4]}, "H": 1, "W": 1,
                                      "chains": {"0": [0, 1], "1": [4]}})";
  EXPECT_EQ(run("validate --embedding " + at("bad.json")).code, 2);
  std::ofstream(at("garbage.json")) << "{ not json";
  EXPECT_EQ(run("stats --embedding " + at("garbage.json")).code, 4);
  EXPECT_EQ(run("frobnicate").code, 1);
}

TEST_F(CliProcess, SolveAndReport) {
  ASSERT_EQ(run("--seed 3 " + out_dir() + " gen -H 4 -W 4 --count 1 --noiseless").code, 0);
  ASSERT_EQ(run(out_dir() + " embed -H 4 -W 4").code, 0);
  const std::string solve = "--seed 8 " + out_dir() + " solve --scene " + at("scene_3.json") + " --embedding " +
                            at("embedding_pegasus_native_4x4.json") + " --reads 50 --sweeps 300";
  const auto first = run(solve);
  ASSERT_EQ(first.code, 0);
  EXPECT_EQ(first.out.rfind("pegasus_native,3,1,0,", 0), 0u) << first.out;
  std::ifstream in(at("run_pegasus_native_3.json"));
  const std::string record((std::istreambuf_iterator<char>(in)), {});
  ASSERT_EQ(run(solve).code, 0);
  std::ifstream again(at("run_pegasus_native_3.json"));
  EXPECT_EQ(std::string((std::istreambuf_iterator<char>(again)), {}), record);
  const auto report = run("report " + at("run_pegasus_native_3.json"));
  EXPECT_EQ(report.code, 0);
  EXPECT_EQ(report.out, "scene,pegasus_native\n3,100.0\nAverage,100.0\nStd,0.0\n");
}
