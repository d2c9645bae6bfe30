// Copyright 2026 The QLBM Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kManifests = fs::path(QLBM_SOURCE_DIR) / "manifests";

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qlbm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = qlbm::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("qlbm_cli_") + info->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string out(const std::string& sub = "") const { return (dir_ / sub).string(); }
  fs::path dir_;
};

TEST_F(CliTest, AdvdiffWritesOneCsvPerStep) {
  const auto r = run({"advdiff", (kManifests / "advdiff_d1q3.conf").string(), "--out", out(),
                      "--set", "steps=4"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* sub : {"classical", "quantum"}) {
    for (int t = 0; t <= 4; ++t) {
      char name[32];
      std::snprintf(name, sizeof name, "step_%04d.csv", t);
      EXPECT_TRUE(fs::exists(dir_ / sub / name)) << sub << "/" << name;
    }
  }
  const auto summary = nlohmann::json::parse(slurp(dir_ / "summary.json"));
  EXPECT_LT(summary["max_rel_err"].get<double>(), 1e-9);
  EXPECT_TRUE(fs::exists(dir_ / "errors.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "timing.json"));
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  const auto manifest = (kManifests / "advdiff_d2q5.conf").string();
  ASSERT_EQ(run({"advdiff", manifest, "--out", out("a"), "--set", "steps=3", "--seed", "5"}).code, 0);
  ASSERT_EQ(run({"advdiff", manifest, "--out", out("b"), "--set", "steps=3", "--seed", "5"}).code, 0);
  std::size_t compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir_ / "a")) {
    if (!e.is_regular_file() || e.path().filename() == "timing.json") continue;
    const auto rel = fs::relative(e.path(), dir_ / "a");
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "b" / rel)) << rel;
    ++compared;
  }
  EXPECT_GT(compared, 5u);
}

TEST_F(CliTest, ClassicalVariantRunsNoQuantumJob) {
  const auto r = run({"cavity", (kManifests / "cavity.conf").string(), "--out", out(), "--variant",
                      "classical", "--set", "steps=3", "--set", "extent=4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "classical" / "history.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "single"));
  EXPECT_FALSE(fs::exists(dir_ / "frugal"));
  const auto adv = run({"advdiff", (kManifests / "advdiff_d1q2.conf").string(), "--out", out("adv"),
                        "--variant", "classical", "--set", "steps=2"});
  ASSERT_EQ(adv.code, 0) << adv.err;
  EXPECT_FALSE(fs::exists(dir_ / "adv" / "quantum"));
}

TEST_F(CliTest, CavityAllVariantsAgree) {
  const auto r = run({"cavity", (kManifests / "cavity.conf").string(), "--out", out(), "--set",
                      "steps=4", "--set", "extent=4", "--set", "boundary_mode=quantum"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = nlohmann::json::parse(slurp(dir_ / "summary.json"));
  EXPECT_LT(summary["frugal_vs_single"].get<double>(), 1e-8);
  for (const char* f : {"single/psi_final.csv", "frugal/omega_final.csv", "errors/frugal_psi.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
}

TEST_F(CliTest, ZeroStepsIsValid) {
  const auto r = run({"advdiff", (kManifests / "advdiff_d1q3.conf").string(), "--out", out(),
                      "--set", "steps=0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "quantum" / "step_0000.csv"));
}

TEST_F(CliTest, ResourcesAndVerify) {
  auto r = run({"resources", (kManifests / "resources_sweep.conf").string(), "--out", out("res"),
                "--set", "extents=2,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = nlohmann::json::parse(slurp(dir_ / "res" / "summary.json"));
  EXPECT_TRUE(summary["cnot_gap_non_decreasing"].get<bool>());
  r = run({"verify", (kManifests / "verify.conf").string(), "--out", out("ver"), "--set",
           "cavity_steps=2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "ver" / "verify.json"));
}

TEST_F(CliTest, ConfigurationErrorsExitWithTwo) {
  const auto adv = (kManifests / "advdiff_d1q3.conf").string();
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"advdiff"}).code, 2);
  EXPECT_EQ(run({"advdiff", "/nonexistent.conf", "--out", out()}).code, 2);
  EXPECT_EQ(run({"advdiff", adv, "--out", out(), "--set", "velocity=3"}).code, 2);
  EXPECT_EQ(run({"advdiff", adv, "--out", out(), "--set", "colour=red"}).code, 2);
  EXPECT_EQ(run({"advdiff", adv, "--out", out(), "--set", "noequals"}).code, 2);
  EXPECT_EQ(run({"resources", (kManifests / "resources_16.conf").string(), "--out", out(), "--set",
                 "extents="})
                .code,
            2);
  EXPECT_EQ(run({"cavity", (kManifests / "cavity.conf").string(), "--out", out(), "--backend",
                 "sampling"})
                .code,
            2);
  EXPECT_FALSE(fs::exists(dir_));
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, MalformedManifestNamesTheLine) {
  fs::create_directories(dir_);
  const auto path = dir_ / "bad.conf";
  std::ofstream(path) << "scheme = D1Q3\nsteps = 2\nthis line is broken\n";
  const auto r = run({"advdiff", path.string(), "--out", out("o")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, RunFailuresExitWithThree) {
  fs::create_directories(dir_);
  std::ofstream(dir_ / "file") << "x";
  const auto r = run({"advdiff", (kManifests / "advdiff_d1q3.conf").string(), "--out",
                      out("file/sub"), "--set", "steps=1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(r.err.empty());
}

}  // namespace
