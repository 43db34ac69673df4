// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("monoadv_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args, const std::string& env = "") const {
    const auto out = dir_ / "stdout.txt";
    const auto err = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" + MONOADV_CLI + "' " + args +
                            " > '" + out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return dir_ / name;
  }

  fs::path dir_;
};

const fs::path kGolden = MONOADV_GOLDEN_DIR;

}  // namespace

TEST_F(Cli, PairingRunMatchesGolden) {
  const auto r = run("run '" + (kGolden / "pairing_small.cfg").string() + "' --out o");
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto* name : {"summary.csv", "oig_lb_n1_trials.csv", "oig_lb_n4_trials.csv"}) {
    EXPECT_EQ(slurp(dir_ / "o" / name), slurp(kGolden / "pairing_small" / name)) << name;
  }
  EXPECT_EQ(slurp(dir_ / "o" / "transcripts" / "oig_lb_n4_trial0.txt"),
            slurp(kGolden / "pairing_small" / "oig_lb_n4_trial0.txt"));
  const auto manifest = slurp(dir_ / "o" / "manifest.txt");
  EXPECT_EQ(manifest.rfind("monoadv 0.1.0\n", 0), 0u);
  EXPECT_NE(manifest.find("[files]\nmanifest.txt\nsummary.csv\noig_lb_n1_trials.csv\n"), std::string::npos);
  EXPECT_NE(r.out.find("oig_lb n=4 m=4 r=8 mean=0.25"), std::string::npos) << r.out;
}

TEST_F(Cli, MajorityRunMatchesGolden) {
  const auto r = run("run '" + (kGolden / "majority_small.cfg").string() + "' --out o --workers 2");
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto* name : {"summary.csv", "majority_lb_n40_trials.csv"}) {
    EXPECT_EQ(slurp(dir_ / "o" / name), slurp(kGolden / "majority_small" / name)) << name;
  }
}

TEST_F(Cli, RerunsAreByteIdentical) {
  const auto cfg = write("c.cfg", "experiment=oblivious_oig\nn=20,30\ntrials=25\nseed=3\ntranscripts=2\n");
  ASSERT_EQ(run("run c.cfg --out a --svg").code, 0);
  ASSERT_EQ(run("run c.cfg --out b --svg --workers 3").code, 0);
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir_ / "a")) {
    if (!entry.is_regular_file() || entry.path().filename() == "manifest.txt") continue;
    const auto rel = fs::relative(entry.path(), dir_ / "a");
    EXPECT_EQ(slurp(entry.path()), slurp(dir_ / "b" / rel)) << rel;
    ++files;
  }
  EXPECT_EQ(files, 8u);
  EXPECT_TRUE(fs::exists(dir_ / "a" / "oblivious_oig_error_vs_n.svg"));
}

TEST_F(Cli, MalformedConfigWritesNothing) {
  write("bad.cfg", "experiment=oig_lb\nn=10\ntrials=3\n");
  auto r = run("run bad.cfg --out o");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error code=parse_error message=", 0), 0u) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "o"));
  write("bad2.cfg", "experiment=oig_lb\nn=10\ntrials=3\nseed=1\nm=4\n");
  r = run("run bad2.cfg --out o");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("code=invalid_parameters"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "o"));
  r = run("run missing.cfg --out o");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("code=io_error"), std::string::npos);
  r = run("frobnicate");
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, FailedThresholdExitsOne) {
  write("f.cfg", "experiment=majority_lb\nn=40\ntrials=4\nseed=5\nfloor=2\n");
  const auto r = run("run f.cfg --out o");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find(" fail\n"), std::string::npos);
  EXPECT_NE(slurp(dir_ / "o" / "summary.csv").find(",fail\n"), std::string::npos);
}

TEST_F(Cli, DefaultOutputDirectoryFromEnvironment) {
  write("e.cfg", "experiment=coupon\nn=100\ntrials=10\nseed=1\n");
  ASSERT_EQ(run("run e.cfg", "MONOADV_OUT_DIR=envout").code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "envout" / "coupon_n100_trials.csv"));
  ASSERT_EQ(run("run e.cfg", "MONOADV_OUT_DIR=").code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "summary.csv"));
}

TEST_F(Cli, AuditCleanAndFaulty) {
  const auto golden = slurp(kGolden / "pairing_small" / "oig_lb_n4_trial0.txt");
  write("ok.txt", golden);
  auto r = run("audit ok.txt");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "audit clean violations=0\n");

  auto flipped = golden;
  flipped.replace(flipped.find("corrupted 10 0 4"), 16, "corrupted 10 1 4");
  write("flip.txt", flipped);
  r = run("audit flip.txt");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("violation code=monotonicity", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("audit failed violations=1\n"), std::string::npos);

  auto arity = golden;
  arity.replace(arity.find("\nm 4\n"), 5, "\nm 3\n");
  write("arity.txt", arity);
  r = run("audit arity.txt");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("violation code=arity"), std::string::npos) << r.out;

  write("junk.txt", "hello\n");
  r = run("audit junk.txt");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("code=malformed_transcript"), std::string::npos);
}
