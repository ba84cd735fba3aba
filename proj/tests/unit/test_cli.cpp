#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli/cli.hpp"
#include "radplap/presets.hpp"
#include "radplap/problem_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("radplap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(std::vector<std::string> args, const fs::path& out_dir) {
    args.insert(args.begin(), {"radial_plap", "--out-dir", out_dir.string()});
    std::ostringstream out, err;
    const int code = radplap::cli::run(args, out, err);
    return Outcome{code, out.str(), err.str()};
  }
  Outcome run(std::vector<std::string> args) { return run(std::move(args), dir_); }

  json read_json(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
  }

  std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path write_file(const std::string& name, const std::string& text) {
    fs::create_directories(dir_);
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SolvePresetGivesPiSquared) {
  const auto r = run({"--json", "solve", "--preset", "annulus-trivial"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "solve.json");
  EXPECT_NEAR(doc["lambda1"].get<double>(), std::numbers::pi * std::numbers::pi, 1e-5);
  EXPECT_EQ(doc["zero_count"].get<int>(), 0);
  EXPECT_TRUE(fs::exists(dir_ / "eigenfunction.csv"));
  const auto manifest = read_json(dir_ / "manifest.json");
  EXPECT_EQ(manifest["exit_code"].get<int>(), 0);
  EXPECT_EQ(manifest["problem_hash"], doc["problem_hash"]);
  EXPECT_EQ(json::parse(r.out)["lambda1"], doc["lambda1"]);
}

TEST_F(Cli, SolveFromProblemFile) {
  const auto p = write_file("annulus.json", radplap::problem_to_json(radplap::annulus(3)));
  const auto r = run({"solve", "--problem", p.string(), "--method", "both"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "solve.json");
  EXPECT_LT(doc["agreement"].get<double>(), 1e-3);
  EXPECT_TRUE(fs::exists(dir_ / "eigenfunction_rayleigh.csv"));
}

TEST_F(Cli, CheckConditionsVerdicts) {
  EXPECT_EQ(run({"check-conditions", "--preset", "ex61"}).code, 0);
  const auto doc = read_json(dir_ / "conditions.json");
  EXPECT_FALSE(doc.dump().empty());
  EXPECT_EQ(run({"check-conditions", "--preset", "critical-tail"}).code, 1);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"solve", "--preset", "no-such-preset"}).code, 2);
  EXPECT_EQ(run({"solve", "--nodes", "abc", "--preset", "ex61"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const auto bad = write_file("bad.json", R"({"N": 3, "p": 2, "R1": 1})");
  const auto r = run({"solve", "--problem", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/R2"), std::string::npos) << r.err;
  const auto broken = write_file("broken.json", "{\n\"N\": 3,\n");
  EXPECT_EQ(run({"check-conditions", "--problem", broken.string()}).code, 2);
}

TEST_F(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("check-conditions"), std::string::npos);
  const auto e = run({"example", "--help"});
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("ex61"), std::string::npos);
}

TEST_F(Cli, DegiorgiHandTrace) {
  const auto r = run({"--json", "degiorgi", "--K", "1", "--eta", "2", "--d1", "1", "--d2", "1", "--J0", "0.25",
                      "--n-max", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "degiorgi.json");
  EXPECT_DOUBLE_EQ(doc["thresholds"]["first"].get<double>(), 0.25);
  EXPECT_TRUE(doc["bound"]["holds"].get<bool>());
  EXPECT_TRUE(fs::exists(dir_ / "degiorgi_trace.csv"));
}

TEST_F(Cli, DegiorgiAboveThresholdIsNotAFailure) {
  // The precondition is not met, so there is no claim to refute.
  const auto r = run({"degiorgi", "--K", "1", "--eta", "2", "--d1", "1", "--d2", "1", "--J0", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(read_json(dir_ / "degiorgi.json")["bound"]["precondition_met"].get<bool>());
}

TEST_F(Cli, DegiorgiSweep) {
  const auto r = run({"--seed", "7", "degiorgi", "--sweep", "200", "--alternative", "both"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "degiorgi.json");
  EXPECT_EQ(doc["seed"].get<int>(), 7);
}

TEST_F(Cli, DeterministicOutputs) {
  const auto a = dir_ / "a";
  const auto b = dir_ / "b";
  for (const auto& d : {a, b}) {
    ASSERT_EQ(run({"example", "ex62", "--nodes", "1500"}, d).code, 0);
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    if (name == "manifest.json") continue;
    EXPECT_EQ(slurp(entry.path()), slurp(b / name)) << name;
    ++compared;
  }
  EXPECT_GE(compared, 4u);
}

TEST_F(Cli, AsymptoticsReadsSolveOutput) {
  ASSERT_EQ(run({"solve", "--preset", "annulus-n3"}).code, 0);
  const auto r = run({"asymptotics", "--preset", "annulus-n3", "--eig", (dir_ / "eigenfunction.csv").string(),
                      "--boundary", "left"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "asymptotics.json");
  EXPECT_TRUE(doc["pass"].get<bool>());
  EXPECT_TRUE(fs::exists(dir_ / "envelope_left.csv"));
}

TEST_F(Cli, ExampleWritesSummary) {
  ASSERT_EQ(run({"example", "ex61"}).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "example.json"));
  EXPECT_TRUE(fs::exists(dir_ / "summary.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "problem.json"));
}
