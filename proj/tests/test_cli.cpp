// Copyright 2026 The tmg Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/tmg/cli.hpp"
#include "../tools/tmg/config.hpp"
#include "json.hpp"

namespace tmg::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tmg");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tmg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::map<std::string, std::string> report(const std::string& text) {
  std::map<std::string, std::string> kv;
  const auto rows = csv(text);
  for (std::size_t i = 1; i < rows.size(); ++i) kv[rows[i].at(0)] = rows[i].at(1);
  return kv;
}

std::string state_config(const std::string& state, const std::string& extra = "") {
  return "[state]\n" + state + "\n" + extra;
}

TEST_F(CliTest, MalformedValueNamesLineAndField) {
  const std::string path = write("bad.cfg", "[state]\n# comment\nz1 = abc\n");
  const Result r = run({"evolve", "--config", path});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("config:3"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("z1"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnknownKeysAndSectionsAreRejected) {
  EXPECT_EQ(run({"evolve", "--config", write("a.cfg", "[state]\nzz = 1\n")}).code, kExitConfig);
  EXPECT_EQ(run({"evolve", "--config", write("b.cfg", "[nope]\n")}).code, kExitConfig);
  EXPECT_EQ(run({"evolve", "--config", write("c.cfg", "[state]\nr = 1\nr = 2\n")}).code,
            kExitConfig);
  const Result r = run({"sweep", "--config", write("d.cfg", "[sweep]\nvariable = z0\nlo = 1\nhi = 0\nsteps = 3\n")});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("hi"), std::string::npos) << r.err;
}

TEST_F(CliTest, ParserRejectsBadCommandLines) {
  EXPECT_EQ(run({}).code, kExitConfig);
  EXPECT_EQ(run({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(run({"evolve", "--format", "xml"}).code, kExitConfig);
  EXPECT_EQ(run({"evolve", "--t-max", "-1"}).code, kExitConfig);
  EXPECT_EQ(run({"oracle-check", "--cutoff", "64"}).code, kExitConfig);
  EXPECT_EQ(run({"evolve", "--config", (dir_ / "missing.cfg").string()}).code, kExitConfig);
}

TEST_F(CliTest, DomainErrorsExitWithThree) {
  const Result r = run({"evolve", "--config", write("neg.cfg", state_config("nu1 = -1"))});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_EQ(run({"esd", "--config", write("g.cfg", "[channel]\ngamma1 = 0\n")}).code,
            kExitDomain);
}

TEST_F(CliTest, SweepNeedsASweepSection) {
  EXPECT_EQ(run({"sweep"}).code, kExitConfig);
}

TEST_F(CliTest, DumpedConfigReproducesItself) {
  const std::string path =
      write("in.cfg", state_config("z1 = 0.1\nr = 0.7", "[sweep]\nvariable = r0\nlo = 0\nhi = 1\nsteps = 5\n"));
  const Result first = run({"dump-config", "--config", path, "--t-max", "12.5"});
  ASSERT_EQ(first.code, kExitOk);
  const Result second = run({"dump-config", "--config", write("out.cfg", first.out)});
  ASSERT_EQ(second.code, kExitOk);
  EXPECT_EQ(first.out, second.out);
  EXPECT_NE(first.out.find("12.5"), std::string::npos);
  const RunConfig cfg = parse_config(first.out);
  EXPECT_EQ(cfg.state.z1, 0.1);
  EXPECT_EQ(cfg.state.r, 0.7);
  ASSERT_TRUE(cfg.sweep.has_value());
  EXPECT_EQ(cfg.sweep->variable, SweepVariable::R0);
  EXPECT_EQ(cfg.sweep->steps, 5);
  // --dump-config on any subcommand prints the same thing.
  EXPECT_EQ(run({"evolve", "--config", path, "--t-max", "12.5", "--dump-config"}).out, first.out);
}

TEST_F(CliTest, EvolveIsDeterministic) {
  const std::string path = write("s.cfg", state_config("z1 = 0.3\nz2 = -0.1\nr = 0.8\nnu1 = 0.2",
                                                       "[channel]\nnb1 = 0.4\n"));
  const Result a = run({"evolve", "--config", path, "--seed", "1"});
  const Result b = run({"evolve", "--config", path, "--seed", "99", "--workers", "3"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, VacuumEvolvesToItself) {
  const Result r = run({"evolve", "--t-max", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 302u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "n1", "n2", "m1", "m2", "ms", "mc", "S"}));
  EXPECT_EQ(rows.back()[0], "5");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (std::size_t c = 1; c < rows[i].size(); ++c) EXPECT_EQ(rows[i][c], "0");
  }
}

TEST_F(CliTest, JsonTableOutput) {
  const std::string out = (dir_ / "traj.json").string();
  const Result r = run({"evolve", "--format", "json", "--out", out,
                        "--config", write("t.cfg", state_config("r = 1", "[time]\nt_max = 1\nn_points = 3\n"))});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["columns"].size(), 8u);
  ASSERT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(j["rows"][2][0].get<double>(), 1.0);
  EXPECT_LT(j["rows"][0][7].get<double>(), 0);
}

TEST_F(CliTest, EsdReportForSqueezedPair) {
  const std::string path = write("e.cfg", state_config("z1 = 2\nz2 = 2\nr = 1"));
  const Result r = run({"esd", "--config", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto kv = report(r.out);
  EXPECT_EQ(kv.at("kind"), "FiniteTime");
  EXPECT_EQ(kv.at("analytic_applicable"), "true");
  EXPECT_EQ(kv.at("analytic_kind"), "FiniteTime");
  EXPECT_NEAR(std::stod(kv.at("analytic_t_esd")), 0.836373, 1e-6);
  EXPECT_NEAR(std::stod(kv.at("z0_threshold")), 1.344268, 1e-6);
  EXPECT_LT(std::stod(kv.at("first_form_ratio")), 0);
  EXPECT_LT(std::stod(kv.at("relative_difference")), 1e-6);

  const Result j = run({"esd", "--config", path, "--format", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["kind"], "FiniteTime");
  EXPECT_TRUE(doc["analytic_applicable"].get<bool>());
}

TEST_F(CliTest, EsdReportForMixedPair) {
  const Result r = run({"esd", "--config", write("m.cfg", state_config("r = 0.3\nnu1 = 1\nnu2 = 1"))});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto kv = report(r.out);
  EXPECT_EQ(kv.at("kind"), "InitiallySeparable");
  EXPECT_NEAR(std::stod(kv.at("r_min")), 0.549306, 1e-6);
  EXPECT_EQ(kv.at("analytic_applicable"), "false");
  EXPECT_EQ(kv.at("numeric_t_esd"), "nan");
}

TEST_F(CliTest, EsdReportAtVanishingDenominator) {
  const Result r = run({"esd", "--config", write("u.cfg", state_config("z1 = 0.7\nz2 = 0.7\nr = 0.7"))});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(report(r.out).at("analytic_kind"), "Undefined");
}

TEST_F(CliTest, TwoStepSweepHasTwoRows) {
  const std::string path =
      write("w.cfg", state_config("r = 1", "[sweep]\nvariable = t\nlo = 0\nhi = 1\nsteps = 2\n"));
  const Result r = run({"sweep", "--config", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "S", "sign"}));
  EXPECT_EQ(rows[1][0], "0");
  EXPECT_EQ(rows[2][0], "1");
  EXPECT_EQ(rows[1][2], "-1");
}

TEST_F(CliTest, SweepOutputIndependentOfWorkers) {
  const std::string path = write(
      "r.cfg", state_config("z1 = 0.5\nz2 = 0.5\nnu1 = 0.1",
                            "[time]\nt_max = 20\nn_points = 21\n[sweep]\nvariable = r0\nlo = 0\nhi = 2\nsteps = 11\n"));
  const Result a = run({"sweep", "--config", path, "--workers", "1"});
  const Result b = run({"sweep", "--config", path, "--workers", "4"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(csv(a.out).size(), 1u + 11 * 21);
}

TEST_F(CliTest, SqueezingBoundaryRecipe) {
  const Result r = run({"sweep", "--config", std::string(TMG_RECIPE_DIR) + "/fig3b.cfg"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::map<double, bool> flips;  // z0 -> S reaches >= 0 within the window
  const auto rows = csv(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    bool& f = flips[std::stod(rows[i][0])];
    f = f || std::stoi(rows[i][2]) >= 0;
  }
  double lowest = 1e9;
  for (const auto& [z, f] : flips) {
    if (f) lowest = std::min(lowest, z);
  }
  EXPECT_GT(lowest, 1.344268);
  EXPECT_LE(lowest, 1.4);
  for (const auto& [z, f] : flips) EXPECT_EQ(f, z >= lowest) << z;
}

TEST_F(CliTest, MixednessRecipeMatchesThreshold) {
  const Result r = run({"sweep", "--config", std::string(TMG_RECIPE_DIR) + "/fig4.cfg"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 121 * 121);
  int separable = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double nu1 = std::stod(rows[i][0]), nu2 = std::stod(rows[i][1]);
    const double x = 8 * nu1 * nu2 * (1 + nu1) * (1 + nu2) / std::pow(1 + nu1 + nu2, 2);
    const double r_min = 0.25 * std::acosh(1 + x);
    if (std::fabs(r_min - 1) < 1e-6) continue;
    EXPECT_EQ(std::stoi(rows[i][3]) < 0, r_min < 1) << nu1 << " " << nu2;
    separable += std::stoi(rows[i][3]) >= 0;
  }
  EXPECT_GT(separable, 0);
}

TEST_F(CliTest, RecipesParse) {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(TMG_RECIPE_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    const Result r = run({"dump-config", "--config", entry.path().string()});
    EXPECT_EQ(r.code, kExitOk) << entry.path() << ": " << r.err;
    ++count;
  }
  EXPECT_GE(count, 11);
}

TEST_F(CliTest, OracleCheckFailsOnTooSmallCutoff) {
  const std::string path = write(
      "o.cfg", state_config("z1 = 0.4\nz2 = 0.4\nr = 0.6", "[time]\nt_max = 0.1\nn_points = 2\n"));
  const Result r = run({"oracle-check", "--config", path, "--cutoff", "4"});
  EXPECT_EQ(r.code, kExitOracle);
  EXPECT_NE(r.err.find("cutoff insufficient"), std::string::npos) << r.err;
}

TEST_F(CliTest, OracleCheckSingleCasePasses) {
  const std::string path =
      write("p.cfg", state_config("z1 = 0.1\nz2 = 0.1\nr = 0.3",
                                  "[channel]\ngamma1 = 1\ngamma2 = 1\nnb1 = 0.2\nnb2 = 0.2\n"
                                  "[time]\nt_max = 1\nn_points = 3\n[oracle]\ncutoff = 16\n"));
  const Result r = run({"oracle-check", "--config", path, "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("PASS"), std::string::npos);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_FALSE(j["advisory"].get<bool>());
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_LT(j["max_deviation"]["n1"].get<double>(), 1e-3);
}

TEST_F(CliTest, OracleCheckOutsideCertifiedDomainIsAdvisory) {
  const std::string path = write(
      "adv.cfg", state_config("r = 2", "[channel]\ngamma1 = 1\ngamma2 = 1\n"
                                       "[time]\nt_max = 0.1\nn_points = 2\n"));
  const Result r = run({"oracle-check", "--config", path});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("outside certified domain"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("advisory"), std::string::npos);
  EXPECT_EQ(csv(r.out).size(), 2u);
}

}  // namespace
}  // namespace tmg::cli
