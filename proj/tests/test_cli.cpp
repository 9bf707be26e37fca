/* Copyright 2026 The monopmf Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("monopmf_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result Run(const std::string& args) const {
    const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string("'") + MONOPMF_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" +
                            err.string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = Slurp(out);
    r.err = Slurp(err);
    return r;
  }

  std::string Write(const char* name, const std::string& contents) const {
    const auto p = dir_ / name;
    std::ofstream(p) << contents;
    return p.string();
  }

  std::string Path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::vector<std::string>> Table(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, '\t');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::map<std::string, std::string> KeyValues(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

const char* kExampleCounts = "0\t20\n1\t14\n2\t11\n3\t22\n4\t15\n5\t18\n";
const char* kUniform5 =
    "0\t0.16666666666666666\n1\t0.16666666666666666\n2\t0.16666666666666666\n"
    "3\t0.16666666666666666\n4\t0.16666666666666666\n5\t0.16666666666666666\n";

TEST_F(Cli, EstimateGrenander) {
  const auto counts = Write("c.tsv", kExampleCounts);
  const auto r = Run("estimate --counts " + counts + " --estimator gren");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = Table(r.out);
  ASSERT_EQ(rows.size(), 6u);
  const double expect[] = {0.20, 0.16, 0.16, 0.16, 0.16, 0.16};
  for (std::size_t x = 0; x < 6; ++x) {
    EXPECT_EQ(rows[x][0], std::to_string(x));
    EXPECT_NEAR(std::stod(rows[x][1]), expect[x], 1e-15);
  }
}

TEST_F(Cli, EstimateDistanceTable) {
  const auto counts = Write("c.tsv", kExampleCounts);
  const auto truth = Write("u.tsv", kUniform5);
  const auto r = Run("estimate --counts " + counts + " --estimator all --truth " + truth);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = Table(r.out);
  std::map<std::string, std::vector<std::string>> dist;
  bool in_dist = false;
  std::vector<std::string> header;
  for (const auto& row : rows) {
    if (!row.empty() && row[0] == "estimator") {
      in_dist = true;
      header = row;
      continue;
    }
    if (in_dist) dist[row[0]] = row;
  }
  ASSERT_EQ(header, (std::vector<std::string>{"estimator", "hellinger", "l1", "l2", "linf"}));
  ASSERT_EQ(dist.size(), 3u);
  EXPECT_NEAR(std::stod(dist["empirical"][1]), 0.08043, 5e-5);
  EXPECT_NEAR(std::stod(dist["empirical"][2]), 0.2, 5e-5);
  EXPECT_NEAR(std::stod(dist["rear"][3]), 0.09129, 5e-5);
  EXPECT_NEAR(std::stod(dist["gren"][1]), 0.03048, 5e-5);
  EXPECT_NEAR(std::stod(dist["gren"][2]), 0.06667, 5e-5);
  EXPECT_NEAR(std::stod(dist["gren"][3]), 0.03651, 5e-5);
}

TEST_F(Cli, EstimateSinglePointCounts) {
  const auto counts = Write("c.tsv", "0\t9\n");
  const auto r = Run("estimate --counts " + counts + " --estimator gren");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0\t1\n");
}

TEST_F(Cli, EstimateWritesRoundTrippableFile) {
  const auto counts = Write("c.tsv", "0\t7\n1\t2\n2\t5\n3\t1\n");
  const auto out = Path("g.pmf");
  ASSERT_EQ(Run("estimate --counts " + counts + " --estimator gren --out " + out).code, 0);
  const auto printed = Run("estimate --counts " + counts + " --estimator gren");
  EXPECT_EQ(Slurp(out), printed.out);
  const auto rows = Table(printed.out);
  // 7/15, then (2+5)/30 twice, then 1/15.
  EXPECT_NEAR(std::stod(rows[0][1]), 7.0 / 15.0, 1e-15);
  EXPECT_NEAR(std::stod(rows[1][1]), 7.0 / 30.0, 1e-15);
}

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(Run("").code, 1);
  EXPECT_EQ(Run("frobnicate").code, 1);
  EXPECT_EQ(Run("estimate").code, 1);
  EXPECT_EQ(Run("simulate --truth poisson:3 --reps 2 --out " + Path("x")).code, 1);
  EXPECT_EQ(Run("simulate --truth uniform:3 --reps 0 --out " + Path("x")).code, 1);
  EXPECT_EQ(Run("simulate --truth uniform:3 --reps 2 --metrics kl --out " + Path("x")).code, 1);
  EXPECT_EQ(Run("risk --truth uniform:3 --k 0.5").code, 1);
  EXPECT_EQ(Run("asymptotics").code, 1);
  EXPECT_EQ(Run("asymptotics --truth values:0.2,0.8").code, 1);
  EXPECT_EQ(Run("--version").code, 0);
}

TEST_F(Cli, DataErrorsExitTwo) {
  EXPECT_EQ(Run("estimate --counts " + Path("absent.tsv")).code, 2);
  const auto bad = Write("bad.tsv", "0\t3\n2\t4\n");
  const auto r = Run("estimate --counts " + bad);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  const auto nonmono = Write("nm.tsv", "0\t0.2\n1\t0.8\n");
  EXPECT_EQ(Run("asymptotics --pmf " + nonmono).code, 2);
  const auto cfg = Write("cfg.json", "{ \"truth\": ");
  EXPECT_EQ(Run("simulate --config " + cfg).code, 2);
}

TEST_F(Cli, SimulateIsDeterministic) {
  const std::string args = " --truth mixture:0.2:3,0.8:7 --n 50 --reps 40 --seed 11 --metrics hellinger,l1,l2,linf";
  ASSERT_EQ(Run("simulate" + args + " --out " + Path("a")).code, 0);
  ASSERT_EQ(Run("simulate" + args + " --threads 3 --out " + Path("b")).code, 0);
  for (const char* suffix : {"_raw.csv", "_summary.csv"})
    EXPECT_EQ(Slurp(Path("a") + suffix), Slurp(Path("b") + suffix)) << suffix;
  const auto raw = Slurp(Path("a") + "_raw.csv");
  EXPECT_EQ(raw.rfind("replicate,estimator,metric,value\n", 0), 0u);
  EXPECT_EQ(std::count(raw.begin(), raw.end(), '\n'), 1 + 40 * 3 * 4);
  const auto meta = Slurp(Path("a") + "_meta.json");
  EXPECT_NE(meta.find("\"mixture:0.2:3,0.8:7\""), std::string::npos);
  EXPECT_NE(meta.find("\"inequality_violations\": 0"), std::string::npos);
}

TEST_F(Cli, SimulateMixingTarget) {
  const auto r = Run("simulate --truth geometric:0.75 --target mixing --n 200 --reps 50 --seed 1 --out " + Path("m"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto meta = Slurp(Path("m") + "_meta.json");
  EXPECT_NE(meta.find("\"invalid_mixing_rows\": 0"), std::string::npos) << meta;
  EXPECT_NE(meta.find("\"rear\""), std::string::npos);
  EXPECT_EQ(meta.find("\"empirical\""), std::string::npos);
}

TEST_F(Cli, SimulateFromConfigFile) {
  const auto cfg = Write("cfg.json", "{\"truth\": \"uniform:5\", \"n\": 30, \"reps\": 10, \"seed\": 3, "
                                     "\"metrics\": \"l1,l2\", \"out\": \"" + Path("cfg") + "\"}");
  ASSERT_EQ(Run("simulate --config " + cfg).code, 0);
  ASSERT_EQ(Run("simulate --truth uniform:5 --n 30 --reps 10 --seed 3 --metrics l1,l2 --out " + Path("flags")).code, 0);
  EXPECT_EQ(Slurp(Path("cfg") + "_raw.csv"), Slurp(Path("flags") + "_raw.csv"));
  ASSERT_EQ(Run("simulate --config " + cfg + " --seed 4 --out " + Path("over")).code, 0);
  EXPECT_NE(Slurp(Path("over") + "_raw.csv"), Slurp(Path("flags") + "_raw.csv"));
}

TEST_F(Cli, AsymptoticsUniformAndBlocks) {
  auto r = Run("asymptotics --truth uniform:5");
  ASSERT_EQ(r.code, 0) << r.err;
  auto kv = KeyValues(r.out);
  EXPECT_EQ(kv["kappa"], "5");
  EXPECT_NEAR(std::stod(kv["e_sq_l2_emp"]), 5.0 / 6.0, 1e-6);
  EXPECT_NEAR(std::stod(kv["e_sq_l2_gren"]), 0.2416667, 1e-6);
  EXPECT_EQ(kv["blocks"], "1");

  r = Run("asymptotics --truth mixture:0.2:3,0.8:7");
  ASSERT_EQ(r.code, 0) << r.err;
  kv = KeyValues(r.out);
  ASSERT_EQ(kv["blocks"], "2");
  double gap = 0.0;
  for (int b = 0; b < 2; ++b) {
    const std::string key = "block" + std::to_string(b);
    const int len = std::stoi(kv[key + ".length"]);
    double h = 0.0;
    for (int i = 1; i <= len; ++i) h += 1.0 / i;
    gap += std::stod(kv[key + ".theta"]) * (len - h);
  }
  EXPECT_NEAR(std::stod(kv["l2_gap"]), gap, 1e-5);

  r = Run("asymptotics --truth values:0.5,0.3,0.2");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(KeyValues(r.out)["l2_gap"]), 0.0, 1e-12);
}

TEST_F(Cli, LimitsCsv) {
  const auto out = Path("lim.csv");
  const auto r = Run("limits --truth uniform:3 --draws 25 --seed 2 --out " + out);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = Slurp(out);
  EXPECT_EQ(text.rfind("draw,x,y,y_rear,y_gren\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 25 * 4);
  const auto agg = Slurp(out + ".aggregate.csv");
  EXPECT_EQ(agg.rfind("x,p,var_theory,", 0), 0u);
  EXPECT_EQ(Run("limits --truth uniform:3 --draws 25 --seed 2 --out " + Path("lim2.csv")).code, 0);
  EXPECT_EQ(Slurp(Path("lim2.csv")), text);
}

TEST_F(Cli, Risk) {
  const auto r = Run("risk --truth uniform:5 --n 100 --k 2 --estimator empirical --reps 4000 --seed 1");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = Table(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"estimator", "k", "risk", "se", "scaled_risk"}));
  const double scaled = std::stod(rows[1][4]);
  const double se = 100 * std::stod(rows[1][3]);
  EXPECT_NEAR(scaled, 5.0 / 6.0, 4 * se);
  EXPECT_EQ(Run("risk --truth uniform:5 --n 100 --k inf --reps 10").code, 0);
}

TEST_F(Cli, MixingFromTruthAndCounts) {
  auto r = Run("mixing --truth mixture:0.25:1,0.2:3,0.15:5,0.4:7");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = Table(r.out);
  ASSERT_EQ(rows.size(), 8u);
  const double q[] = {0, 0.25, 0, 0.2, 0, 0.15, 0, 0.4};
  for (std::size_t x = 0; x < 8; ++x) EXPECT_NEAR(std::stod(rows[x][1]), q[x], 1e-12);
  const auto counts = Write("c.tsv", kExampleCounts);
  r = Run("mixing --counts " + counts + " --estimator gren --out " + Path("q.mix"));
  ASSERT_EQ(r.code, 0) << r.err;
  double total = 0.0;
  for (const auto& row : Table(Slurp(Path("q.mix")))) {
    const double v = std::stod(row[1]);
    EXPECT_GE(v, -1e-15);
    total += v;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

}  // namespace
