// Copyright 2026 The cdplab Authors
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "cdplab/experiments.h"
#include "test_util.h"

namespace cdplab {
namespace {

namespace fs = std::filesystem;

const std::string kCli = CDPLAB_CLI_PATH;
const std::string kConfigs = CDPLAB_CONFIG_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cdplab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Run(const std::string& args) const {
    const std::string cmd = kCli + " " + args + " 2>" + Path("stderr.txt");
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  Json RunJson(const std::string& args, int expected_exit = 0) const {
    EXPECT_EQ(Run(args + " --out " + Path("r.json")), expected_exit) << args;
    return Json::parse(Slurp(Path("r.json")));
  }

  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name)) << text;
  }

  fs::path dir_;
};

TEST_F(CliTest, EverySubcommandIsDeterministic) {
  for (const std::string cmd : {"mech-run", "lower-bound", "collide", "boost", "audit"}) {
    for (const std::string format : {"json", "csv"}) {
      const std::string base = cmd + " --config " + kConfigs + "/" + cmd + ".conf --seed 42" +
                               " --format " + format + " --set trials=300";
      ASSERT_EQ(Run(base + " --out " + Path("a")), 0) << cmd;
      ASSERT_EQ(Run(base + " --out " + Path("b")), 0) << cmd;
      EXPECT_EQ(Slurp(Path("a")), Slurp(Path("b"))) << cmd << " " << format;
      EXPECT_FALSE(Slurp(Path("a")).empty());
    }
  }
}

TEST_F(CliTest, SeedChangesSampledReports) {
  const Json a = RunJson("mech-run --seed 1 --set trials=200");
  const Json b = RunJson("mech-run --seed 2 --set trials=200");
  EXPECT_NE(a["results"]["empirical"], b["results"]["empirical"]);
  EXPECT_EQ(a["seed"], 1);
}

TEST_F(CliTest, ReportCarriesProvenance) {
  const Json r = RunJson("audit --seed 5");
  EXPECT_EQ(r["command"], "audit");
  EXPECT_EQ(r["version"], Version());
  EXPECT_TRUE(r.contains("config"));
  EXPECT_FALSE(r["config"].contains("out"));
  EXPECT_TRUE(r.contains("guards"));
  EXPECT_EQ(r["status"], "pass");
}

TEST_F(CliTest, CsvHasOneRowPerClaim) {
  const Json j = RunJson("lower-bound --seed 3");
  ASSERT_EQ(Run("lower-bound --seed 3 --format csv --out " + Path("r.csv")), 0);
  std::ifstream in(Path("r.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "claim,mechanism,n,epsilon,d,lhs,rhs,mode,trials,seed,status,vacuous");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, j["claims"].size());
  EXPECT_GT(rows, 0u);
}

TEST_F(CliTest, FlagsOverrideConfigFile) {
  Write("c.conf", "# comment line\nseed = 9   # trailing comment\n\nn = 8\n");
  const Json from_file = RunJson("audit --config " + Path("c.conf"));
  EXPECT_EQ(from_file["seed"], 9);
  EXPECT_EQ(from_file["config"]["n"], "8");
  const Json overridden = RunJson("audit --config " + Path("c.conf") + " --seed 4 --set n=6");
  EXPECT_EQ(overridden["seed"], 4);
  EXPECT_EQ(overridden["config"]["n"], "6");
}

TEST_F(CliTest, ConfigErrorsExitOne) {
  Write("bad.conf", "n 12\n");
  EXPECT_EQ(Run("audit --config " + Path("bad.conf") + " --out " + Path("e.json")), 1);
  const Json e = Json::parse(Slurp(Path("e.json")));
  EXPECT_EQ(e["error"]["code"], "configuration");
  Write("unknown.conf", "colour = blue\n");
  EXPECT_EQ(Run("audit --config " + Path("unknown.conf")), 1);
  EXPECT_EQ(Run("audit --set n=twelve"), 1);
  EXPECT_EQ(Run("audit --config " + Path("missing.conf")), 1);
  EXPECT_EQ(Run("audit --format xml"), 1);
  EXPECT_EQ(Run("no-such-command"), 1);
  EXPECT_EQ(Run("boost --set boost_base=unknown"), 1);
}

TEST_F(CliTest, SampledLowerBoundCanBeInconclusive) {
  const Json r = RunJson(
      "lower-bound --set lb_n=14 --set lb_d=1 --set lb_epsilon=6 --set trials=2"
      " --set lb_packing_n_max=1 --set lb_matching_n_max=1 --set lb_block_size=7",
      2);
  EXPECT_EQ(r["status"], "inconclusive");
}

TEST_F(CliTest, CollideExamples) {
  const Json empty = RunJson("collide --set collide_k=0");
  EXPECT_TRUE(empty["results"]["harvest"]["succeeded"].get<bool>());
  EXPECT_EQ(empty["results"]["harvest"]["iterations_used"], 0);

  const Json small_gamma = RunJson("collide --set n=10 --set gamma_bits=2 --set collide_k=5");
  EXPECT_TRUE(small_gamma["results"]["harvest"]["succeeded"].get<bool>());
  EXPECT_EQ(small_gamma["results"]["harvest"]["found"].size(), 5u);

  // gamma = n: this pair leaves a single separating point, so K = 2 cannot be met.
  const Json injective = RunJson(
      "collide --set n=10 --set gamma_bits=10 --set collide_k=2 --set collide_budget=500"
      " --set collide_x=0011111101 --set collide_flip=0");
  EXPECT_EQ(injective["results"]["separating_points"], 1);
  EXPECT_FALSE(injective["results"]["harvest"]["succeeded"].get<bool>());
  EXPECT_EQ(injective["results"]["harvest"]["iterations_used"], 500);
  EXPECT_EQ(injective["status"], "pass");
}

TEST_F(CliTest, MechRunOracleOnly) {
  const Json r = RunJson("mech-run --set trials=0");
  EXPECT_TRUE(r["claims"].empty());
  EXPECT_NEAR(r["results"]["oracle"]["m_cdp_usefulness"].get<double>(),
              std::pow(r["results"]["oracle"]["m_dio_usefulness"].get<double>(), 2), 1e-15);
}

TEST_F(CliTest, RegistryPersistsAcrossRuns) {
  const std::string reg = Path("registry.json");
  RunJson("mech-run --set trials=20 --set registry_path=" + reg);
  const ProofRegistry first = ProofRegistry::Load(reg);
  RunJson("mech-run --seed 2 --set trials=20 --set registry_path=" + reg);
  EXPECT_EQ(ProofRegistry::Load(reg).size(), first.size() + 20);
}

TEST_F(CliTest, AuditRejectsSealedMechanism) {
  EXPECT_EQ(Run("audit --set audit_mechanism=m_dio-parameter --set n=8 --out " + Path("e.json")),
            1);
  EXPECT_EQ(Json::parse(Slurp(Path("e.json")))["error"]["code"], "unsupported-audit");
  const Json ok = RunJson(
      "audit --set audit_mechanism=m_dio-parameter --set n=8"
      " --set obfuscation_backend=transparent");
  EXPECT_EQ(ok["status"], "pass");
}

}  // namespace
}  // namespace cdplab
