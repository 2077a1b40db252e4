// Copyright 2019 DeepMind Technologies Ltd. All rights reserved.
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "regretlab/errors.h"
#include "run_config.h"
#include "trace_io.h"

namespace regretlab::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("regretlab_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Sub(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> Fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

RunConfig GeneratedConfig(Algorithm algorithm, const std::string& gen,
                          std::size_t n_experts, std::size_t n_rounds,
                          std::uint64_t seed, const std::string& out_dir) {
  RunConfig c;
  c.algorithm.algorithm = algorithm;
  c.generator = ParseGeneratorSpec(gen, n_experts, n_rounds, seed);
  c.out_dir = out_dir;
  return c;
}

TEST(RunConfigTest, GeneratorSpecParsing) {
  const GeneratorSpec g =
      ParseGeneratorSpec("outlier:m=2,spike=50,rate=0.1", 3, 40, 9);
  EXPECT_EQ(g.kind, GeneratorKind::kOutlier);
  EXPECT_EQ(g.magnitude, 2.0);
  EXPECT_EQ(g.spike, 50.0);
  EXPECT_EQ(g.spike_rate, 0.1);
  EXPECT_EQ(g.num_experts, 3);
  EXPECT_EQ(g.num_rounds, 40);
  EXPECT_EQ(g.seed, 9);
  const GeneratorSpec again = ParseGeneratorSpec(FormatGeneratorSpec(g), 3, 40, 9);
  EXPECT_EQ(Generate(again).values(), Generate(g).values());
  EXPECT_THROW(ParseGeneratorSpec("gaussian", 2, 2, 0), ConfigError);
  EXPECT_THROW(ParseGeneratorSpec("outlier:m=abc", 2, 2, 0), ConfigError);
  EXPECT_THROW(ParseGeneratorSpec("outlier:q=1", 2, 2, 0), ConfigError);
}

TEST(RunConfigTest, ListParsing) {
  EXPECT_TRUE(ParseBoundList("all").empty());
  const auto b = ParseBoundList("B1,b3,12");
  ASSERT_EQ(b.size(), 3);
  EXPECT_EQ(b[2], BoundId::kB12);
  EXPECT_THROW(ParseBoundList("B99"), ConfigError);
  EXPECT_EQ(ParseSizeList("2,4,8"), (std::vector<std::size_t>{2, 4, 8}));
  EXPECT_EQ(ParseDoubleList("0.1,1"), (std::vector<double>{0.1, 1.0}));
  EXPECT_THROW(ParseSizeList("2,x"), ConfigError);
}

TEST(TraceIoTest, PayoffCsvRoundTrip) {
  GeneratorSpec g;
  g.num_experts = 3;
  g.num_rounds = 25;
  g.seed = 4;
  const PayoffSequence seq = Generate(g);
  std::stringstream ss;
  WritePayoffCsv(seq, ss);
  EXPECT_EQ(ParsePayoffCsv(ss).values(), seq.values());
}

TEST(TraceIoTest, RejectsMalformedCsv) {
  std::istringstream one_expert("t,x_1\n1,0.5\n");
  EXPECT_THROW(ParsePayoffCsv(one_expert), InputError);
  std::istringstream bad_t("t,x_1,x_2\n2,0.5,1\n");
  EXPECT_THROW(ParsePayoffCsv(bad_t), InputError);
  std::istringstream ragged("t,x_1,x_2\n1,0.5\n");
  EXPECT_THROW(ParsePayoffCsv(ragged), InputError);
}

TEST_F(CliTest, RunWritesTraceAndSummary) {
  const RunConfig c = GeneratedConfig(Algorithm::kProdQ, "uniform_signed", 3,
                                      10, 1, Sub("out"));
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(c, out, err), kExitOk) << err.str();
  const auto trace = Lines(Slurp(dir_ / "out" / "trace.csv"));
  ASSERT_EQ(trace.size(), 11);
  const auto header = Fields(trace[0]);
  EXPECT_EQ(header.front(), "t");
  EXPECT_EQ(header.back(), "epoch");
  for (std::size_t i = 1; i < trace.size(); ++i) {
    EXPECT_EQ(Fields(trace[i]).size(), header.size());
  }

  const auto summary =
      nlohmann::json::parse(Slurp(dir_ / "out" / "summary.json"));
  const ExecutedRun run = Execute(c);
  const double regret =
      run.trace.stats.best_cum() - run.trace.stats.cum_reward();
  EXPECT_NEAR(summary["final"]["regret"].get<double>(), regret, 1e-12);
  EXPECT_EQ(summary["num_rounds"].get<int>(), 10);
  EXPECT_FALSE(summary["bounds"].empty());
}

TEST_F(CliTest, RunFromInputFile) {
  const std::string csv = Sub("payoffs.csv");
  {
    std::ofstream f(csv);
    f << "t,x_1,x_2\n1,1,0\n2,0,1\n3,0.5,0.5\n";
  }
  RunConfig c;
  c.algorithm.algorithm = Algorithm::kWmUnknownRange;
  c.input_path = csv;
  c.out_dir = Sub("out");
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(c, out, err), kExitOk) << err.str();
  EXPECT_EQ(Lines(Slurp(dir_ / "out" / "trace.csv")).size(), 4);
  c.input_path = Sub("missing.csv");
  EXPECT_EQ(CmdRun(c, out, err), kExitConfigError);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  for (Algorithm a : {Algorithm::kProdMQ, Algorithm::kWmUnknownRange}) {
    const RunConfig c1 =
        GeneratedConfig(a, "outlier", 4, 150, 3, Sub("a"));
    RunConfig c2 = c1;
    c2.out_dir = Sub("b");
    std::ostringstream out, err;
    ASSERT_EQ(CmdRun(c1, out, err), kExitOk);
    ASSERT_EQ(CmdRun(c2, out, err), kExitOk);
    EXPECT_EQ(Slurp(dir_ / "a" / "trace.csv"), Slurp(dir_ / "b" / "trace.csv"));
    EXPECT_EQ(Slurp(dir_ / "a" / "summary.json"),
              Slurp(dir_ / "b" / "summary.json"));
  }
}

TEST_F(CliTest, VerifyCatalogExitCodes) {
  RunConfig c;
  c.out_dir = Sub("v");
  std::ostringstream out, err;
  EXPECT_EQ(CmdVerify(c, out, err), kExitOk) << out.str() << err.str();
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
  c.corrupt = true;
  std::ostringstream out2, err2;
  EXPECT_EQ(CmdVerify(c, out2, err2), kExitViolation);
}

TEST_F(CliTest, VerifyCatalogCoversEveryBound) {
  std::vector<bool> seen(kNumBounds + 1, false);
  for (const CatalogEntry& e : DefaultCatalog(4, 50, 1)) {
    const ExecutedRun run = Execute(e.config);
    for (const BoundReport& r : run.reports) {
      seen[static_cast<int>(r.id)] = true;
      EXPECT_TRUE(r.holds) << e.label << " " << BoundName(r.id);
    }
  }
  for (int k = 1; k <= kNumBounds; ++k) EXPECT_TRUE(seen[k]) << "B" << k;
}

TEST_F(CliTest, OneSidedBoundOnSignedInputIsConfigError) {
  RunConfig c = GeneratedConfig(Algorithm::kWmUnknownRange, "uniform_signed",
                                3, 50, 1, Sub("o"));
  c.bounds = {BoundId::kB10};
  std::ostringstream out, err;
  EXPECT_EQ(CmdVerify(c, out, err), kExitConfigError);
  EXPECT_NE(err.str().find("one-sided"), std::string::npos);
}

TEST_F(CliTest, SweepGridRowsAndSlack) {
  SweepConfig s;
  s.algorithm.algorithm = Algorithm::kProdQ;
  s.generator = ParseGeneratorSpec("uniform_signed", 2, 10, 0);
  s.experts = {2, 4, 8};
  s.rounds = {10, 100, 1000};
  s.magnitudes = {1.0};
  s.seeds = {0, 1};
  s.out_dir = Sub("s");
  std::ostringstream out, err;
  ASSERT_EQ(CmdSweep(s, out, err), kExitOk) << err.str();
  const auto lines = Lines(Slurp(dir_ / "s" / "sweep.csv"));
  ASSERT_EQ(lines.size(), 19);
  const auto header = Fields(lines[0]);
  std::vector<std::size_t> slack_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i].ends_with("_slack")) slack_cols.push_back(i);
  }
  ASSERT_EQ(slack_cols.size(), kNumBounds);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto f = Fields(lines[r]);
    ASSERT_EQ(f.size(), header.size());
    for (std::size_t col : slack_cols) {
      if (f[col].empty()) continue;
      EXPECT_GE(std::stod(f[col]), 0.0) << lines[r];
    }
  }
}

TEST_F(CliTest, SweepOutlierRowsFavorSecondOrderBound) {
  SweepConfig s;
  s.algorithm.algorithm = Algorithm::kProdQ;
  s.generator = ParseGeneratorSpec("outlier:spike=20,rate=0.01", 2, 10, 0);
  s.experts = {4};
  s.rounds = {200, 2000};
  s.magnitudes = {1.0};
  s.seeds = {0, 1, 2};
  s.threads = 2;
  const std::string header = SweepHeader();
  const auto names = Fields(header);
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return i;
    }
    ADD_FAILURE() << name;
    return std::size_t{0};
  };
  const auto rows = SweepRows(s);
  ASSERT_EQ(rows.size(), 6);
  for (const std::string& row : rows) {
    const auto f = Fields(row);
    EXPECT_GE(std::stod(f[col("B3_bound")]), std::stod(f[col("first_order")]));
    EXPECT_GE(std::stod(f[col("first_order")]), std::stod(f[col("zero_order")]));
  }
  // Thread count does not change the output.
  s.threads = 1;
  EXPECT_EQ(SweepRows(s), rows);
}

TEST_F(CliTest, EnvironmentOverridesDefaultOutDir) {
  EXPECT_EQ(ResolveOutDir(std::string("flag_dir")), "flag_dir");
  ::setenv(kOutDirEnv, Sub("env").c_str(), 1);
  EXPECT_EQ(ResolveOutDir(std::nullopt), Sub("env"));
  RunConfig c = GeneratedConfig(Algorithm::kWmKnownRange, "loss_game", 2, 5,
                                0, ResolveOutDir(std::nullopt));
  std::ostringstream out, err;
  EXPECT_EQ(CmdRun(c, out, err), kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "env" / "trace.csv"));
  ::unsetenv(kOutDirEnv);
  EXPECT_EQ(ResolveOutDir(std::nullopt), kDefaultOutDir);
}

}  // namespace
}  // namespace regretlab::cli
