// Copyright 2026 The dpsco Authors.
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "dpsco/bench/config.h"
#include "dpsco/bench/results.h"
#include "dpsco/bench/runner.h"
#include "test_util.h"

namespace dpsco::bench {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("dpsco_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig SmallConfig() {
  ExperimentConfig cfg;
  cfg.n = {200, 400};
  cfg.d = {3};
  cfg.eps = {0.5};
  cfg.reps = 3;
  cfg.seed = 17;
  cfg.timing = false;
  return cfg;
}

std::vector<std::string> Rows(const std::vector<RunRecord>& records) {
  std::vector<std::string> out;
  for (const RunRecord& r : records) out.push_back(FormatRow(r));
  return out;
}

TEST(Config, ParsesListsAndComments) {
  ASSERT_OK_AND_ASSIGN(ConfigEntries entries,
                       ParseConfigText("# sweep\nn = 2000, 8000\n\n"
                                       "eps=0.1,0.2  # trailing\nreps = 4\n"));
  ExperimentConfig cfg;
  ASSERT_OK(ApplyEntries(cfg, entries));
  EXPECT_EQ(cfg.n, (std::vector<int64_t>{2000, 8000}));
  EXPECT_EQ(cfg.eps, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(cfg.reps, 4);
}

TEST(Config, ErrorsNameTheLine) {
  const auto bad = ParseConfigText("n = 10\nthis line has no equals\n");
  ASSERT_FALSE(bad.ok());
  EXPECT_NE(bad.status().message().find("line 2"), absl::string_view::npos)
      << bad.status();
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  ExperimentConfig cfg;
  EXPECT_FALSE(ApplySetting(cfg, "bogus", "1").ok());
  EXPECT_FALSE(ApplySetting(cfg, "n", "ten").ok());
  EXPECT_FALSE(ApplySetting(cfg, "estimator", "median").ok());
  EXPECT_FALSE(ApplySetting(cfg, "family", "cauchy").ok());
  EXPECT_OK(ApplySetting(cfg, "estimator", "simple, iterative"));
  EXPECT_EQ(cfg.estimator.size(), 2u);
}

TEST(Config, ValidateChecksRanges) {
  ExperimentConfig cfg;
  EXPECT_OK(Validate(cfg));
  cfg.reps = 0;
  EXPECT_FALSE(Validate(cfg).ok());
  cfg = ExperimentConfig();
  cfg.delta = {1.0};
  EXPECT_FALSE(Validate(cfg).ok());
  cfg = ExperimentConfig();
  cfg.n = {};
  EXPECT_FALSE(Validate(cfg).ok());
}

TEST(Config, DumpRoundTrips) {
  ExperimentConfig cfg = SmallConfig();
  cfg.mode = Mode::kOptBench;
  cfg.k = 40;
  cfg.radius_mult = 1.5;
  cfg.estimator = {EstimatorKind::kSimple, EstimatorKind::kIterative};
  const std::string dump = DumpConfig(cfg);
  ASSERT_OK_AND_ASSIGN(ConfigEntries entries, ParseConfigText(dump));
  ExperimentConfig back;
  ASSERT_OK(ApplyEntries(back, entries));
  EXPECT_EQ(DumpConfig(back), dump);
}

TEST(Seeds, KnownHashValues) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  // First output of the reference splitmix64 generator from state 0.
  EXPECT_EQ(SplitMix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Seeds, DistinctPerCellAndRep) {
  std::set<uint64_t> seen;
  for (const std::string key : {"a", "b", "c"}) {
    for (uint64_t rep = 0; rep < 100; ++rep) {
      seen.insert(DeriveSeed(5, key, rep));
    }
  }
  EXPECT_EQ(seen.size(), 300u);
  EXPECT_NE(DeriveSeed(5, "a", 0), DeriveSeed(6, "a", 0));
}

TEST(Grid, ExpandsFullProductWithStableKeys) {
  ExperimentConfig cfg = SmallConfig();
  cfg.estimator = {EstimatorKind::kSimple, EstimatorKind::kIterative};
  cfg.eps = {0.25, 0.5, 1};
  const std::vector<GridCell> cells = ExpandGrid(cfg);
  EXPECT_EQ(cells.size(), 2u * 2u * 3u);
  std::set<std::string> keys;
  for (const GridCell& c : cells) keys.insert(c.Key());
  EXPECT_EQ(keys.size(), cells.size());
  EXPECT_EQ(cells[0].Key(),
            "mode=mean-bench;estimator=simple;family=student-like;n=200;d=3;"
            "p=2;eps=0.25;delta=1e-05");
}

TEST(RunGrid, RowCountAndJobsInvariance) {
  ExperimentConfig cfg = SmallConfig();
  cfg.n = {2000, 8000, 32000};
  cfg.reps = 2;
  const std::vector<RunRecord> serial = RunGrid(cfg);
  EXPECT_EQ(serial.size(), 3u * 2u);
  cfg.jobs = 4;
  EXPECT_EQ(Rows(RunGrid(cfg)), Rows(serial));
}

TEST(RunGrid, OptModeIsDeterministic) {
  ExperimentConfig cfg = SmallConfig();
  cfg.mode = Mode::kOptBench;
  cfg.estimator = {EstimatorKind::kSimple, EstimatorKind::kIterative};
  cfg.n = {500};
  cfg.reps = 2;
  const std::vector<RunRecord> a = RunGrid(cfg);
  cfg.jobs = 3;
  const std::vector<RunRecord> b = RunGrid(cfg);
  EXPECT_EQ(Rows(a), Rows(b));
  for (const RunRecord& r : a) {
    EXPECT_EQ(r.status, RunStatus::kOk) << r.reason;
    ASSERT_TRUE(r.outcome.has_value());
    EXPECT_GE(*r.outcome, 0);
  }
}

TEST(RunGrid, OutOfRegimeCellsAreSkippedNotDropped) {
  ExperimentConfig cfg = SmallConfig();
  cfg.eps = {0.5, 2};
  cfg.reps = 1;
  const std::vector<RunRecord> rows = RunGrid(cfg);
  ASSERT_EQ(rows.size(), 4u);
  int skipped = 0;
  for (const RunRecord& r : rows) {
    if (r.eps == 2) {
      EXPECT_EQ(r.status, RunStatus::kSkipped);
      EXPECT_FALSE(r.outcome.has_value());
      ++skipped;
    }
  }
  EXPECT_EQ(skipped, 2);
}

TEST(RunExperiment, RepeatedRunsAreByteIdentical) {
  ExperimentConfig cfg = SmallConfig();
  cfg.n = {1000};
  cfg.reps = 1;
  cfg.out = FreshDir("repeat_a").string();
  ASSERT_OK_AND_ASSIGN(RunSummary first, RunExperiment(cfg));
  EXPECT_EQ(first.rows, 1);
  const std::string a = Slurp(fs::path(cfg.out) / "results.csv");
  cfg.out = FreshDir("repeat_b").string();
  ASSERT_OK(RunExperiment(cfg).status());
  EXPECT_EQ(Slurp(fs::path(cfg.out) / "results.csv"), a);
  EXPECT_EQ(a.substr(0, a.find('\n')), CsvHeader());
  const std::string manifest = Slurp(fs::path(cfg.out) / "manifest.txt");
  EXPECT_NE(manifest.find("schema"), std::string::npos);
  EXPECT_NE(manifest.find("philox"), std::string::npos) << manifest;
}

TEST(RunExperiment, UnwritableOutputIsStartupError) {
  ExperimentConfig cfg = SmallConfig();
  cfg.out = "/proc/dpsco_cannot_write_here";
  EXPECT_FALSE(RunExperiment(cfg).ok());
}

TEST(Calibrate, PrintsPrivacyCoreExample) {
  ExperimentConfig cfg;
  cfg.mode = Mode::kCalibrate;
  cfg.eps = {1};
  cfg.delta = {std::exp(-4.0)};
  cfg.steps = 1;
  std::ostringstream out;
  RunCalibrate(cfg, out);
  EXPECT_NE(out.str().find("rho=0.04 "), std::string::npos) << out.str();
}

TEST(Results, HeaderMatchesSchema) {
  const std::vector<std::string> cols = absl::StrSplit(CsvHeader(), ',');
  ASSERT_EQ(cols.size(), kResultColumns.size());
  for (size_t i = 0; i < cols.size(); ++i) {
    EXPECT_EQ(cols[i], std::string(kResultColumns[i]));
  }
  EXPECT_EQ(FormatStatus(RunStatus::kSkipped, "a, b"), "skipped: a; b");
  EXPECT_EQ(FormatStatus(RunStatus::kOk, ""), "ok");
}

TEST(Results, RowsRoundTripThroughParser) {
  ExperimentConfig cfg = SmallConfig();
  cfg.estimator = {EstimatorKind::kIterative};
  cfg.reps = 1;
  const std::vector<RunRecord> records = RunGrid(cfg);
  std::string text = CsvHeader() + "\n";
  for (const RunRecord& r : records) text += FormatRow(r) + "\n";
  ASSERT_OK_AND_ASSIGN(std::vector<CsvRow> rows, ParseResultsCsv(text));
  ASSERT_EQ(rows.size(), records.size());
  EXPECT_EQ(rows[0].at("estimator"), "iterative");
  EXPECT_EQ(rows[0].at("run_id"), records[0].run_id);
  EXPECT_EQ(std::stod(rows[1].at("outcome")), *records[1].outcome);
}

TEST(Results, MalformedCsvReportsLine) {
  std::string text = CsvHeader() + "\n";
  ExperimentConfig cfg = SmallConfig();
  cfg.reps = 1;
  for (const RunRecord& r : RunGrid(cfg)) text += FormatRow(r) + "\n";
  text += "too,few,fields\n";
  const auto rows = ParseResultsCsv(text);
  ASSERT_FALSE(rows.ok());
  EXPECT_NE(rows.status().message().find("line 4"), absl::string_view::npos)
      << rows.status();
  EXPECT_FALSE(ParseResultsCsv("a,b\n").ok());
}

TEST(Quantile, InterpolatesBetweenOrderStatistics) {
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(i);
  EXPECT_EQ(*Quantile(v, 0.5), 50.5);
  EXPECT_NEAR(*Quantile(v, 0.99), 99.01, 1e-12);
  EXPECT_EQ(*Quantile({7}, 0.3), 7);
  EXPECT_FALSE(Quantile({}, 0.5).ok());
  EXPECT_FALSE(Quantile({1, 2}, 1.5).ok());
}

std::string CsvWithOutcomes(const std::vector<double>& outcomes) {
  std::string text = CsvHeader() + "\n";
  RunRecord r;
  r.run_id = "x";
  r.mode = "mean-bench";
  r.estimator = "simple";
  r.family = "gaussian";
  r.n = 10;
  r.d = 1;
  r.p = 2;
  r.eps = 0.5;
  r.delta = 1e-5;
  for (double o : outcomes) {
    r.outcome = o;
    text += FormatRow(r) + "\n";
  }
  return text;
}

TEST(Summarize, SingleRowGivesThatOutcome) {
  ASSERT_OK_AND_ASSIGN(std::vector<CsvRow> rows,
                       ParseResultsCsv(CsvWithOutcomes({0.125})));
  ASSERT_OK_AND_ASSIGN(std::string table, Summarize(rows, {0.1, 0.5, 0.9}));
  const std::vector<std::string> lines =
      absl::StrSplit(table, '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_NE(lines[1].find(",0.125,0.125,0.125,"), std::string::npos)
      << lines[1];
}

TEST(Summarize, MedianOfOneToHundred) {
  std::vector<double> v;
  for (int i = 100; i >= 1; --i) v.push_back(i);
  ASSERT_OK_AND_ASSIGN(std::vector<CsvRow> rows,
                       ParseResultsCsv(CsvWithOutcomes(v)));
  ASSERT_OK_AND_ASSIGN(std::string table, Summarize(rows, {0.5}));
  EXPECT_NE(table.find(",100,100,50.5,"), std::string::npos) << table;
}

// The CLI binary is located by the build system.
int RunCli(const std::string& args) {
  const std::string cmd =
      absl::StrCat(DPSCO_BENCH_CLI, " ", args, " >/dev/null 2>&1");
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = FreshDir("cli");
  fs::create_directories(dir);
  const std::string out = (dir / "ok").string();
  EXPECT_EQ(RunCli("mean-bench --n 300 --d 2 --reps 2 --no-timing --out " + out),
            0);
  EXPECT_EQ(Slurp(fs::path(out) / "results.csv").find("\n", 0) !=
                std::string::npos,
            true);
  EXPECT_EQ(RunCli("mean-bench --bogus-flag"), 1);
  EXPECT_EQ(RunCli("mean-bench --config " + (dir / "missing.cfg").string()), 1);
  {
    std::ofstream cfg(dir / "bad.cfg");
    cfg << "n = 100\nnot a setting\n";
  }
  EXPECT_EQ(RunCli("mean-bench --config " + (dir / "bad.cfg").string()), 1);
  EXPECT_EQ(RunCli("mean-bench --reps 0"), 1);
  EXPECT_EQ(RunCli("mean-bench --out /proc/dpsco_no"), 1);
  EXPECT_EQ(RunCli("mean-bench --estimator iterative --k 5000 --n 2000 "
                   "--no-timing --out " +
                   (dir / "failed").string()),
            2);
  EXPECT_EQ(RunCli("summarize --csv " + (dir / "missing.csv").string()), 1);
  EXPECT_EQ(RunCli("summarize --csv " + out + "/results.csv"), 0);
  EXPECT_EQ(RunCli("calibrate --eps 1 --delta 0.0183156388887342 --steps 1"),
            0);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const fs::path dir = FreshDir("override");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "sweep.cfg");
    cfg << "n = 100, 200\nreps = 3\nd = 2\n";
  }
  const std::string out = (dir / "out").string();
  ASSERT_EQ(RunCli("mean-bench --config " + (dir / "sweep.cfg").string() +
                   " --reps 1 --no-timing --out " + out),
            0);
  ASSERT_OK_AND_ASSIGN(std::vector<CsvRow> rows,
                       ReadResultsCsv(out + "/results.csv"));
  EXPECT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].at("d"), "2");
}

}  // namespace
}  // namespace dpsco::bench
