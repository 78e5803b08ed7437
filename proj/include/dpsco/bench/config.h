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

// Experiment configuration for dpsco_bench.
//
// Config files are flat `key = value` text. Grid keys take comma-separated
// lists. `#` starts a comment. Keys:
//
//   mode:    mean-bench|opt-bench|calibrate (set by the CLI subcommand)
//   grid:    n, d, p, eps, delta, estimator (simple|iterative),
//            family (gaussian|student-like|pareto-symmetric)
//   scalars: reps, seed, jobs, out, radius_mult, radius, rho, k, tc, M,
//            curvature, diameter, steps, timing (true|false)
//
// `radius` fixes R for every cell instead of the schedule formula; `rho`
// replaces the zCDP budget derived from (eps, delta) for simple clipping;
// `k` replaces the default group count; `steps` is read by calibrate only.

#ifndef DPSCO_BENCH_CONFIG_H_
#define DPSCO_BENCH_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsco/synthetic/heavy_tail.h"

namespace dpsco::bench {

enum class Mode { kMeanBench, kOptBench, kCalibrate };
enum class EstimatorKind { kSimple, kIterative };

std::string_view ModeName(Mode mode);
absl::StatusOr<Mode> ParseMode(std::string_view name);
std::string_view EstimatorName(EstimatorKind kind);
absl::StatusOr<EstimatorKind> ParseEstimator(std::string_view name);

struct ExperimentConfig {
  Mode mode = Mode::kMeanBench;

  std::vector<int64_t> n = {2000};
  std::vector<int> d = {5};
  std::vector<double> p = {2.0};
  std::vector<double> eps = {0.5};
  std::vector<double> delta = {1e-5};
  std::vector<EstimatorKind> estimator = {EstimatorKind::kSimple};
  std::vector<TailFamily> family = {TailFamily::kStudentLike};

  int reps = 1;
  uint64_t seed = 0;
  int jobs = 1;
  std::string out = "bench_out";

  double radius_mult = 1.0;
  std::optional<double> radius;
  std::optional<double> rho;
  std::optional<int64_t> k;
  int tc = 40;
  double moment_bound = 1.0;  // M
  double curvature = 1.0;
  double diameter = 2.0;
  int64_t steps = 1;
  bool timing = true;
};

// Raw key/value pairs in file order (later duplicates win).
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

// Parses the text of a config file. InvalidArgument names the line.
absl::StatusOr<ConfigEntries> ParseConfigText(std::string_view text);
absl::StatusOr<ConfigEntries> ReadConfigFile(const std::string& path);

// Sets one key. InvalidArgument for unknown keys or unparsable values.
absl::Status ApplySetting(ExperimentConfig& cfg, std::string_view key,
                          std::string_view value);
absl::Status ApplyEntries(ExperimentConfig& cfg, const ConfigEntries& entries);

// Nonempty grid, reps >= 1, jobs >= 1, delta in (0, 1), positive scalars.
absl::Status Validate(const ExperimentConfig& cfg);

// Canonical `key = value` dump, one per line, in a fixed key order. Reading
// it back reproduces the config.
std::string DumpConfig(const ExperimentConfig& cfg);

// Shortest decimal string that round-trips to the same double.
std::string FormatDouble(double x);

}  // namespace dpsco::bench

#endif  // DPSCO_BENCH_CONFIG_H_
