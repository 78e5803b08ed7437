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

// Grid expansion, per-run seeding and execution for dpsco_bench.
//
// Seeds. Each grid cell has a canonical key, e.g.
//   mode=mean-bench;estimator=simple;family=gaussian;n=2000;d=5;p=2;
//   eps=0.5;delta=1e-05
// and run (cell, rep) uses
//   seed = mix(mix(mix(master) ^ fnv1a64(key)) ^ rep)
// where mix is the splitmix64 finalizer applied to x + 0x9e3779b97f4a7c15.
// Data is drawn from Rng(seed, 0) and mechanism noise from Rng(seed, 1), so
// results depend on neither grid order nor the worker count.

#ifndef DPSCO_BENCH_RUNNER_H_
#define DPSCO_BENCH_RUNNER_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dpsco/bench/config.h"
#include "dpsco/bench/results.h"
#include "dpsco/synthetic/heavy_tail.h"

namespace dpsco::bench {

uint64_t Fnv1a64(std::string_view bytes);
uint64_t SplitMix64(uint64_t x);
uint64_t DeriveSeed(uint64_t master, std::string_view cell_key, uint64_t rep);

struct GridCell {
  Mode mode = Mode::kMeanBench;
  EstimatorKind estimator = EstimatorKind::kSimple;
  TailFamily family = TailFamily::kGaussian;
  int64_t n = 0;
  int d = 0;
  double p = 2;
  double eps = 0;
  double delta = 0;

  std::string Key() const;
};

// Cells in nested order estimator, family, n, d, p, eps, delta (last
// varies fastest).
std::vector<GridCell> ExpandGrid(const ExperimentConfig& cfg);

// One replication of one cell. Out-of-regime parameters yield a skipped
// record and other errors a failed one; neither is returned as a Status.
RunRecord RunMeanCell(const ExperimentConfig& cfg, const GridCell& cell,
                      int rep);
RunRecord RunOptCell(const ExperimentConfig& cfg, const GridCell& cell,
                     int rep);

// Every cell x rep on cfg.jobs workers, in work-item order.
std::vector<RunRecord> RunGrid(const ExperimentConfig& cfg);

struct RunSummary {
  int64_t rows = 0;
  int64_t skipped = 0;
  int64_t failed = 0;
};

// Runs the grid and writes <out>/results.csv and <out>/manifest.txt.
// FailedPrecondition when the output directory cannot be written.
absl::StatusOr<RunSummary> RunExperiment(const ExperimentConfig& cfg);

// For each (eps, delta) in the grid prints the total zCDP budget, the
// per-step budget over cfg.steps steps and the per-step (eps0, delta0).
void RunCalibrate(const ExperimentConfig& cfg, std::ostream& out);

std::string ManifestText(const ExperimentConfig& cfg);

}  // namespace dpsco::bench

#endif  // DPSCO_BENCH_RUNNER_H_
